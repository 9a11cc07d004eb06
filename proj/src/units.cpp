#include "hmf/units.hpp"

#include "hmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hmf {

namespace {

// Gaussian elimination on doubles; the logs of independent units at desk scale
// are far from degenerate, so a relative tolerance is adequate here.
int numeric_rank(std::vector<std::vector<double>> rows) {
  int r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    double best = 1e-8;
    for (std::size_t i = r; i < rows.size(); ++i)
      if (std::fabs(rows[i][c]) > best) {
        best = std::fabs(rows[i][c]);
        piv = static_cast<int>(i);
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      double f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

QVector normalize_unit(const FieldOrder& K, QVector u) {
  auto e = embed(K, u);
  if (std::fabs(e[0]) < 1.0) {
    u = inverse(K, u);
    e = embed(K, u);
  }
  if (e[0] < 0) u = -u;
  return u;
}

}  // namespace

bool is_unit(const FieldOrder& K, const QVector& x) {
  if (x.isZero() || !is_integral(x)) return false;
  Rational nm = norm(K, x);
  return nm == 1 || nm == -1;
}

std::vector<double> log_embedding(const FieldOrder& K, const QVector& x) {
  auto e = embed(K, x);
  for (auto& v : e) v = std::log(std::fabs(v));
  return e;
}

int log_rank(const FieldOrder& K, const std::vector<QVector>& units) {
  std::vector<std::vector<double>> rows;
  for (const auto& u : units) rows.push_back(log_embedding(K, u));
  return numeric_rank(rows);
}

UnitGroupData units_from_preset(const FieldOrder& K, const std::vector<QVector>& units) {
  UnitGroupData U;
  U.source = "preset";
  for (const auto& u : units) {
    if (!is_unit(K, u)) throw MathError(K.label + ": preset unit " + format_element(u) + " is not a unit");
    U.fundamental.push_back(normalize_unit(K, u));
  }
  if (log_rank(K, U.fundamental) != U.rank())
    throw MathError(K.label + ": preset units are multiplicatively dependent");
  U.full_rank = U.rank() == K.n - 1;
  return U;
}

UnitGroupData unit_group(const FieldOrder& K, int search_cap) {
  UnitGroupData U;
  U.source = "searched(" + std::to_string(search_cap) + ")";
  if (K.n == 1) {
    U.full_rank = true;
    return U;
  }
  std::vector<std::pair<Rational, QVector>> found;
  IVector x = IVector::Constant(K.n, -search_cap);
  while (true) {
    if (!x.isZero()) {
      BigInt nm = norm(K, x);
      if (nm == 1 || nm == -1) {
        QVector q = to_q(x);
        // keep one representative per +- pair
        auto e = embed(K, x);
        if (e[0] > 0) found.emplace_back(t2(K, q), q);
      }
    }
    int i = 0;
    while (i < K.n && x(i) == search_cap) x(i++) = -search_cap;
    if (i == K.n) break;
    ++x(i);
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [t, u] : found) {
    std::vector<QVector> trial = U.fundamental;
    trial.push_back(u);
    if (log_rank(K, trial) > U.rank()) U.fundamental.push_back(normalize_unit(K, u));
    if (U.rank() == K.n - 1) break;
  }
  U.full_rank = U.rank() == K.n - 1;
  return U;
}

void require_full_rank(const FieldOrder& K, const UnitGroupData& U) {
  if (!U.full_rank)
    throw MathError("insufficient units for " + K.label + ": rank " + std::to_string(U.rank()) + " of " +
                    std::to_string(K.n - 1) + " (" + U.source + ")");
}

std::vector<double> unit_halfwidths(const FieldOrder& K, const UnitGroupData& U) {
  std::vector<double> b(K.n, 0.0);
  for (const auto& u : U.fundamental) {
    auto l = log_embedding(K, u);
    for (int w = 0; w < K.n; ++w) b[w] += std::fabs(l[w]) / 2;
  }
  return b;
}

unsigned sign_mask(const std::vector<int>& signs) {
  unsigned m = 0;
  for (std::size_t w = 0; w < signs.size(); ++w)
    if (signs[w] < 0) m |= 1u << w;
  return m;
}

std::vector<unsigned> unit_sign_group(const FieldOrder& K, const UnitGroupData& U) {
  std::vector<unsigned> gens{(1u << K.n) - 1};  // -1
  for (const auto& u : U.fundamental) gens.push_back(sign_mask(sign_vector(K, u)));
  std::set<unsigned> group{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(group.begin(), group.end());
    for (unsigned a : cur)
      for (unsigned g : gens)
        if (group.insert(a ^ g).second) grew = true;
  }
  return {group.begin(), group.end()};
}

Rational orbit_ball_t2(const FieldOrder& K, const UnitGroupData& U, const Rational& abs_norm) {
  auto b = unit_halfwidths(K, U);
  double base = std::pow(abs_norm.get_d(), 2.0 / K.n);
  double r = 0;
  for (int w = 0; w < K.n; ++w) r += base * std::exp(2 * b[w]);
  r = r * (1 + 1e-9) + 1e-6;
  Rational out = std::ceil(r);
  return out;
}

GeneratorSearch principal_generator(const FieldOrder& K, const UnitGroupData& U, const Ideal& I, std::int64_t cap) {
  if (K.n == 1) {
    GeneratorSearch g;
    g.status = Principality::principal;
    g.generator = QVector::Constant(1, Rational(ideal_norm(I)));
    return g;
  }
  return search_generator(K, I, to_qmatrix(to_zmatrix(K.trace_gram)), orbit_ball_t2(K, U, ideal_norm(I)), cap);
}

}  // namespace hmf
