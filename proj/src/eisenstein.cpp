#include "hmf/eisenstein.hpp"

#include "hmf/lattice.hpp"
#include "hmf/matrix.hpp"

#include "json.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace hmf {

QVector ExpKey::vec() const {
  QVector v(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
  return v;
}

bool operator<(const ExpKey& a, const ExpKey& b) {
  if (a.trace != b.trace) return a.trace < b.trace;
  return a.coords < b.coords;
}

ExpKey exp_key(const FieldOrder& K, const QVector& x) {
  ExpKey e;
  e.trace = trace(K, x);
  e.coords.assign(x.data(), x.data() + x.size());
  return e;
}

BigInt QExpansion::at(const ExpKey& e) const {
  auto it = coeffs.find(e);
  return it == coeffs.end() ? BigInt(0) : it->second;
}

void QExpansion::set(const ExpKey& e, const BigInt& v) {
  if (v == 0) coeffs.erase(e);
  else coeffs[e] = v;
}

bool operator==(const QExpansion& a, const QExpansion& b) {
  return a.field == b.field && a.degree == b.degree && a.exponent_ideal == b.exponent_ideal && a.coeffs == b.coeffs &&
         a.trace_bound == b.trace_bound && a.k == b.k && a.level == b.level && a.phi == b.phi;
}

void write_qexpansion(std::ostream& os, const QExpansion& e) {
  using nlohmann::json;
  os << "hmf-qexpansion 1\n";
  os << "field " << json(e.field).dump() << "\n";
  os << "degree " << e.degree << "\n";
  os << "weight " << e.k << "\n";
  os << "level " << json(e.level).dump() << "\n";
  os << "phi " << json(e.phi).dump() << "\n";
  os << "bound " << e.trace_bound << "\n";
  os << "ideal " << e.exponent_ideal.denom;
  for (Eigen::Index i = 0; i < e.exponent_ideal.hnf.rows(); ++i)
    for (Eigen::Index j = 0; j < e.exponent_ideal.hnf.cols(); ++j) os << " " << e.exponent_ideal.hnf(i, j);
  os << "\n";
  os << "terms " << e.coeffs.size() << "\n";
  for (const auto& [k, v] : e.coeffs) {
    os << k.trace;
    for (const auto& c : k.coords) os << " " << c;
    os << " " << v << "\n";
  }
}

namespace {

std::string expect_line(std::istream& is, const std::string& keyword) {
  std::string line;
  if (!std::getline(is, line)) throw MathError("qexpansion: unexpected end of input, wanted '" + keyword + "'");
  if (line.rfind(keyword + " ", 0) != 0) throw MathError("qexpansion: expected '" + keyword + "', got '" + line + "'");
  return line.substr(keyword.size() + 1);
}

Rational read_rational(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw MathError("qexpansion: truncated number list");
  return parse_rational(tok);
}

}  // namespace

QExpansion read_qexpansion(std::istream& is) {
  using nlohmann::json;
  std::string line;
  if (!std::getline(is, line) || line != "hmf-qexpansion 1") throw MathError("qexpansion: bad header");
  QExpansion e;
  e.field = json::parse(expect_line(is, "field")).get<std::string>();
  e.degree = std::stoi(expect_line(is, "degree"));
  e.k = std::stoi(expect_line(is, "weight"));
  e.level = json::parse(expect_line(is, "level")).get<std::string>();
  e.phi = json::parse(expect_line(is, "phi")).get<std::string>();
  e.trace_bound = parse_rational(expect_line(is, "bound"));
  {
    std::istringstream ss(expect_line(is, "ideal"));
    std::string tok;
    ss >> tok;
    e.exponent_ideal.denom = BigInt(tok);
    e.exponent_ideal.hnf = ZMatrix(e.degree, e.degree);
    for (int i = 0; i < e.degree; ++i)
      for (int j = 0; j < e.degree; ++j) {
        if (!(ss >> tok)) throw MathError("qexpansion: truncated ideal");
        e.exponent_ideal.hnf(i, j) = BigInt(tok);
      }
  }
  const long n = std::stol(expect_line(is, "terms"));
  for (long t = 0; t < n; ++t) {
    if (!std::getline(is, line)) throw MathError("qexpansion: missing term lines");
    std::istringstream ss(line);
    ExpKey k;
    k.trace = read_rational(ss);
    for (int i = 0; i < e.degree; ++i) k.coords.push_back(read_rational(ss));
    std::string tok;
    if (!(ss >> tok)) throw MathError("qexpansion: missing coefficient");
    BigInt v(tok);
    if (v == 0) throw MathError("qexpansion: stored zero coefficient");
    e.coeffs.emplace(std::move(k), v);
  }
  return e;
}

DivisorTable::DivisorTable(const FieldOrder& K, const Ideal& A, const UnitGroupData& U, const BigInt& max_norm)
    : A_(A), max_norm_(max_norm) {
  if (!is_integral(A)) throw MathError("divisor table: ideal must be integral");
  require_full_rank(K, U);
  Rational R2 = orbit_ball_t2(K, U, Rational(max_norm));
  QMatrix basis = ideal_basis(A);
  ZMatrix bz(basis.rows(), basis.cols());
  for (Eigen::Index i = 0; i < basis.rows(); ++i)
    for (Eigen::Index j = 0; j < basis.cols(); ++j) bz(i, j) = basis(i, j).get_num();
  IMatrix bi = to_imatrix(bz);
  BigInt scale;
  IMatrix g = trace_gram_of(K, basis, scale);
  Rational sb = R2 * Rational(scale);
  BigInt ib;
  mpz_fdiv_q(ib.get_mpz_t(), sb.get_num_mpz_t(), sb.get_den_mpz_t());

  struct Best {
    IVector x;
    std::int64_t t2, tr;
    BigInt absn;
  };
  std::map<std::vector<BigInt>, Best> best;
  fincke_pohst(g, ib, [&](const IVector& v, const BigInt&) {
    ++points_;
    if (v.isZero()) return true;
    IVector x = bi * v;
    BigInt n = norm(K, x);
    BigInt an = abs(n);
    if (an > max_norm_) return true;
    Ideal I = principal_ideal(K, to_q(x));
    std::vector<BigInt> key(I.hnf.data(), I.hnf.data() + I.hnf.size());
    std::int64_t t2v = trace(K, mul_checked(K, x, x));
    std::int64_t trv = trace(K, x);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), Best{x, t2v, trv, an});
      return true;
    }
    Best& b = it->second;
    bool better = t2v < b.t2 || (t2v == b.t2 && (trv > b.tr || (trv == b.tr && std::lexicographical_compare(
                                                                                   x.data(), x.data() + x.size(), b.x.data(), b.x.data() + b.x.size()))));
    if (better) {
      b.x = x;
      b.t2 = t2v;
      b.tr = trv;
    }
    return true;
  });
  for (auto& [key, b] : best) by_norm_[b.absn].push_back(to_q(b.x));
  for (auto& [n, v] : by_norm_)
    std::sort(v.begin(), v.end(), [&](const QVector& a, const QVector& c) { return canonical_less(K, a, c); });
}

const std::vector<QVector>& DivisorTable::reps(const BigInt& abs_norm) const {
  static const std::vector<QVector> empty;
  auto it = by_norm_.find(abs_norm);
  return it == by_norm_.end() ? empty : it->second;
}

std::size_t DivisorTable::orbit_count() const {
  std::size_t c = 0;
  for (const auto& [n, v] : by_norm_) c += v.size();
  return c;
}

std::vector<Factorization> factorization_orbits(const FieldOrder& K, const QVector& xi, const Ideal& A, const Ideal& B,
                                                const DivisorTable& table) {
  if (!(table.ideal() == A)) throw MathError("factorization_orbits: divisor table built for another ideal");
  if (!is_integral(B)) throw MathError("factorization_orbits: B must be integral");
  if (!ideal_contains(ideal_mul(K, A, B), xi)) throw MathError("factorization_orbits: xi is not in AB");
  if (!is_totally_positive(K, xi)) throw MathError("factorization_orbits: xi is not totally positive");
  Rational nx = abs(norm(K, xi));
  Rational lim = nx / ideal_norm(B);
  if (lim > Rational(table.max_norm())) throw MathError("factorization_orbits: divisor table too small for xi");
  BigInt N = nx.get_num();
  std::vector<Factorization> out;
  for (BigInt d = 1; Rational(d) <= lim; ++d) {
    if (N % d != 0) continue;
    for (const auto& a : table.reps(d)) {
      QVector b = mul(K, xi, inverse(K, a));
      if (ideal_contains(B, b)) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const Factorization& x, const Factorization& y) { return canonical_less(K, x.first, y.first); });
  return out;
}

std::vector<Factorization> factorization_orbits(const FieldOrder& K, const QVector& xi, const Ideal& A, const Ideal& B,
                                                const UnitGroupData& U) {
  Rational lim = abs(norm(K, xi)) / ideal_norm(B);
  BigInt m;
  mpz_fdiv_q(m.get_mpz_t(), lim.get_num_mpz_t(), lim.get_den_mpz_t());
  DivisorTable t(K, A, U, m);
  return factorization_orbits(K, xi, A, B, t);
}

BigInt norm_power_term(const FieldOrder& K, const QVector& a, int k) {
  Rational n = norm(K, a);
  if (n == 0) throw MathError("norm_power_term: a = 0");
  if (n.get_den() != 1) throw MathError("norm_power_term: a is not integral");
  BigInt num = n.get_num();
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k - 1));
  return sgn(num) < 0 ? BigInt(-r) : r;
}

void require_weight_hypothesis(const LocConstFn& phi, int k) {
  if (k < 1) throw MathError("weight k must be at least 1");
  if (k > 1) return;
  const ResidueRing& R = phi.ring();
  const std::int64_t n = R.size();
  for (const auto& [key, v] : phi.table())
    if (key % n == 0) throw MathError("k = 1 requires phi(a, 0) = 0; violated at a = " + std::to_string(key / n));
  if (!phi.units_y())
    for (const auto& t : phi.terms())
      if (t.chi_y[0] != 0 && std::any_of(t.chi_x.begin(), t.chi_x.end(), [](std::int64_t c) { return c != 0; }))
        throw MathError("k = 1 requires phi(a, 0) = 0; a norm-character term is nonzero at y = 0");
}

bool units_supported_x(const LocConstFn& phi) {
  const ResidueRing& R = phi.ring();
  const std::int64_t n = R.size();
  for (const auto& [key, v] : phi.table())
    if (!R.is_unit(key / n)) return false;
  if (!phi.units_x())
    for (const auto& t : phi.terms())
      if (std::any_of(t.chi_x.begin(), t.chi_x.end(), [](std::int64_t c) { return c != 0; })) return false;
  return true;
}

BigInt coefficient(const FieldOrder& K, const std::vector<Factorization>& orbits, const Ideal& A, const LocConstFn& phi,
                   int k) {
  if (!is_integral(A)) throw MathError("coefficient: only integral A is supported (N(A) must be an integer)");
  const ResidueRing& R = phi.ring();
  BigInt s = 0;
  for (const auto& [a, b] : orbits) {
    BigInt v = phi(R.index(to_int(a)), R.index(to_int(b)));
    if (v == 0) continue;
    s += v * norm_power_term(K, a, k);
  }
  Rational na = ideal_norm(A);
  return s * na.get_num();
}

BigInt coefficient(const FieldOrder& K, const QVector& xi, const Ideal& A, const Ideal& B, const LocConstFn& phi, int k,
                   const UnitGroupData& U) {
  require_weight_hypothesis(phi, k);
  if (phi.is_zero()) return 0;
  return coefficient(K, factorization_orbits(K, xi, A, B, U), A, phi, k);
}

QExpansion expand(const FieldOrder& K, const Ideal& A, const Ideal& B, const LocConstFn& phi, int k,
                  const Rational& trace_bound, const UnitGroupData& U, const ExpandOptions& opt) {
  require_weight_hypothesis(phi, k);
  if (!opt.sanity && !units_supported_x(phi))
    throw MathError("expand: phi is not supported on units in the first variable; the constant term is out of scope");
  if (!is_integral(A) || !is_integral(B)) throw MathError("expand: cusp ideals must be integral");
  QExpansion e;
  e.field = K.label;
  e.degree = K.n;
  e.exponent_ideal = ideal_mul(K, A, B);
  e.trace_bound = trace_bound;
  e.k = k;
  e.level = opt.level_label;
  e.phi = phi.label();
  if (phi.is_zero()) return e;
  auto exps = enumerate_totally_positive(K, e.exponent_ideal, trace_bound);
  if (exps.empty()) return e;
  Rational nb = ideal_norm(B);
  BigInt D = 0;
  for (const auto& x : exps) {
    Rational l = abs(norm(K, x)) / nb;
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
    if (f > D) D = f;
  }
  DivisorTable table(K, A, U, D);
  for (const auto& x : exps) e.set(exp_key(K, x), coefficient(K, factorization_orbits(K, x, A, B, table), A, phi, k));
  return e;
}

}  // namespace hmf
