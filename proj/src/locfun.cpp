#include "hmf/locfun.hpp"

#include "hmf/matrix.hpp"

#include <algorithm>
#include <set>

namespace hmf {

Ideal level_modulus(const FieldOrder& K, const Level& lv) {
  if (lv.p < 2 || !is_prime(lv.p) || lv.alpha < 0) throw MathError("level: p must be prime and alpha >= 0");
  if (!is_integral(lv.f)) throw MathError("level: f must be integral");
  if (ideal_contains(ideal_add(K, lv.f, principal_ideal(K, from_int<Rational>(K, lv.p))), one<Rational>(K)) == false)
    throw MathError("level: f must be prime to p");
  return ideal_mul(K, principal_ideal(K, from_int<Rational>(K, ipow(lv.p, lv.alpha))), lv.f);
}

LocConstFn::LocConstFn(std::shared_ptr<const ResidueRing> ring, int k, std::string label)
    : ring_(std::move(ring)), k_(k), label_(std::move(label)) {
  if (!ring_) throw MathError("LocConstFn: missing residue ring");
  if (k < 0) throw MathError("LocConstFn: weight must be nonnegative");
  if (ring_->size() > 3'000'000'000LL) throw MathError("LocConstFn: level too large");
}

BigInt LocConstFn::operator()(std::int64_t ix, std::int64_t iy) const {
  BigInt v = 0;
  if (!table_.empty()) {
    auto it = table_.find(key(ix, iy));
    if (it != table_.end()) v = it->second;
  }
  if (terms_.empty()) return v;
  if ((units_x_ && !ring_->is_unit(ix)) || (units_y_ && !ring_->is_unit(iy))) return v;
  for (const auto& t : terms_) {
    std::int64_t cx = t.chi_x[static_cast<std::size_t>(norm_mod(ix, t.M))];
    if (cx == 0) continue;
    std::int64_t cy = t.chi_y[static_cast<std::size_t>(norm_mod(iy, t.M))];
    if (cy == 0) continue;
    v += t.coeff * cx * cy;
  }
  return v;
}

void LocConstFn::add_entry(std::int64_t ix, std::int64_t iy, const BigInt& v) {
  if (ix < 0 || iy < 0 || ix >= ring_->size() || iy >= ring_->size())
    throw MathError("LocConstFn: residue index out of range");
  if (v == 0) return;
  auto [it, inserted] = table_.try_emplace(key(ix, iy), v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) table_.erase(it);
  }
}

std::int64_t LocConstFn::norm_mod(std::int64_t idx, std::int64_t M) const {
  auto it = norm_tables_.find(M);
  if (it == norm_tables_.end()) throw MathError("LocConstFn: no norm table for this modulus");
  return (*it->second)[static_cast<std::size_t>(idx)];
}

void LocConstFn::add_term(NormCharTerm t) {
  if (t.M < 1) throw MathError("norm character: modulus must be positive");
  if (static_cast<std::int64_t>(t.chi_x.size()) != t.M || static_cast<std::int64_t>(t.chi_y.size()) != t.M)
    throw MathError("norm character: table length must equal the modulus");
  const FieldOrder& K = ring_->order();
  // N(x) mod M is well defined on O/m only when m lies in M O
  if (!ideal_subset(ring_->modulus(), principal_ideal(K, from_int<Rational>(K, t.M))))
    throw MathError("norm character: modulus M must divide the level");
  if (!norm_tables_.count(t.M)) {
    auto tab = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(ring_->size()));
    for (std::int64_t i = 0; i < ring_->size(); ++i) {
      BigInt n = norm(K, ring_->element(i));
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(t.M));
      (*tab)[static_cast<std::size_t>(i)] = r.get_si();
    }
    norm_tables_[t.M] = std::move(tab);
  }
  if (t.coeff != 0) terms_.push_back(std::move(t));
}

bool LocConstFn::is_zero() const {
  if (!table_.empty()) return false;
  for (const auto& t : terms_) {
    bool zx = std::all_of(t.chi_x.begin(), t.chi_x.end(), [](std::int64_t c) { return c == 0; });
    bool zy = std::all_of(t.chi_y.begin(), t.chi_y.end(), [](std::int64_t c) { return c == 0; });
    if (!zx && !zy) return false;
  }
  return true;
}

LocConstFn operator+(const LocConstFn& a, const LocConstFn& b) {
  if (a.ring_->modulus() != b.ring_->modulus() || a.ring_->order().label != b.ring_->order().label)
    throw MathError("LocConstFn: sum of functions at different levels");
  if (a.k_ != b.k_) throw MathError("LocConstFn: sum of functions of different weight");
  if (!b.terms_.empty() && (a.units_x_ != b.units_x_ || a.units_y_ != b.units_y_) && !a.terms_.empty())
    throw MathError("LocConstFn: cannot merge norm terms with different support flags");
  LocConstFn r = a;
  r.label_ = a.label_ + "+" + b.label_;
  for (const auto& [k, v] : b.table_) {
    auto [it, ins] = r.table_.try_emplace(k, v);
    if (!ins) {
      it->second += v;
      if (it->second == 0) r.table_.erase(it);
    }
  }
  for (const auto& [m, tab] : b.norm_tables_) r.norm_tables_.try_emplace(m, tab);
  for (const auto& t : b.terms_) r.terms_.push_back(t);
  if (a.terms_.empty() && !b.terms_.empty()) {
    r.units_x_ = b.units_x_;
    r.units_y_ = b.units_y_;
  } else if (!a.terms_.empty() || !b.terms_.empty()) {
    r.units_x_ = a.units_x_;
    r.units_y_ = a.units_y_;
  } else {
    r.units_x_ = a.units_x_ && b.units_x_;
    r.units_y_ = a.units_y_ && b.units_y_;
  }
  return r;
}

LocConstFn operator*(const BigInt& c, const LocConstFn& a) {
  LocConstFn r = a;
  if (c == 0) {
    r.table_.clear();
    r.terms_.clear();
    return r;
  }
  for (auto& [k, v] : r.table_) v *= c;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

namespace {

BigInt table_value(const LocConstFn& phi, std::int64_t ix, std::int64_t iy) {
  auto it = phi.table().find(phi.key(ix, iy));
  return it == phi.table().end() ? BigInt(0) : it->second;
}

std::vector<std::int64_t> unit_inverses(const ResidueRing& R, const UnitResidues& U) {
  std::vector<std::int64_t> inv;
  inv.reserve(U.elems.size());
  for (auto u : U.elems) inv.push_back(R.inverse(u));
  return inv;
}

}  // namespace

HomogeneityWitness check_homogeneity(const LocConstFn& phi, const UnitResidues& U) {
  HomogeneityWitness w;
  const ResidueRing& R = phi.ring();
  const int k = phi.weight();
  auto fail = [&](std::int64_t e, std::int64_t x, std::int64_t y, std::string msg) {
    w.ok = false;
    w.eps = e;
    w.x = x;
    w.y = y;
    w.message = std::move(msg);
    return w;
  };
  const bool odd = k % 2 != 0;
  if (odd && !U.consistent && !phi.is_zero())
    return fail(-1, -1, -1, "a unit congruent to 1 has norm -1, so only the zero function has odd weight");
  auto factor = [&](std::size_t j) -> int { return odd ? U.norm_sign[j] : 1; };

  const std::int64_t n = R.size();
  std::vector<std::int64_t> inv = unit_inverses(R, U);
  for (const auto& [key, v] : phi.table()) {
    std::int64_t x = key / n, y = key % n;
    if (phi.units_x() && !R.is_unit(x)) return fail(-1, x, y, "nonzero value off the declared unit support (x)");
    if (phi.units_y() && !R.is_unit(y)) return fail(-1, x, y, "nonzero value off the declared unit support (y)");
    for (std::size_t j = 0; j < U.elems.size(); ++j) {
      std::int64_t x2 = R.mul(inv[j], x), y2 = R.mul(U.elems[j], y);
      if (table_value(phi, x2, y2) != factor(j) * v)
        return fail(U.elems[j], x, y, "phi(e^-1 x, e y) != N(e)^k phi(x, y)");
    }
  }
  std::set<int> signs;
  for (std::size_t j = 0; j < U.elems.size(); ++j) {
    signs.insert(U.consistent ? U.norm_sign[j] : 1);
    if (!U.consistent) continue;
    for (const auto& t : phi.terms())
      if (mod(phi.norm_mod(U.elems[j], t.M) - U.norm_sign[j], t.M) != 0)
        return fail(U.elems[j], -1, -1, "unit residue norm disagrees with the global unit norm");
  }
  for (const auto& t : phi.terms())
    for (int s : signs)
      for (std::int64_t a = 0; a < t.M; ++a)
        for (std::int64_t b = 0; b < t.M; ++b) {
          // s = N(e) = N(e)^-1 since N(e) = +-1
          std::int64_t lhs = t.chi_x[static_cast<std::size_t>(mod(s * a, t.M))] * t.chi_y[static_cast<std::size_t>(mod(s * b, t.M))];
          std::int64_t rhs = (odd ? s : 1) * t.chi_x[static_cast<std::size_t>(a)] * t.chi_y[static_cast<std::size_t>(b)];
          if (lhs != rhs) return fail(-1, a, b, "norm-character term is not homogeneous of weight k");
        }
  return w;
}

LocConstFn make_locfun(LocConstFn phi, const UnitResidues& U) {
  auto w = check_homogeneity(phi, U);
  if (!w.ok)
    throw MathError("homogeneity violation in '" + phi.label() + "': " + w.message + " (eps=" + std::to_string(w.eps) +
                    ", x=" + std::to_string(w.x) + ", y=" + std::to_string(w.y) + ")");
  return phi;
}

LocConstFn constant_fn(std::shared_ptr<const ResidueRing> R, int k, const BigInt& v) {
  LocConstFn f(std::move(R), k, "const(" + v.get_str() + ")");
  NormCharTerm t;
  t.M = 1;
  t.chi_x = {1};
  t.chi_y = {1};
  t.coeff = v;
  f.add_term(std::move(t));
  return f;
}

LocConstFn indicator_fn(std::shared_ptr<const ResidueRing> R, int k, std::int64_t ix, std::int64_t iy) {
  LocConstFn f(std::move(R), k, "ind(" + std::to_string(ix) + "," + std::to_string(iy) + ")");
  f.add_entry(ix, iy, 1);
  return f;
}

LocConstFn unit_symmetrize(const LocConstFn& seed, const UnitResidues& U) {
  if (seed.has_norm_terms()) throw MathError("unit_symmetrize: seed must be a table");
  const ResidueRing& R = seed.ring();
  LocConstFn out(seed.ring_ptr(), seed.weight(), "U." + seed.label());
  out.set_support_flags(seed.units_x(), seed.units_y());
  const bool odd = seed.weight() % 2 != 0;
  std::vector<std::int64_t> inv = unit_inverses(R, U);
  const std::int64_t n = R.size();
  for (const auto& [key, v] : seed.table()) {
    std::int64_t x = key / n, y = key % n;
    for (std::size_t j = 0; j < U.elems.size(); ++j) {
      int s = odd ? U.norm_sign[j] : 1;
      if (s == 0) continue;
      out.add_entry(R.mul(inv[j], x), R.mul(U.elems[j], y), s * v);
    }
  }
  return out;
}

LocConstFn gamma_symmetrize(const LocConstFn& phi, const TowerData& t) {
  // Gamma has prime order: an invariant function is its own orbit sum
  if (gamma_invariant(phi, t)) {
    LocConstFn out = phi;
    out.set_label("G." + phi.label());
    return out;
  }
  const ResidueRing& R = phi.ring();
  auto g = galois_on_residues(t, R, 1);
  LocConstFn out(phi.ring_ptr(), phi.weight(), "G." + phi.label());
  out.set_support_flags(phi.units_x(), phi.units_y());
  const std::int64_t n = R.size();
  for (const auto& [key, v] : phi.table()) {
    std::int64_t x = key / n, y = key % n;
    for (int i = 0; i < t.p; ++i) {
      out.add_entry(x, y, v);
      x = g[static_cast<std::size_t>(x)];
      y = g[static_cast<std::size_t>(y)];
    }
  }
  // norm-character terms are already invariant; their orbit sum is p times the term
  for (auto tm : phi.terms()) {
    tm.coeff *= t.p;
    out.add_term(std::move(tm));
  }
  return out;
}

LocConstFn restrict_to_units(const LocConstFn& phi) {
  const ResidueRing& R = phi.ring();
  LocConstFn out(phi.ring_ptr(), phi.weight(), "units." + phi.label());
  const std::int64_t n = R.size();
  for (const auto& [key, v] : phi.table())
    if (R.is_unit(key / n) && R.is_unit(key % n)) out.add_entry(key / n, key % n, v);
  for (const auto& tm : phi.terms()) out.add_term(tm);
  out.set_support_flags(true, true);
  return out;
}

bool gamma_invariant(const LocConstFn& phi, const TowerData& t) {
  const ResidueRing& R = phi.ring();
  auto g = galois_on_residues(t, R, 1);
  const std::int64_t n = R.size();
  for (const auto& [key, v] : phi.table()) {
    std::int64_t x = key / n, y = key % n;
    if (table_value(phi, g[static_cast<std::size_t>(x)], g[static_cast<std::size_t>(y)]) != v) return false;
  }
  for (const auto& tm : phi.terms())
    for (std::int64_t i = 0; i < n; ++i)
      if (phi.norm_mod(g[static_cast<std::size_t>(i)], tm.M) != phi.norm_mod(i, tm.M)) return false;
  return true;
}

LocConstFn pullback_ver(const LocConstFn& phi_top, const VerMap& ver) {
  if (phi_top.ring().modulus() != ver.top->modulus()) throw MathError("pullback_ver: level mismatch");
  const std::int64_t nb = ver.base->size(), nt = ver.top->size();
  std::unordered_map<std::int64_t, std::int64_t> pre;
  for (std::int64_t i = 0; i < nb; ++i) pre.emplace(ver.image[static_cast<std::size_t>(i)], i);
  LocConstFn out(ver.base, phi_top.weight(), "ver*" + phi_top.label());
  out.set_support_flags(phi_top.units_x(), phi_top.units_y());
  for (const auto& [key, v] : phi_top.table()) {
    auto ix = pre.find(key / nt), iy = pre.find(key % nt);
    if (ix != pre.end() && iy != pre.end()) out.add_entry(ix->second, iy->second, v);
  }
  // N_{F'/Q}(ver x) = N_{F/Q}(x)^p
  const int p = static_cast<int>(ver.top->order().n / ver.base->order().n);
  for (const auto& tm : phi_top.terms()) {
    NormCharTerm t = tm;
    for (std::int64_t a = 0; a < tm.M; ++a) {
      std::int64_t ap = powmod(a, p, tm.M);
      t.chi_x[static_cast<std::size_t>(a)] = tm.chi_x[static_cast<std::size_t>(ap)];
      t.chi_y[static_cast<std::size_t>(a)] = tm.chi_y[static_cast<std::size_t>(ap)];
    }
    out.add_term(std::move(t));
  }
  return out;
}

FourierMode parse_fourier_mode(const std::string& s) {
  if (s == "none") return FourierMode::none;
  if (s == "inverse-cardinality") return FourierMode::inverse_cardinality;
  if (s == "level-ratio") return FourierMode::level_ratio;
  throw MathError("unknown Fourier normalization '" + s + "'");
}

std::vector<QVector> dual_residues(const ResidueRing& R) {
  const FieldOrder& K = R.order();
  Ideal th = different(K);
  Ideal L1 = ideal_inverse(K, ideal_mul(K, R.modulus(), th));
  Ideal L0 = ideal_inverse(K, th);
  QMatrix B1 = ideal_basis(L1), B0 = ideal_basis(L0);
  QMatrix C = inverse(B1) * B0;
  ZMatrix z(C.rows(), C.cols());
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
      if (C(i, j).get_den() != 1) throw MathError("dual_residues: dual lattices not nested");
      z(i, j) = C(i, j).get_num();
    }
  ZMatrix H = hnf(z);
  const int n = K.n;
  std::vector<std::int64_t> d(n);
  for (int i = 0; i < n; ++i) d[i] = H(i, i).get_si();
  std::vector<QVector> out;
  std::vector<std::int64_t> c(n, 0);
  while (true) {
    QVector v = QVector::Zero(n);
    for (int i = 0; i < n; ++i) v(i) = c[i];
    out.push_back(B1 * v);
    int i = 0;
    while (i < n && ++c[i] == d[i]) c[i++] = 0;
    if (i == n) break;
  }
  return out;
}

CycRat partial_fourier(const LocConstFn& phi, const QVector& x, std::int64_t iy, FourierMode mode, const Level* level) {
  const ResidueRing& R = phi.ring();
  const FieldOrder& K = R.order();
  // e(Tr(a x)) depends on a mod m only when x lies in m^-1 theta^-1
  Ideal dual = ideal_inverse(K, ideal_mul(K, R.modulus(), different(K)));
  if (!ideal_contains(dual, x)) throw MathError("partial_fourier: x is not in m^-1 theta^-1");
  std::vector<Rational> tr(K.n);
  BigInt den = 1;
  for (int i = 0; i < K.n; ++i) {
    QVector e = QVector::Zero(K.n);
    e(i) = 1;
    tr[i] = trace(K, mul(K, e, x));
    den = lcm(den, BigInt(tr[i].get_den()));
  }
  const std::int64_t d = to_i64(den);
  std::vector<Rational> raw(static_cast<std::size_t>(d), Rational(0));
  for (std::int64_t a = 0; a < R.size(); ++a) {
    BigInt v = phi(a, iy);
    if (v == 0) continue;
    IVector ae = R.element(a);
    Rational t = 0;
    for (int i = 0; i < K.n; ++i)
      if (ae(i) != 0) t += tr[i] * static_cast<long>(ae(i));
    Rational td = t * Rational(d);
    raw[static_cast<std::size_t>(mod(to_i64(BigInt(td.get_num())), d))] += Rational(v);
  }
  CycRat s = CycRat::from_raw(d, raw);
  switch (mode) {
    case FourierMode::none:
      return s;
    case FourierMode::inverse_cardinality:
      return Rational(Rational(1) / Rational(static_cast<long>(R.size()))) * s;
    case FourierMode::level_ratio: {
      if (!level) throw MathError("partial_fourier: level-ratio mode needs the level data");
      Rational c = Rational(ipow(level->p, level->alpha * K.n)) / ideal_norm(level->f);
      return c * s;
    }
  }
  return s;
}

}  // namespace hmf
