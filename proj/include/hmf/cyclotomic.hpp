#pragma once

#include "hmf/arith.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

namespace hmf {

/// Coefficients (low to high) of the m-th cyclotomic polynomial.
const std::vector<std::int64_t>& cyclotomic_poly(std::int64_t m);

/// Element of Z[zeta_m] (or Q(zeta_m) with Scalar = Rational), stored as its
/// reduction modulo Phi_m, so coefficient vectors compare exactly.
template <typename Scalar>
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::int64_t m) : m_(m), c_(static_cast<std::size_t>(degree_of(m)), Scalar(0)) {
    if (m < 1) throw MathError("Cyclotomic: conductor must be positive");
  }
  static Cyclotomic constant(std::int64_t m, const Scalar& v) {
    Cyclotomic r(m);
    r.c_[0] = v;
    return r;
  }
  /// zeta_m^e
  static Cyclotomic zeta(std::int64_t m, std::int64_t e) {
    std::vector<Scalar> raw(static_cast<std::size_t>(m), Scalar(0));
    raw[static_cast<std::size_t>(mod(e, m))] = 1;
    return from_raw(m, raw);
  }
  /// Reduce an arbitrary vector of powers of zeta_m.
  static Cyclotomic from_raw(std::int64_t m, const std::vector<Scalar>& raw) {
    Cyclotomic r(m);
    r.assign_reduced(raw);
    return r;
  }

  std::int64_t conductor() const { return m_; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Scalar rational_part() const { return c_[0]; }

  /// The same element viewed in Z[zeta_M] for m | M.
  Cyclotomic lift(std::int64_t M) const {
    if (M % m_ != 0) throw MathError("Cyclotomic::lift: conductor does not divide target");
    if (M == m_) return *this;
    const std::int64_t s = M / m_;
    std::vector<Scalar> raw(static_cast<std::size_t>(M), Scalar(0));
    for (std::size_t j = 0; j < c_.size(); ++j) raw[static_cast<std::size_t>(mod(static_cast<std::int64_t>(j) * s, M))] += c_[j];
    return from_raw(M, raw);
  }

  Cyclotomic conj() const {
    std::vector<Scalar> raw(static_cast<std::size_t>(m_), Scalar(0));
    for (std::size_t j = 0; j < c_.size(); ++j) raw[static_cast<std::size_t>(mod(-static_cast<std::int64_t>(j), m_))] += c_[j];
    return from_raw(m_, raw);
  }
  /// Galois action zeta -> zeta^a, a prime to m.
  Cyclotomic galois(std::int64_t a) const {
    if (gcd64(a, m_) != 1) throw MathError("Cyclotomic::galois: exponent not prime to conductor");
    std::vector<Scalar> raw(static_cast<std::size_t>(m_), Scalar(0));
    for (std::size_t j = 0; j < c_.size(); ++j) raw[static_cast<std::size_t>(mod(static_cast<std::int64_t>(j) * a, m_))] += c_[j];
    return from_raw(m_, raw);
  }
  Cyclotomic abs2() const { return *this * conj(); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = common(a, b);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = common(a, b);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = common(a, b);
    std::vector<Scalar> raw(x.c_.size() + y.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j)
        if (y.c_[j] != 0) raw[i + j] += x.c_[i] * y.c_[j];
    }
    Cyclotomic r(x.m_);
    r.assign_reduced(raw);
    return r;
  }
  friend Cyclotomic operator*(const Scalar& s, const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = common(a, b);
    return x.c_ == y.c_;
  }

  /// Human-readable form: sum of c_j z^j with z = zeta_m.
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      if (!first) os << (c_[j] > 0 ? " + " : " - ");
      else if (c_[j] < 0) os << "-";
      Scalar a = c_[j] < 0 ? Scalar(-c_[j]) : c_[j];
      if (j == 0) os << a;
      else {
        if (a != 1) os << a << "*";
        os << "z" << m_;
        if (j > 1) os << "^" << j;
      }
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  std::int64_t m_;
  std::vector<Scalar> c_;

  static std::int64_t degree_of(std::int64_t m) { return static_cast<std::int64_t>(cyclotomic_poly(m).size()) - 1; }

  void assign_reduced(std::vector<Scalar> raw) {
    const auto& phi = cyclotomic_poly(m_);
    const std::size_t d = phi.size() - 1;
    for (std::size_t i = raw.size(); i-- > d;) {
      if (raw[i] == 0) continue;
      Scalar t = raw[i];
      for (std::size_t j = 0; j <= d; ++j)
        if (phi[j] != 0) raw[i - d + j] -= t * static_cast<long>(phi[j]);
    }
    c_.assign(d, Scalar(0));
    for (std::size_t i = 0; i < d && i < raw.size(); ++i) c_[i] = raw[i];
  }

  static std::pair<Cyclotomic, Cyclotomic> common(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.m_ == b.m_) return {a, b};
    std::int64_t M = lcm64(a.m_, b.m_);
    return {a.lift(M), b.lift(M)};
  }
};

using CycInt = Cyclotomic<BigInt>;
using CycRat = Cyclotomic<Rational>;

inline CycRat to_rat(const CycInt& x) {
  std::vector<Rational> raw(x.coeffs().begin(), x.coeffs().end());
  return CycRat::from_raw(x.conductor(), raw);
}

}  // namespace hmf
