#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmf {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when an int64 fast path would overflow. Callers either widen to
/// BigInt or surface it as a configuration problem.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Thrown on malformed inputs: mismatched orders, invalid presets, violated
/// preconditions. Carries a human readable reason.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 add overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 sub overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 mul overflow");
  return r;
}

/// Floor-mod into [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t invmod(std::int64_t a, std::int64_t m);  // throws if not invertible
std::int64_t ipow(std::int64_t base, int exp);        // checked

/// Extended gcd on BigInt: returns g and sets s, t with s*a + t*b = g, g >= 0.
BigInt xgcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
/// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);
/// p-adic valuation; n must be nonzero.
int valuation(const BigInt& n, std::int64_t p);
int valuation(const Rational& q, std::int64_t p);

std::int64_t to_i64(const BigInt& z);  // throws OverflowError
std::string to_string(const BigInt& z);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

int sign(const Rational& q);
int sign(const BigInt& z);

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using ZMatrix = Matrix<BigInt>;
using ZVector = Vector<BigInt>;
using IMatrix = Matrix<std::int64_t>;
using IVector = Vector<std::int64_t>;

}  // namespace hmf

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
