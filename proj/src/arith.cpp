#include "hmf/arith.hpp"

#include <cstdlib>

namespace hmf {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::llabs(a) / gcd64(a, b), std::llabs(b));
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = (result * b) % m;
    b = (b * b) % m;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = mod(a, m);
  std::int64_t old_r = m;
  std::int64_t old_s = 0, s = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw MathError("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return mod(old_s, m);
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

BigInt xgcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
  BigInt g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g < 0) {
    g = -g;
    s = -s;
    t = -t;
  }
  return g;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(bound + 1), true);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = std::llabs(n);
  for (std::int64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int valuation(const BigInt& n, std::int64_t p) {
  if (n == 0) throw MathError("valuation of zero");
  BigInt m = abs(n);
  int v = 0;
  BigInt P = static_cast<long>(p);
  while (m % P == 0) {
    m /= P;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, std::int64_t p) {
  return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

std::int64_t to_i64(const BigInt& z) {
  if (!z.fits_slong_p()) throw OverflowError("BigInt does not fit int64: " + z.get_str());
  return z.get_si();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw MathError("not a rational number: '" + s + "'");
  q.canonicalize();
  if (q.get_den() == 0) throw MathError("zero denominator: '" + s + "'");
  return q;
}

int sign(const Rational& q) { return sgn(q); }
int sign(const BigInt& z) { return sgn(z); }

}  // namespace hmf
