#include "hmf/cyclotomic.hpp"

namespace hmf {

namespace {

// exact division of integer polynomials (divisor monic)
std::vector<std::int64_t> div_exact(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<std::int64_t> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    std::int64_t t = a[i];
    q[i - db] = t;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = checked_sub(a[i - db + j], checked_mul(t, b[j]));
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw MathError("cyclotomic_poly: inexact division");
  return q;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_poly(std::int64_t m) {
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  if (m < 1 || m > 100000) throw MathError("cyclotomic_poly: conductor out of range");
  std::vector<std::int64_t> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (std::int64_t d = 1; d < m; ++d)
    if (m % d == 0) p = div_exact(p, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(p)).first->second;
}

}  // namespace hmf
