#include "hmf/residue.hpp"

#include "hmf/matrix.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace hmf {

ResidueRing::ResidueRing(OrderPtr order, const Ideal& modulus) : order_(std::move(order)), modulus_(modulus) {
  init_layout();
  for (const auto& [l, e] : factor(size_)) {
    (void)e;
    for (auto& P : primes_above(*order_, l))
      if (ideal_subset(modulus_, P.ideal)) primes_.push_back(P);
  }
  for (const auto& P : primes_) prime_hnf_.push_back(to_imatrix(P.ideal.hnf));
}

ResidueRing::ResidueRing(OrderPtr order, const Ideal& modulus, std::vector<PrimeIdeal> primes)
    : order_(std::move(order)), modulus_(modulus), primes_(std::move(primes)) {
  init_layout();
  for (const auto& P : primes_) {
    if (!ideal_subset(modulus_, P.ideal)) throw MathError("ResidueRing: supplied prime does not divide the modulus");
    prime_hnf_.push_back(to_imatrix(P.ideal.hnf));
  }
}

void ResidueRing::init_layout() {
  if (!hmf::is_integral(modulus_)) throw MathError("ResidueRing: modulus must be integral");
  h_ = to_imatrix(modulus_.hnf);
  const int n = order_->n;
  stride_ = IVector(n);
  size_ = 1;
  for (int i = 0; i < n; ++i) {
    stride_(i) = size_;
    size_ = checked_mul(size_, h_(i, i));
  }
}

IVector ResidueRing::reduce(IVector x) const {
  for (int i = n() - 1; i >= 0; --i) {
    std::int64_t q = floor_div(x(i), h_(i, i));
    if (q != 0)
      for (int r = 0; r <= i; ++r) x(r) -= q * h_(r, i);
  }
  return x;
}

std::int64_t ResidueRing::index_of_reduced(const IVector& x) const {
  std::int64_t idx = 0;
  for (int i = 0; i < n(); ++i) idx += x(i) * stride_(i);
  return idx;
}

std::int64_t ResidueRing::index(const IVector& x) const { return index_of_reduced(reduce(x)); }

IVector ResidueRing::element(std::int64_t idx) const {
  IVector x(n());
  for (int i = 0; i < n(); ++i) {
    x(i) = idx % h_(i, i);
    idx /= h_(i, i);
  }
  return x;
}

std::int64_t ResidueRing::mul(std::int64_t a, std::int64_t b) const {
  return index(hmf::mul(*order_, element(a), element(b)));
}

std::int64_t ResidueRing::add(std::int64_t a, std::int64_t b) const {
  return index(IVector(element(a) + element(b)));
}

std::int64_t ResidueRing::neg(std::int64_t a) const { return index(IVector(-element(a))); }

std::int64_t ResidueRing::one() const { return index(hmf::one<std::int64_t>(*order_)); }

std::int64_t ResidueRing::from_int(std::int64_t a) const { return index(hmf::from_int<std::int64_t>(*order_, a)); }

bool ResidueRing::is_unit_elem(const IVector& x) const {
  for (const auto& h : prime_hnf_) {
    // x in P  <=>  x reduces to zero against P's HNF
    IVector y = x;
    for (int i = n() - 1; i >= 0; --i) {
      std::int64_t q = floor_div(y(i), h(i, i));
      if (q != 0)
        for (int r = 0; r <= i; ++r) y(r) -= q * h(r, i);
    }
    if (y.isZero()) return false;
  }
  return true;
}

bool ResidueRing::is_unit(std::int64_t a) const { return is_unit_elem(element(a)); }

std::int64_t ResidueRing::inverse(std::int64_t a) const {
  if (!is_unit(a)) throw MathError("ResidueRing::inverse: not a unit");
  // the powers of a cycle back to 1; the element before 1 is the inverse
  std::int64_t one_idx = one();
  std::int64_t cur = a, prev = one_idx;
  while (cur != one_idx) {
    prev = cur;
    cur = mul(cur, a);
  }
  return prev;
}

std::vector<std::int64_t> ResidueRing::units() const {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < size_; ++i)
    if (is_unit(i)) out.push_back(i);
  return out;
}

UnitResidues unit_residues(const ResidueRing& R, const UnitGroupData& U) {
  const FieldOrder& K = R.order();
  std::vector<std::pair<std::int64_t, int>> gens;
  gens.emplace_back(R.from_int(-1), K.n % 2 == 0 ? 1 : -1);
  for (const auto& u : U.fundamental) {
    int s = norm(K, u) > 0 ? 1 : -1;
    gens.emplace_back(R.index(to_int(u)), s);
  }
  std::unordered_map<std::int64_t, int> sign;
  std::deque<std::int64_t> queue{R.one()};
  sign[R.one()] = 1;
  UnitResidues res;
  while (!queue.empty()) {
    std::int64_t e = queue.front();
    queue.pop_front();
    int se = sign[e];
    for (const auto& [g, sg] : gens) {
      std::int64_t f = R.mul(e, g);
      auto it = sign.find(f);
      if (it == sign.end()) {
        sign[f] = se * sg;
        queue.push_back(f);
      } else if (it->second != se * sg) {
        res.consistent = false;
      }
    }
  }
  for (const auto& [e, s] : sign) res.elems.push_back(e);
  std::sort(res.elems.begin(), res.elems.end());
  for (auto e : res.elems) res.norm_sign.push_back(res.consistent ? sign[e] : 0);
  return res;
}

std::vector<std::int64_t> subgroup_closure(const ResidueRing& R, const std::vector<std::int64_t>& gens) {
  std::vector<char> seen(static_cast<std::size_t>(R.size()), 0);
  std::int64_t one = R.one();
  std::vector<std::int64_t> elems{one};
  seen[one] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto g : gens) {
      std::int64_t f = R.mul(elems[i], g);
      if (!seen[f]) {
        seen[f] = 1;
        elems.push_back(f);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::int64_t> unit_group_generators(const ResidueRing& R) {
  std::vector<std::int64_t> gens;
  std::vector<char> in(static_cast<std::size_t>(R.size()), 0);
  std::vector<std::int64_t> sub{R.one()};
  in[R.one()] = 1;
  for (std::int64_t u : R.units()) {
    if (in[u]) continue;
    gens.push_back(u);
    sub = subgroup_closure(R, gens);
    for (auto e : sub) in[e] = 1;
  }
  return gens;
}

}  // namespace hmf
