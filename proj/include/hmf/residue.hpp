#pragma once

#include "hmf/ideal.hpp"
#include "hmf/units.hpp"

#include <memory>
#include <vector>

namespace hmf {

/// The finite ring O/m for an integral ideal m. Residues are represented by
/// their reduced coordinate vectors (0 <= v_i < H(i,i) against the HNF of m)
/// and indexed in mixed radix over the HNF diagonal.
class ResidueRing {
 public:
  ResidueRing(OrderPtr order, const Ideal& modulus);
  /// Use when Kummer-Dedekind does not apply to the order's generator: the
  /// caller supplies the primes dividing the modulus.
  ResidueRing(OrderPtr order, const Ideal& modulus, std::vector<PrimeIdeal> primes);

  const FieldOrder& order() const { return *order_; }
  OrderPtr order_ptr() const { return order_; }
  const Ideal& modulus() const { return modulus_; }
  std::int64_t size() const { return size_; }
  int n() const { return order_->n; }

  IVector reduce(IVector x) const;
  std::int64_t index(const IVector& x) const;  // reduces first
  std::int64_t index_of_reduced(const IVector& x) const;
  IVector element(std::int64_t idx) const;
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t one() const;
  std::int64_t zero() const { return 0; }
  std::int64_t from_int(std::int64_t a) const;
  bool is_unit(std::int64_t a) const;
  bool is_unit_elem(const IVector& x) const;  // x need not be reduced
  std::int64_t inverse(std::int64_t a) const;  // throws for non-units
  std::vector<std::int64_t> units() const;     // sorted
  const std::vector<PrimeIdeal>& primes() const { return primes_; }

 private:
  OrderPtr order_;
  Ideal modulus_;
  IMatrix h_;
  IVector stride_;
  std::int64_t size_ = 1;
  std::vector<PrimeIdeal> primes_;
  std::vector<IMatrix> prime_hnf_;

  void init_layout();
};

/// Residues of the global units (generated by -1 and the unit data) with the
/// norm of a global unit reaching each of them. When two global units with
/// different norms share a residue, `norm_sign` is 0 there.
struct UnitResidues {
  std::vector<std::int64_t> elems;
  std::vector<int> norm_sign;
  bool consistent = true;
};

UnitResidues unit_residues(const ResidueRing& R, const UnitGroupData& U);

/// Brute-force generating set of the unit group (O/m)^x.
std::vector<std::int64_t> unit_group_generators(const ResidueRing& R);
/// Closure of a set of units under multiplication (subgroup generated).
std::vector<std::int64_t> subgroup_closure(const ResidueRing& R, const std::vector<std::int64_t>& gens);

}  // namespace hmf
