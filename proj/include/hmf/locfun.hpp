#pragma once

#include "hmf/cyclotomic.hpp"
#include "hmf/residue.hpp"
#include "hmf/tower.hpp"
#include "hmf/units.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace hmf {

/// Level p^alpha f with f an integral ideal prime to p.
struct Level {
  std::int64_t p = 0;
  int alpha = 0;
  Ideal f;
};
Ideal level_modulus(const FieldOrder& K, const Level& lv);

/// x -> coeff * chi_x[N(x) mod M] * chi_y[N(y) mod M]; integer-valued tables.
struct NormCharTerm {
  std::int64_t M = 1;
  std::vector<std::int64_t> chi_x, chi_y;
  BigInt coeff = 1;
};

/// Locally constant function on pairs of residues of O/m. Values are exact
/// integers: a sparse table plus norm-character terms (for levels too large
/// to tabulate densely).
class LocConstFn {
 public:
  using Key = std::int64_t;  // ix * |O/m| + iy

  LocConstFn() = default;
  LocConstFn(std::shared_ptr<const ResidueRing> ring, int k, std::string label);

  const ResidueRing& ring() const { return *ring_; }
  std::shared_ptr<const ResidueRing> ring_ptr() const { return ring_; }
  int weight() const { return k_; }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }
  bool units_x() const { return units_x_; }
  bool units_y() const { return units_y_; }
  void set_support_flags(bool ux, bool uy) { units_x_ = ux; units_y_ = uy; }

  Key key(std::int64_t ix, std::int64_t iy) const { return ix * ring_->size() + iy; }
  BigInt operator()(std::int64_t ix, std::int64_t iy) const;
  BigInt at(const IVector& x, const IVector& y) const { return (*this)(ring_->index(x), ring_->index(y)); }

  void add_entry(std::int64_t ix, std::int64_t iy, const BigInt& v);
  void add_term(NormCharTerm t);
  const std::unordered_map<Key, BigInt>& table() const { return table_; }
  const std::vector<NormCharTerm>& terms() const { return terms_; }
  std::int64_t norm_mod(std::int64_t idx, std::int64_t M) const;

  bool is_zero() const;
  bool has_norm_terms() const { return !terms_.empty(); }

  friend LocConstFn operator+(const LocConstFn& a, const LocConstFn& b);
  friend LocConstFn operator*(const BigInt& c, const LocConstFn& a);

 private:
  std::shared_ptr<const ResidueRing> ring_;
  int k_ = 0;
  std::string label_;
  bool units_x_ = false, units_y_ = false;
  std::unordered_map<Key, BigInt> table_;
  std::vector<NormCharTerm> terms_;
  std::unordered_map<std::int64_t, std::shared_ptr<const std::vector<std::int64_t>>> norm_tables_;
};

struct HomogeneityWitness {
  bool ok = true;
  std::int64_t eps = -1, x = -1, y = -1;
  std::string message;
};

/// Check phi(e^-1 x, e y) = N(e)^k phi(x, y) over the residues of global
/// units, and that the support respects the flags.
HomogeneityWitness check_homogeneity(const LocConstFn& phi, const UnitResidues& U);
/// Validating constructor: throws MathError carrying the witness on failure.
LocConstFn make_locfun(LocConstFn phi, const UnitResidues& U);

// constructors
LocConstFn constant_fn(std::shared_ptr<const ResidueRing> R, int k, const BigInt& v);
LocConstFn indicator_fn(std::shared_ptr<const ResidueRing> R, int k, std::int64_t ix, std::int64_t iy);
/// Unit-orbit sum of the indicator of (x0, y0): sum over u of N(u)^k [(u^-1 x0, u y0)].
LocConstFn unit_symmetrize(const LocConstFn& seed, const UnitResidues& U);
/// Sum over the distinct Gamma-translates (ring must be Gamma-stable).
LocConstFn gamma_symmetrize(const LocConstFn& phi, const TowerData& t);
/// Restrict to pairs with both coordinates units.
LocConstFn restrict_to_units(const LocConstFn& phi);

bool gamma_invariant(const LocConstFn& phi, const TowerData& t);
/// phi(x, y) := phi'(ver x, ver y) on the base ring of `ver`.
LocConstFn pullback_ver(const LocConstFn& phi_top, const VerMap& ver);

enum class FourierMode { none, inverse_cardinality, level_ratio };
FourierMode parse_fourier_mode(const std::string& s);

/// Representatives of m^-1 theta^-1 / theta^-1 (the characters of O/m).
std::vector<QVector> dual_residues(const ResidueRing& R);

/// P phi(x, y) = c * sum_a phi(a, y) e(Tr(a x)) for x in m^-1 theta^-1, with the
/// prefactor c fixed by the mode (level_ratio uses N(p^alpha)/N(f)).
CycRat partial_fourier(const LocConstFn& phi, const QVector& x, std::int64_t iy, FourierMode mode,
                       const Level* level = nullptr);

}  // namespace hmf
