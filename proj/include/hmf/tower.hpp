#pragma once

#include "hmf/ideal.hpp"
#include "hmf/residue.hpp"
#include "hmf/units.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hmf {

/// Cyclic extension F'/F of odd prime degree p with a chosen generator gamma
/// of Gal(F'/F).
struct TowerData {
  std::string label;
  OrderPtr base;
  OrderPtr top;
  int p = 0;
  IMatrix embed_matrix;  // top.n x base.n, column j = image of base e_j
  IMatrix gamma;         // top.n x top.n, column j = gamma(e_j)
  UnitGroupData base_units;
  UnitGroupData top_units;
  Ideal rel_different;
  std::optional<QVector> xi;   // totally positive generator, when found
  std::vector<QVector> xi_all; // every totally positive generator met within the search depth
  int xi_depth = 0;
};

/// Build and validate a tower. `gamma_of_generator` gives gamma(top.generator)
/// in top coordinates; `embed_images` the top coordinates of each base basis
/// element (empty means the base is Q).
TowerData make_tower(const std::string& label, OrderPtr base, OrderPtr top, int p,
                     const QVector& gamma_of_generator, const std::vector<QVector>& embed_images,
                     UnitGroupData base_units, UnitGroupData top_units, int xi_depth = 6);

QVector embed(const TowerData& t, const QVector& x);
QVector galois(const TowerData& t, int i, const QVector& x);
IVector galois(const TowerData& t, int i, const IVector& x);
/// Sum of the Galois conjugates, in base coordinates. Throws when the sum does
/// not lie in the embedded base (corrupted tower data).
QVector rel_trace(const TowerData& t, const QVector& x);
/// Extension of a base ideal to the top order.
Ideal extend_ideal(const TowerData& t, const Ideal& I);
/// Contraction I /\ F of an integral top ideal, as a base ideal.
Ideal contract_ideal(const TowerData& t, const Ideal& I);
/// Coordinates in the base of a top element fixed by Gamma; throws otherwise.
QVector descend(const TowerData& t, const QVector& x);

struct XiResult {
  Ideal different;
  std::optional<QVector> xi;
  std::vector<QVector> all;
  std::string status;  // "found", "not found within depth", "not principal", "inconclusive"
};

/// Relative different and a totally positive generator, searched among
/// +-u * g with u running over unit exponent vectors in [-depth, depth]^rank.
XiResult rel_different_with_xi(const TowerData& t, int depth);

/// The residue map O/m -> O'/mO' as an index table.
struct VerMap {
  std::shared_ptr<ResidueRing> base;
  std::shared_ptr<ResidueRing> top;
  std::vector<std::int64_t> image;
};
VerMap residue_ver(const TowerData& t, const Ideal& m);

/// gamma^i on residues of a Gamma-stable modulus, as an index table.
std::vector<std::int64_t> galois_on_residues(const TowerData& t, const ResidueRing& R, int i);

}  // namespace hmf
