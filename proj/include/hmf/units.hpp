#pragma once

#include "hmf/field.hpp"
#include "hmf/lattice.hpp"

#include <string>
#include <vector>

namespace hmf {

struct UnitGroupData {
  std::vector<QVector> fundamental;  // normalized so that sigma_1(u) > 1
  std::string source;                // "preset" or "searched(<cap>)"
  bool full_rank = false;            // rank == n - 1
  int rank() const { return static_cast<int>(fundamental.size()); }
};

/// Validate preset units (norm +-1, integral inverse, independent logs).
UnitGroupData units_from_preset(const FieldOrder& K, const std::vector<QVector>& units);

/// Search for units with coordinates in [-cap, cap], greedy by Tr(x^2).
/// Returns full_rank = false when the box is exhausted first.
UnitGroupData unit_group(const FieldOrder& K, int search_cap);

/// Throws MathError("insufficient units ...") unless the data has full rank.
void require_full_rank(const FieldOrder& K, const UnitGroupData& U);

bool is_unit(const FieldOrder& K, const QVector& x);
std::vector<double> log_embedding(const FieldOrder& K, const QVector& x);
/// Numerical rank of the log embeddings of the listed units.
int log_rank(const FieldOrder& K, const std::vector<QVector>& units);
/// Half-widths B_w = sum_j |log|sigma_w(u_j)|| / 2 of the fundamental
/// parallelotope of the unit lattice, per embedding.
std::vector<double> unit_halfwidths(const FieldOrder& K, const UnitGroupData& U);

/// Sign vectors (as bit masks, bit w set when sigma_w < 0) of the subgroup of
/// {+-1}^n generated by -1 and the units.
std::vector<unsigned> unit_sign_group(const FieldOrder& K, const UnitGroupData& U);
unsigned sign_mask(const std::vector<int>& signs);

/// Radius (in Tr(x^2)) of a ball that meets every unit orbit of elements of
/// absolute norm `abs_norm`: sum_w |N|^(2/n) exp(2 B_w), rounded up with slack.
Rational orbit_ball_t2(const FieldOrder& K, const UnitGroupData& U, const Rational& abs_norm);

/// Generator of an integral ideal of a totally real order, searched in the
/// orbit ball; `cap` bounds the lattice points visited.
GeneratorSearch principal_generator(const FieldOrder& K, const UnitGroupData& U, const Ideal& I,
                                    std::int64_t cap = 10'000'000);

}  // namespace hmf
