#pragma once

#include "hmf/ideal.hpp"

#include <functional>
#include <vector>

namespace hmf {

/// Integer vectors v with v^T G v <= bound for a positive definite integral
/// Gram matrix G. The search runs on a floating Cholesky factor with slack;
/// every reported point has been re-checked exactly. The callback returns
/// false to stop early. Returns the number of points reported.
std::int64_t fincke_pohst(const IMatrix& gram, const BigInt& bound,
                          const std::function<bool(const IVector& v, const BigInt& value)>& visit);

/// Gram matrix of the trace form Tr(xy) on the basis columns of `basis`,
/// scaled to be integral. Returns the scale s with  s * Tr(x^2) = v^T G v.
IMatrix trace_gram_of(const FieldOrder& K, const QMatrix& basis, BigInt& scale);

/// All x in L, x >> 0 with Tr(x) <= trace_bound, sorted by (trace, coordinates).
std::vector<QVector> enumerate_totally_positive(const FieldOrder& K, const Ideal& L, const Rational& trace_bound);

/// Elements of L with Tr(x^2) <= t2_bound (all signs), in no particular order.
std::vector<QVector> enumerate_t2_ball(const FieldOrder& K, const Ideal& L, const Rational& t2_bound);

enum class Principality { principal, not_principal, inconclusive };

struct GeneratorSearch {
  Principality status = Principality::inconclusive;
  QVector generator;          // valid when principal
  std::int64_t points = 0;    // lattice points visited
};

/// Look for x in I with |N(x)| = N(I) (hence (x) = I) and x^T G x <= bound,
/// where G is a positive definite Gram matrix of the order's basis. Reports
/// not_principal only after exhausting the ball; inconclusive when more than
/// `cap` points would be visited.
GeneratorSearch search_generator(const FieldOrder& K, const Ideal& I, const QMatrix& order_gram,
                                 const Rational& bound, std::int64_t cap);

}  // namespace hmf
