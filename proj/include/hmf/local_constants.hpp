#pragma once

#include "hmf/characters.hpp"
#include "hmf/cm.hpp"
#include "hmf/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hmf {

enum class Measure { unit_normalized, tamagawa };

/// value * base^(half_exp / 2); square roots stay formal.
struct EpsilonValue {
  CycRat value;
  std::int64_t base = 1;
  std::int64_t half_exp = 0;

  CycRat squared() const;              // value^2 base^half_exp
  CycRat abs2() const;                 // |value|^2 base^half_exp
  std::optional<CycRat> exact() const; // when half_exp is even
  std::string to_string() const;
};

/// Local data at a prime q of Q for a Dirichlet character. The shift alpha
/// defaults to q^(n(chi) + n(psi)); psi(x) = exp(-2 pi i {x}_q), so n(psi) = 0.
struct EpsilonInput {
  DirichletChar chi;
  std::int64_t q = 2;
  int n_psi = 0;
  Measure measure = Measure::unit_normalized;
  std::optional<Rational> shift;
};

/// eps_q(chi^-1, psi, dx) = c_q(alpha)^-1 N(theta_q) sum_u c_q(u) psi(u / alpha),
/// where c is the idele class character restricting to chi_q on Z_q^x.
EpsilonValue epsilon_tate(const EpsilonInput& in);

/// c_q(q) for the idele class character attached to chi: prod_{l != q} chi_l(q)^-1.
CycInt idelic_value_at_q(const DirichletChar& chi, std::int64_t q);

/// Local(chi, delta)_q = F_{q,1}(-1/(2 delta a)) / c_q(a) with a = q^(n_q(chi)).
/// q must be odd, chi ramified at q and delta a q-adic unit.
CycRat katz_local(const DirichletChar& chi, std::int64_t q, const Rational& delta);

struct KatzDeligneResult {
  std::string chi_label;
  std::int64_t q = 0;
  Rational delta = 1;
  CycRat epsilon;     // eps_q(chi^-1, psi, dx_1)
  CycRat katz;        // Local(chi, delta)_q
  CycRat rhs;         // N(q)^(n_q) c_q(delta)^-1 N(theta) Local
  bool holds = false; // epsilon == rhs
  /// epsilon = zeta_ratio_order^ratio_exp * rhs
  std::int64_t ratio_order = 1, ratio_exp = 0;
  bool ratio_is_chi_of_minus_two_inverse = false;
};
KatzDeligneResult check_katz_deligne(const DirichletChar& chi, std::int64_t q, const Rational& delta);

/// The p characters of Gal(F'/Q) for a cyclic F'/Q, found among characters
/// modulo |disc F'| of order dividing p that are trivial on primes splitting
/// completely below prime_bound. Returned primitive, trivial first.
std::vector<DirichletChar> galois_characters(const TowerData& t, std::int64_t prime_bound = 400);

struct ConductorDiscriminantReport {
  BigInt disc;
  std::vector<std::int64_t> conductors;
  bool global_ok = false;  // |disc F'| = prod cond(chi)
  struct Local {
    std::int64_t q = 0;
    std::string prime;
    int n_psi_top = 0;     // v_P(different of F')
    int sum_n_chi = 0;     // sum_chi n_q(chi), by unit filtration
    int n_psi_base = 0;
    bool ok = false;
  };
  std::vector<Local> local;
  bool ok = false;
};
ConductorDiscriminantReport conductor_discriminant(const TowerData& t, const std::vector<DirichletChar>& chars);

/// Data at a totally ramified prime P of F' over q.
struct RamifiedPrime {
  std::int64_t q = 0;
  PrimeIdeal P;
  QVector pi;  // generator of P
  int n_psi = 0;
};
RamifiedPrime ramified_prime(const TowerData& t, std::int64_t q);

struct InductivityReport {
  std::string phi_label;
  std::int64_t q = 0;
  int lhs = 0;  // n_P(phi o N) over O'/P^k
  std::vector<int> n_phichi, n_chi;
  int rhs = 0;
  bool holds = false;
};
InductivityReport inductivity_degree_zero(const DirichletChar& phi, const TowerData& t,
                                          const std::vector<DirichletChar>& chars, std::int64_t q);

/// eps_P(phi~^-1, psi', dx) for phi~ = phi o N at the ramified prime.
EpsilonValue epsilon_top(const DirichletChar& phi, const TowerData& t, const RamifiedPrime& rp, Measure m);

struct EpsilonInductivityReport {
  std::string phi_label;
  std::int64_t q = 0;
  EpsilonValue lhs;  // eps(phi~^-1, psi', dx_psi') at P
  EpsilonValue rhs;  // prod_chi eps((phi chi)^-1, psi, dx_psi) at q
  bool abs2_equal = false;
  bool exact_equal = false;
};
EpsilonInductivityReport epsilon_inductivity(const DirichletChar& phi, const TowerData& t,
                                             const std::vector<DirichletChar>& chars, std::int64_t q);

/// Generator of the absolute different of K = F(omega) given one of F's:
/// g_F * (omega - conj(omega)).
QVector cm_different_generator(const CMQuadExt& cm, const QVector& base_generator);

struct DiffValuationReport {
  std::int64_t p = 0;
  struct Row {
    std::string prime;
    int v_delta_p = 0;       // v(delta^p)
    int v_norm_delta2 = 0;   // v(N_{K'/K} delta')
    int difference = 0;
  };
  std::vector<Row> rows;
  bool nonzero = false;
};
/// cm is K over F = t.base, cm2 is K' over F' = t.top with the same d0.
DiffValuationReport diff_valuations(const CMQuadExt& cm, const CMQuadExt& cm2, const QVector& delta,
                                    const QVector& delta2, const TowerData& t);

}  // namespace hmf
