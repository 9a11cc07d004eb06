#pragma once

#include "hmf/cyclotomic.hpp"
#include "hmf/ideal.hpp"
#include "hmf/residue.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hmf {

/// Character of (Z/N)^x with values zeta_order^e. `exps` is indexed by the
/// residue mod N and holds -1 off the unit group. The order is kept minimal,
/// so equal characters compare equal.
struct DirichletChar {
  std::int64_t modulus = 1;
  std::int64_t order = 1;
  std::vector<std::int64_t> exps{0};
  std::string label;

  std::int64_t exp_at(std::int64_t u) const;  // -1 when gcd(u, N) > 1
  CycInt value(std::int64_t u) const;         // 0 when gcd(u, N) > 1
  bool is_trivial() const;
  friend bool operator==(const DirichletChar& a, const DirichletChar& b) {
    return a.modulus == b.modulus && a.order == b.order && a.exps == b.exps;
  }
};

DirichletChar trivial_character(std::int64_t N);
/// Legendre symbol mod an odd prime.
DirichletChar quadratic_character(std::int64_t q);
/// Every character mod N, built from cyclic pieces of (Z/q^k)^x.
std::vector<DirichletChar> dirichlet_characters(std::int64_t N);

DirichletChar char_mul(const DirichletChar& a, const DirichletChar& b);  // moduli lifted to the lcm
DirichletChar char_inverse(const DirichletChar& a);
DirichletChar char_pow(const DirichletChar& a, std::int64_t e);
/// Induce to a multiple M of the modulus.
DirichletChar char_induce(const DirichletChar& a, std::int64_t M);

std::int64_t conductor(const DirichletChar& chi);
bool is_primitive(const DirichletChar& chi);
DirichletChar primitive_character(const DirichletChar& chi);
/// n_q(chi) via the filtration 1 + q^j Z on the q-part; independent of conductor().
int conductor_exponent(const DirichletChar& chi, std::int64_t q);
/// The factor chi_q of chi = prod chi_q, as a character mod q^{v_q(N)}.
DirichletChar local_component(const DirichletChar& chi, std::int64_t q);

enum class GaussSign { minus, plus };
/// sum_u chi(u) zeta_f^{-u} (minus) or zeta_f^{u} (plus) over u mod f = modulus.
/// chi must be primitive.
CycInt gauss_sum(const DirichletChar& chi, GaussSign sign = GaussSign::minus);

/// Character of (O/m)^x for a residue ring of a general order, indexed like the ring.
struct ResidueChar {
  std::shared_ptr<const ResidueRing> ring;
  std::int64_t order = 1;
  std::vector<std::int64_t> exps;  // -1 on non-units

  CycInt value(std::int64_t idx) const;
  bool is_trivial() const;
};

/// x -> phi(N_{K/Q}(x)) on (O_K / m)^x; m must make the norm well defined mod
/// phi.modulus (checked: phi.modulus * O_K must contain m).
ResidueChar compose_norm(const DirichletChar& phi, std::shared_ptr<const ResidueRing> ring);
/// Least j with the character trivial on units congruent to 1 mod P^j. The
/// ring modulus must be a power of P at least as deep as the answer.
int conductor_exponent(const ResidueChar& rho, const PrimeIdeal& P);

std::string format_char(const DirichletChar& chi);

}  // namespace hmf
