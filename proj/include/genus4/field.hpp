#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace genus4 {

// Exact arithmetic in F_p and F_{p^e}, 1 <= e <= 6, for odd primes p < 2^16.
//
// Elements of F_{p^e} are coordinate vectors w.r.t. the power basis of a
// monic irreducible modulus; the canonical modulus for (p, e) is the
// lexicographically smallest monic irreducible of degree e over F_p,
// coefficients compared low-degree first.  Explicit moduli may be supplied
// instead (e.g. to render points in a caller's preferred representation).
// No cross-field embeddings exist: values from distinct Fq instances are
// never mixed.

inline constexpr int kMaxExtDegree = 6;

// Coordinates w.r.t. the power basis; entries at positions >= e stay zero,
// so equal elements of one field have identical arrays.
using Elem = std::array<uint32_t, kMaxExtDegree>;

bool is_prime_u32(uint32_t n);
uint32_t mod_pow(uint32_t base, uint64_t exp, uint32_t p);
uint32_t mod_inverse(uint32_t a, uint32_t p);

/// Smallest quadratic non-residue in {2, ..., p-1}.
uint32_t smallest_nonresidue(uint32_t p);

/// Monic modulus of degree e over F_p as its low coefficients c0..c_{e-1}
/// (the leading 1 is implicit).
using ModulusCoeffs = std::vector<uint32_t>;

bool is_irreducible_monic(const ModulusCoeffs& low, uint32_t p);
ModulusCoeffs canonical_modulus(uint32_t p, uint32_t e);

class Fq {
public:
  // Canonical field for (p, e); instances are cached and immutable, so the
  // returned reference is valid for the program lifetime.
  static const Fq& get(uint32_t p, uint32_t e);

  // Field with an explicit monic modulus (validated for irreducibility).
  Fq(uint32_t p, uint32_t e, ModulusCoeffs modulus_low);

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint64_t q() const { return q_; }
  const ModulusCoeffs& modulus_low() const { return mod_; }

  Elem zero() const { return Elem{}; }
  Elem one() const;
  Elem from_uint(uint32_t r) const;  // residue mod p as a constant
  bool is_zero(const Elem& a) const;

  // Bijection {0, ..., q-1} <-> field, base-p digits (index 0 is zero).
  Elem element(uint64_t index) const;
  uint64_t index_of(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(uint32_t c, const Elem& a) const;
  Elem pow(const Elem& a, uint64_t n) const;
  Elem inv(const Elem& a) const;  // throws on zero

  /// x -> x^p (precomputed power-basis matrix).
  Elem frobenius(const Elem& a) const;

  /// Smallest d >= 1 with x^{p^d} = x; divides e.
  uint32_t orbit_degree(const Elem& a) const;

  bool is_square(const Elem& a) const;
  std::optional<Elem> sqrt(const Elem& a) const;

  /// Prime-field elements as decimal, extension elements as "[c0,c1,...]".
  std::string to_string(const Elem& a) const;

private:
  void build_tables();

  uint32_t p_ = 0;
  uint32_t e_ = 0;
  uint64_t q_ = 0;
  ModulusCoeffs mod_;
  // t^{e+k} mod f for k = 0..e-2, used to fold products back below degree e
  std::array<Elem, kMaxExtDegree - 1> red_;
  // column j = t^{j*p} mod f, so Frobenius is a basis change
  std::array<Elem, kMaxExtDegree> frob_;
};

// Roots (with multiplicity, via repeated exact division) found by exhaustive
// evaluation over the target field.  Two coefficient conventions:
//  - coefficients in F_p, low-to-high (constants under the power-basis view);
//  - coefficients already expressed in the target field.
// Throws on the zero polynomial.
std::vector<std::pair<Elem, int>> roots_univariate(const std::vector<uint32_t>& f_mod_p,
                                                   const Fq& target);
std::vector<std::pair<Elem, int>> roots_univariate(const std::vector<Elem>& f, const Fq& target);

// Dense univariate polynomials over F_p (low-to-high coefficients).
namespace fpuni {
using Poly = std::vector<uint32_t>;
int degree(const Poly& f);
void normalize(Poly& f);
Poly mulmod(const Poly& a, const Poly& b, const Poly& modulus, uint32_t p);
Poly powmod_x(uint64_t n, const Poly& modulus, uint32_t p);  // x^n mod modulus
Poly gcd_monic(Poly a, Poly b, uint32_t p);
/// Number of distinct monic irreducible factors of each exact degree
/// d = 1..maxd (multiplicities ignored); index 0 unused.
std::vector<int> exact_degree_factor_counts(const Poly& f, uint32_t p, int maxd);
}  // namespace fpuni

// Small univariate helpers over a fixed Fq (dense, low-to-high, no leading
// zeros after normalize).
namespace uni {
using Poly = std::vector<Elem>;
void normalize(const Fq& K, Poly& f);
int degree(const Poly& f);
Elem eval(const Fq& K, const Poly& f, const Elem& x);
Poly make_monic(const Fq& K, const Poly& f);
// remainder of a by b (b nonzero)
Poly rem(const Fq& K, Poly a, const Poly& b);
Poly gcd_monic(const Fq& K, Poly a, Poly b);
// exact division by (t - r); quotient returned, fails if r is not a root
Poly div_linear(const Fq& K, const Poly& f, const Elem& r);
}  // namespace uni

// Registry of the fields used by one computation or output stream: canonical
// moduli unless an override was installed for that exact (p, e).
class FieldTable {
public:
  const Fq& get(uint32_t p, uint32_t e);
  void set_override(uint32_t p, uint32_t e, ModulusCoeffs modulus_low);
  bool has_override(uint32_t p, uint32_t e) const;
  // (p, e, modulus) for every field handed out so far, for output headers
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, ModulusCoeffs>> used() const;

private:
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, std::unique_ptr<Fq>>> overrides_;
  mutable std::vector<std::pair<uint32_t, uint32_t>> touched_;
};

}  // namespace genus4
