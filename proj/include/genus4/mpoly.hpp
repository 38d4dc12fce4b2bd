#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "genus4/field.hpp"

namespace genus4 {

// Dense homogeneous polynomials in k[x, y, z, w].  Monomials of one degree
// are ordered graded-lexicographically with x > y > z > w (exponent of x
// compared first, descending), and a polynomial stores the full coefficient
// block of its degree indexed by that order.

struct Mono4 {
  std::array<uint16_t, 4> e{};
  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  bool operator==(const Mono4&) const = default;
};

/// Monomials of total degree d, graded-lex descending; cached.
const std::vector<Mono4>& monomials_of_degree(int d);

/// Position of a degree-d monomial within monomials_of_degree(d).
uint32_t mono_rank(const Mono4& m);

/// Flat rank lookup for degree d: entry ((e0*(d+1))+e1)*(d+1)+e2; cached.
const std::vector<uint32_t>& rank_lut_flat(int d);

/// C(n, k) for the simplex index arithmetic.
uint64_t binom(int n, int k);

class Poly4 {
public:
  Poly4() = default;
  Poly4(uint32_t p, int degree);  // zero polynomial of fixed degree
  static Poly4 constant(uint32_t p, uint32_t value);
  static Poly4 from_terms(uint32_t p, int degree,
                          std::initializer_list<std::pair<Mono4, uint32_t>> terms);

  uint32_t p() const { return p_; }
  int degree() const { return deg_; }
  const std::vector<uint32_t>& coeffs() const { return c_; }
  std::vector<uint32_t>& coeffs() { return c_; }
  bool is_zero() const;

  uint32_t coefficient_of(const Mono4& m) const;  // 0 when degrees differ
  void set_term(const Mono4& m, uint32_t coeff);

  Poly4 add(const Poly4& other) const;
  Poly4 sub(const Poly4& other) const;
  Poly4 scale(uint32_t s) const;
  Poly4 mul(const Poly4& other) const;
  Poly4 pow(uint64_t n) const;  // repeated squaring; n = 0 gives 1

  /// f(M * (x,y,z,w)^T) for a row-major 4x4 matrix over F_p.
  Poly4 substitute_linear(const std::array<uint32_t, 16>& M) const;

  /// Partial derivative w.r.t. variable v (0..3); degree drops by one.
  Poly4 derivative(int v) const;

  bool operator==(const Poly4&) const = default;

private:
  uint32_t p_ = 0;
  int deg_ = 0;
  std::vector<uint32_t> c_;
};

// Homogeneous forms in 2 or 3 variables over F_p, same graded-lex layout
// (first variable major).  These carry restrictions of F and G to the linear
// subspaces scanned for Cartier points.
struct KForm {
  uint32_t p = 0;
  int nvars = 0;
  int deg = 0;
  std::vector<uint32_t> c;  // size C(deg + nvars - 1, nvars - 1)
  bool is_zero() const;
};

uint32_t kform_rank2(int a, int d);          // monomial u^a v^(d-a)
uint32_t kform_rank3(int a, int b, int d);   // monomial u^a v^b t^(d-a-b)

/// f restricted to the span of `basis` (2 or 3 vectors over F_p): the form
/// g(u1,..,uk) = f(u1*b1 + ... + uk*bk).
KForm restrict_span(const Poly4& f, const std::vector<std::array<uint32_t, 4>>& basis);

// Graded-lex coefficient vectors for cubics: the 20 degree-3 monomials in
// the pinned order are the curve identity used in all records.
using CubicVector = std::array<uint32_t, 20>;

const std::array<Mono4, 20>& cubic_monomials();
Poly4 cubic_decode(uint32_t p, const CubicVector& v);
CubicVector cubic_encode(const Poly4& g);

/// Value of f at an affine representative of P; rejects the zero tuple.
Elem evaluate_proj(const Poly4& f, const Fq& K, const std::array<Elem, 4>& coords);

/// Same over the prime field.
uint32_t evaluate_fp(const Poly4& f, const std::array<uint32_t, 4>& coords);

}  // namespace genus4
