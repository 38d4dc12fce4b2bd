#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "genus4/mpoly.hpp"

namespace genus4 {

// Buchberger engine over F_p in up to five variables (x > y > z > w > t,
// graded reverse lexicographic; t is the auxiliary variable of the
// radical-membership trick), plus the curve verdict built on it: V(F, G) is
// accepted iff the ideal has projective dimension 1 and the Jacobian minors
// have empty vanishing locus on it.  A smooth (2,3) complete intersection in
// P^3 is automatically connected, irreducible and of genus 4, so no separate
// irreducibility or genus computation is run.

namespace gb {

struct Mono5 {
  std::array<uint8_t, 5> e{};
  int deg() const { return e[0] + e[1] + e[2] + e[3] + e[4]; }
  uint64_t key() const;  // integer order = grevlex
  bool divides(const Mono5& m) const;
  Mono5 lcm(const Mono5& m) const;
  Mono5 mul(const Mono5& m) const;
  bool coprime(const Mono5& m) const;
  bool operator==(const Mono5&) const = default;
};

struct Term {
  uint64_t key;
  Mono5 m;
  uint32_t c;
};

struct GPoly {
  uint32_t p = 0;
  std::vector<Term> t;  // sorted by key descending, no zero coefficients
  bool is_zero() const { return t.empty(); }
  const Term& lead() const { return t.front(); }
};

GPoly gpoly_from_terms(uint32_t p, std::initializer_list<std::pair<std::array<int, 5>, int>>);
GPoly gpoly_from_poly4(const Poly4& f);
GPoly gpoly_monic(const GPoly& f);

/// Full normal form of f modulo the (not necessarily Groebner) list `basis`.
GPoly normal_form(const GPoly& f, const std::vector<GPoly>& basis);

}  // namespace gb

struct IdealBasis {
  uint32_t p = 0;
  std::vector<gb::GPoly> gens;
};

/// Reduced Groebner basis (monic, pairwise fully reduced, sorted).
IdealBasis groebner_basis(const IdealBasis& ideal);

/// Affine dimension of the variety of the leading-term ideal (dimension of
/// the zero ideal over n variables is n; the unit ideal gives -1).
int lt_ideal_affine_dim(const IdealBasis& reduced_gb, int nvars);

/// f in rad(I), decided by testing 1 in I + (1 - t f).
bool radical_membership(const Poly4& f, const std::vector<Poly4>& ideal_gens);

/// Empty singular locus: V(F, G, 2x2 minors of the Jacobian) has no point in
/// any extension, tested by radical membership of each coordinate.
bool is_nonsingular(const Poly4& F, const Poly4& G);

enum class CurveReason { ok, wrong_dimension, singular, degenerate_input };
const char* reason_name(CurveReason r);

struct CurveVerdict {
  bool is_curve = false;
  CurveReason reason = CurveReason::degenerate_input;
};

CurveVerdict is_standard_curve(const Poly4& F, const Poly4& G);

/// The six 2x2 minors of the 2x4 Jacobian of (F, G), each homogeneous cubic.
std::vector<Poly4> jacobian_minors(const Poly4& F, const Poly4& G);

}  // namespace genus4
