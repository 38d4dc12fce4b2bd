#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "genus4/mpoly.hpp"

namespace genus4 {

// The Hasse-Witt matrix of the complete intersection V(F, G), F a quadric and
// G a cubic over F_p, read off from coefficients of (FG)^{p-1}: with
// t_1..t_4 = (2,1,1,1), (1,2,1,1), (1,1,2,1), (1,1,1,2), entry (i, j) is the
// coefficient of the monomial with exponent vector p*t_j - t_i.  Basis
// element i corresponds to coordinate i of (x, y, z, w); the matrix acts on
// column vectors, v -> H v^(p).

using Mat4 = std::array<uint32_t, 16>;  // row-major over F_p

struct HWMatrix {
  uint32_t p = 0;
  Mat4 m{};
  uint32_t at(int i, int j) const { return m[static_cast<size_t>(i) * 4 + j]; }
};

/// Scratch buffers for the power/extraction kernel; reuse across calls.
struct HWWorkspace {
  std::vector<uint32_t> fg, b1, b2, a;
};

HWMatrix hasse_witt(const Poly4& F, const Poly4& G);
HWMatrix hasse_witt(const Poly4& F, const Poly4& G, HWWorkspace& ws);

// Hot path for enumeration loops: quadric as a short term list, cubic as its
// graded-lex 20-vector.
struct QuadricTerms {
  uint32_t p = 0;
  int n = 0;
  std::array<std::pair<Mono4, uint32_t>, 4> t{};
};
QuadricTerms quadric_terms(const Poly4& F);
HWMatrix hasse_witt_vec(const QuadricTerms& F, const CubicVector& g, HWWorkspace& ws);

Mat4 mat_mul(uint32_t p, const Mat4& a, const Mat4& b);
Mat4 mat_pow(uint32_t p, Mat4 a, uint32_t n);
Mat4 mat_transpose(const Mat4& a);
int mat_rank(uint32_t p, Mat4 a);
bool mat_invertible(uint32_t p, const Mat4& a);

/// Canonical (RREF-derived) basis of { v : A v = 0 } over F_p.
std::vector<std::array<uint32_t, 4>> kernel_basis(uint32_t p, const Mat4& a);

int a_number(const HWMatrix& h);           // 4 - rank(H)
int p_rank(const HWMatrix& h);             // rank(H^4), base field F_p
std::array<uint32_t, 5> char_poly(const HWMatrix& h);  // det(xI - H), low-to-high
Mat4 cartier_manin(const HWMatrix& h);     // transpose

struct InvariantRecord {
  int a = 0;
  int f = 0;
  std::array<uint32_t, 5> h{};  // characteristic polynomial
};
InvariantRecord invariants(const HWMatrix& h);

}  // namespace genus4
