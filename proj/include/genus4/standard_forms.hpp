#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genus4/mpoly.hpp"

namespace genus4 {

// The four standard-form families of smooth non-hyperelliptic genus-4
// canonical curves V(F, G) over F_p.  Each case fixes the quadric F and a
// constrained coefficient pattern for the cubic G; admissible coefficient
// tuples are enumerated in lexicographic order over the named parameters (in
// the order they appear in the defining formula), which makes index ranges a
// stable unit of work distribution.

enum class CurveCase { D, N1i, N1ii, N2 };

const char* case_name(CurveCase c);
std::optional<CurveCase> case_from_name(const std::string& s);
constexpr std::array<CurveCase, 4> kAllCases = {CurveCase::D, CurveCase::N1i, CurveCase::N1ii,
                                                CurveCase::N2};

/// Fixed non-square used for the N2 quadric and the square-class coefficient
/// representatives {0, 1, eps}: the smallest non-residue in {2, ..., p-1}.
uint32_t case_epsilon(uint32_t p);

/// Case D: 2yw + z^2; N1i/N1ii: 2xw + 2yz; N2: 2xw + y^2 - eps*z^2.
Poly4 quadric_of(CurveCase c, uint32_t p);

/// Number of admissible coefficient tuples.
uint64_t case_cardinality(CurveCase c, uint32_t p);

struct CurveSpec {
  CurveCase cse = CurveCase::D;
  uint32_t p = 0;
  uint64_t index = 0;                // position in the lexicographic enumeration
  std::vector<uint32_t> params;      // named coefficients, printed order
  CubicVector vec{};                 // graded-lex coefficients of G
  Poly4 F, G;
};

CurveSpec curve_from_index(CurveCase c, uint32_t p, uint64_t index);

/// Hot path: index -> cubic coefficient vector, no polynomial objects.
void cubic_vec_from_index(CurveCase c, uint32_t p, uint64_t index, CubicVector& out);

/// Validates that `v` belongs to the case's admissible pattern and recovers
/// the named parameters and enumeration index.  Throws on violation.
CurveSpec curve_from_vec(CurveCase c, uint32_t p, const CubicVector& v);

std::vector<uint32_t> params_from_index(CurveCase c, uint32_t p, uint64_t index);
uint64_t index_of_params(CurveCase c, uint32_t p, const std::vector<uint32_t>& params);
void vec_from_params(CurveCase c, uint32_t p, const std::vector<uint32_t>& params,
                     CubicVector& out);

// SplitMix64, the fixed 64-bit generator behind all sampling; draw k of a
// stream is computable independently, so sample ranges partition cleanly.
struct SplitMix64 {
  uint64_t state;
  uint64_t next();
};
uint64_t sample_stream_seed(uint64_t seed, uint64_t draw);
uint64_t uniform_below(SplitMix64& g, uint64_t n);  // rejection sampling, unbiased

/// Index of the k-th draw (with replacement) of the (case, p, seed) stream.
uint64_t sample_index(CurveCase c, uint32_t p, uint64_t seed, uint64_t draw);

CurveSpec sample_curve(CurveCase c, uint32_t p, uint64_t seed, uint64_t draw);

}  // namespace genus4
