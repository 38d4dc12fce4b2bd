#pragma once

#include <cstdint>
#include <vector>

#include "genus4/mpoly.hpp"
#include "genus4/standard_forms.hpp"

namespace genus4 {

// F_p-isomorphism classification of standard-form curves.  A canonical
// genus-4 curve lies on a unique quadric, so any isomorphism is induced by a
// projectivity preserving that quadric: the similitude group {M : M^T A M =
// lambda A} of the case's Gram matrix A acts on cubics modulo (F) and
// scalars, and curves are isomorphic exactly when their orbit-minimal
// reduced coefficient vectors agree.  Curves over inequivalent quadrics
// (rank 3 vs the two rank-4 discriminant classes) are never isomorphic.

struct Similitude {
  std::array<uint32_t, 16> m{};  // row-major, invertible
  uint32_t lambda = 1;           // M^T A M = lambda A
};

/// Quadric equivalence classes shared by cases: D | {N1i, N1ii} | N2.
int quadric_kind(CurveCase c);

/// Complete enumeration by column backtracking with Gram-constraint pruning.
/// Guarded: case D supports p <= 7, the nondegenerate cases p <= 5.
std::vector<Similitude> similitude_group(CurveCase c, uint32_t p);

/// Reduction of a cubic modulo the row space {L*F : L linear}, eliminating
/// with graded-lex pivots; idempotent, and invariant under adding multiples
/// of the case quadric.
CubicVector cubic_normal_form_mod_F(const CubicVector& g, CurveCase c, uint32_t p);

/// Orbit minimum of the reduced vector over the full similitude group and
/// all scalar rescalings of G; equal for two cubics iff the curves are
/// F_p-isomorphic.
CubicVector canonical_form(const CubicVector& g, CurveCase c, uint32_t p,
                           const std::vector<Similitude>& group);

struct ClassPartition {
  struct Cls {
    CubicVector class_id{};          // canonical form (orbit minimum)
    CurveCase cse = CurveCase::D;    // case of the representative
    bool mixed_cases = false;        // members from more than one case tag
    std::vector<size_t> members;     // indices into the classify() input
    size_t representative = 0;       // member with the lex-least vector
    int a = 0, f = 0;                // filled by callers that know them
  };
  std::vector<Cls> classes;
};

/// Partition into F_p-isomorphism classes; input order determines member
/// indices.  `workers` 0 means one thread per available core.
ClassPartition classify(const std::vector<std::pair<CurveCase, CubicVector>>& curves,
                        uint32_t p, int workers = 0);

}  // namespace genus4
