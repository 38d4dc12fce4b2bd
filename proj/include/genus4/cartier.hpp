#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "genus4/field.hpp"
#include "genus4/hassewitt.hpp"
#include "genus4/standard_forms.hpp"

namespace genus4 {

// Cartier points of a standard-form curve X = V(F, G) over F_p: points P
// with H v_P^(p) = c v_P.  Type 1 (c = 0) points are cut out by the span of
// ker(H); Type 2 candidates come from eigenspaces of H^e and are verified
// pointwise.  Every search runs degree by degree in the canonical field of
// that degree and keeps only points whose Frobenius orbit has exactly that
// length, so no cross-field identification is ever needed.

struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProjPoint {
  uint32_t p = 0;
  uint32_t e = 1;          // field the coordinates live in
  std::array<Elem, 4> x{};  // last nonzero coordinate normalized to 1
  bool operator==(const ProjPoint&) const = default;
};

ProjPoint normalize_point(const Fq& K, const std::array<Elem, 4>& coords);
ProjPoint frobenius_point(const Fq& K, const ProjPoint& pt);
uint32_t point_orbit_degree(const Fq& K, const ProjPoint& pt);
bool point_less(const Fq& K, const ProjPoint& a, const ProjPoint& b);
bool point_on_curve(const Fq& K, const ProjPoint& pt, const Poly4& F, const Poly4& G);

struct CartierPoint {
  ProjPoint pt;            // orbit representative (lex-minimal in its orbit)
  int type = 1;
  int degree = 1;          // orbit length = degree of the field of definition
  Elem eigenvalue{};       // type 2 only, nonzero
  int multiplicity = 1;    // intersection multiplicity; meaningful iff mult_defined
  bool mult_defined = false;
};

struct CartierReport {
  int a = 0;
  int f = 0;
  std::vector<CartierPoint> type1, type2;
  int type1_point_count() const;  // distinct geometric points: sum of degrees
  int type2_point_count() const;
  int type1_mass() const;  // sum of degree * multiplicity over orbits (a = 3)
};

/// min(6, (p^f - 1)/(p - 1)), the degree-6 curve bound against the count of
/// Frobenius-fixed directions.
int baker_bound(uint32_t p, int f);

class CartierAnalyzer {
public:
  explicit CartierAnalyzer(FieldTable& fields, uint64_t retry_seed = 0)
      : fields_(fields), seed_(retry_seed) {}

  /// pre: 1 <= a_number(h) <= 3
  std::vector<CartierPoint> type1_points(const CurveSpec& s, const HWMatrix& h);
  std::vector<CartierPoint> type2_points(const CurveSpec& s, const HWMatrix& h);
  CartierReport analyze(const CurveSpec& s, const HWMatrix& h);

  struct SectionPoint {
    ProjPoint pt;
    int degree = 1;
    int multiplicity = 1;
  };

  /// Points of span(basis) intersected with V(F, G), one representative per
  /// Frobenius orbit, exact degree <= max_e.  Three-dimensional spans carry
  /// intersection multiplicities summing (with orbit sizes) to 6.
  std::vector<SectionPoint> linear_section_points(
      const std::vector<std::array<uint32_t, 4>>& basis, const Poly4& F, const Poly4& G,
      uint32_t max_e);

private:
  std::vector<SectionPoint> solve_dim1(const std::array<uint32_t, 4>& v, const Poly4& F,
                                       const Poly4& G);
  std::vector<SectionPoint> solve_dim2(const std::vector<std::array<uint32_t, 4>>& basis,
                                       const Poly4& F, const Poly4& G, uint32_t max_e);
  std::vector<SectionPoint> solve_dim3(const std::vector<std::array<uint32_t, 4>>& basis,
                                       const Poly4& F, const Poly4& G, uint32_t max_e);

  FieldTable& fields_;
  uint64_t seed_ = 0;
};

}  // namespace genus4
