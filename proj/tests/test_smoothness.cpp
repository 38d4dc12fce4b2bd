#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "genus4/smoothness.hpp"
#include "genus4/standard_forms.hpp"

using namespace genus4;
using gb::GPoly;

namespace {

Mono4 mono(int a, int b, int c, int d) {
  Mono4 m;
  m.e = {uint16_t(a), uint16_t(b), uint16_t(c), uint16_t(d)};
  return m;
}

Poly4 fd(uint32_t p) { return quadric_of(CurveCase::D, p); }

Poly4 d3_example_cubic() {
  return Poly4::from_terms(3, 3,
                           {{mono(3, 0, 0, 0), 1},
                            {mono(0, 3, 0, 0), 1},
                            {mono(1, 1, 1, 0), 1},
                            {mono(0, 1, 2, 0), 1},
                            {mono(1, 0, 0, 2), 1}});
}

}  // namespace

TEST_CASE("groebner basis of principal and unit ideals") {
  IdealBasis I;
  I.p = 3;
  I.gens = {gb::gpoly_from_terms(3, {{{1, 0, 0, 0, 0}, 1}})};  // x
  IdealBasis G = groebner_basis(I);
  REQUIRE(G.gens.size() == 1);
  CHECK(G.gens[0].t.size() == 1);
  CHECK(G.gens[0].lead().m.e == std::array<uint8_t, 5>{1, 0, 0, 0, 0});

  // {x, 1 - t x} contains 1 = (1 - t x) + t * x
  IdealBasis I2;
  I2.p = 3;
  I2.gens = {gb::gpoly_from_terms(3, {{{1, 0, 0, 0, 0}, 1}}),
             gb::gpoly_from_terms(3, {{{0, 0, 0, 0, 0}, 1}, {{1, 0, 0, 0, 1}, -1}})};
  IdealBasis G2 = groebner_basis(I2);
  REQUIRE(G2.gens.size() == 1);
  CHECK(G2.gens[0].lead().m.deg() == 0);

  // empty input: basis of the zero ideal
  IdealBasis I3;
  I3.p = 3;
  CHECK(groebner_basis(I3).gens.empty());
}

TEST_CASE("groebner basis is a fixed point and certifies membership") {
  SplitMix64 rng{314};
  for (int it = 0; it < 25; ++it) {
    const uint32_t p = it % 2 ? 3 : 5;
    IdealBasis I;
    I.p = p;
    int ngens = 2 + static_cast<int>(uniform_below(rng, 2));
    std::vector<Poly4> gens4;
    for (int k = 0; k < ngens; ++k) {
      Poly4 f(p, 1 + static_cast<int>(uniform_below(rng, 2)));
      for (auto& c : f.coeffs()) c = static_cast<uint32_t>(uniform_below(rng, p));
      gens4.push_back(f);
      I.gens.push_back(gb::gpoly_from_poly4(f));
    }
    IdealBasis G = groebner_basis(I);
    IdealBasis G2 = groebner_basis(G);
    REQUIRE(G.gens.size() == G2.gens.size());
    for (size_t i = 0; i < G.gens.size(); ++i) {
      CHECK(G.gens[i].t.size() == G2.gens[i].t.size());
      for (size_t j = 0; j < G.gens[i].t.size(); ++j) {
        CHECK(G.gens[i].t[j].key == G2.gens[i].t[j].key);
        CHECK(G.gens[i].t[j].c == G2.gens[i].t[j].c);
      }
    }
    // the input generators reduce to zero
    for (const auto& g : I.gens) CHECK(gb::normal_form(g, G.gens).is_zero());
    // random ideal combinations reduce to zero
    for (int t = 0; t < 5; ++t) {
      Poly4 mult(p, 1);
      for (auto& c : mult.coeffs()) c = static_cast<uint32_t>(uniform_below(rng, p));
      GPoly combo = gb::gpoly_from_poly4(gens4[0].mul(mult));
      CHECK(gb::normal_form(combo, G.gens).is_zero());
    }
  }
}

TEST_CASE("ideal membership self-consistency for the degenerate quadric") {
  IdealBasis I;
  I.p = 3;
  I.gens = {gb::gpoly_from_poly4(fd(3)),
            gb::gpoly_from_terms(3, {{{1, 0, 0, 0, 0}, 1}})};
  IdealBasis G = groebner_basis(I);
  // z^2 * F_d lies in the ideal
  Poly4 z2 = Poly4::from_terms(3, 2, {{mono(0, 0, 2, 0), 1}});
  CHECK(gb::normal_form(gb::gpoly_from_poly4(z2.mul(fd(3))), G.gens).is_zero());
}

TEST_CASE("radical membership") {
  const uint32_t p = 5;
  Poly4 x = Poly4::from_terms(p, 1, {{mono(1, 0, 0, 0), 1}});
  Poly4 y = Poly4::from_terms(p, 1, {{mono(0, 1, 0, 0), 1}});
  Poly4 x2 = Poly4::from_terms(p, 2, {{mono(2, 0, 0, 0), 1}});
  CHECK(radical_membership(x, {x2}));
  CHECK_FALSE(radical_membership(y, {x}));
  // (x + y)^3 and xy cut out {x = y = 0}, so x + y is in the radical but z is not
  Poly4 xpy = Poly4::from_terms(p, 1, {{mono(1, 0, 0, 0), 1}, {mono(0, 1, 0, 0), 1}});
  Poly4 xy = Poly4::from_terms(p, 2, {{mono(1, 1, 0, 0), 1}});
  Poly4 z = Poly4::from_terms(p, 1, {{mono(0, 0, 1, 0), 1}});
  CHECK(radical_membership(xpy, {xpy.pow(3), xy}));
  CHECK_FALSE(radical_membership(z, {xpy.pow(3), xy}));
}

TEST_CASE("nonsingularity of the worked examples") {
  // x^3 with the degenerate quadric: the gradient of x^3 vanishes on x = 0
  Poly4 x3 = Poly4::from_terms(3, 3, {{mono(3, 0, 0, 0), 1}});
  CHECK_FALSE(is_nonsingular(fd(3), x3));
  CHECK(is_nonsingular(fd(3), d3_example_cubic()));
  Poly4 y3 = Poly4::from_terms(3, 3, {{mono(0, 3, 0, 0), 1}});
  CHECK_FALSE(is_nonsingular(quadric_of(CurveCase::N1i, 3), y3));
}

TEST_CASE("curve verdicts") {
  CurveVerdict ok = is_standard_curve(fd(3), d3_example_cubic());
  CHECK(ok.is_curve);
  CHECK(ok.reason == CurveReason::ok);

  // z * F_d spans the same surface as F_d alone
  Poly4 z = Poly4::from_terms(3, 1, {{mono(0, 0, 1, 0), 1}});
  CurveVerdict dim = is_standard_curve(fd(3), z.mul(fd(3)));
  CHECK_FALSE(dim.is_curve);
  CHECK(dim.reason == CurveReason::wrong_dimension);

  Poly4 x3 = Poly4::from_terms(3, 3, {{mono(3, 0, 0, 0), 1}});
  CurveVerdict sing = is_standard_curve(fd(3), x3);
  CHECK_FALSE(sing.is_curve);
  CHECK(sing.reason == CurveReason::singular);

  CurveVerdict degen = is_standard_curve(fd(3), Poly4(3, 3));
  CHECK_FALSE(degen.is_curve);
  CHECK(degen.reason == CurveReason::degenerate_input);
}

TEST_CASE("verdict-ok curves have consistent torsion invariants") {
  SplitMix64 g{2718};
  for (uint32_t p : {3u, 5u}) {
    int checked = 0;
    for (int it = 0; it < 60 && checked < 25; ++it) {
      CurveCase c = kAllCases[uniform_below(g, 4)];
      CurveSpec s = curve_from_index(c, p, uniform_below(g, case_cardinality(c, p)));
      CurveVerdict v = is_standard_curve(s.F, s.G);
      if (!v.is_curve) continue;
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("brute-force singular scan agrees over small extensions at p = 3") {
  // scan-positive implies verdict singular; checked on random tuples
  SplitMix64 g{161803};
  const uint32_t p = 3;
  int scanned = 0;
  for (int it = 0; it < 60; ++it) {
    CurveCase c = kAllCases[uniform_below(g, 4)];
    CurveSpec s = curve_from_index(c, p, uniform_below(g, case_cardinality(c, p)));
    auto minors = jacobian_minors(s.F, s.G);
    bool scan_singular = false;
    for (uint32_t e = 1; e <= 3 && !scan_singular; ++e) {
      const Fq& K = Fq::get(p, e);
      // P^3(F_{3^e}) by trailing-one normalization
      for (int level = 0; level < 4 && !scan_singular; ++level) {
        uint64_t stratum = 1;
        for (int i = 0; i < level; ++i) stratum *= K.q();
        for (uint64_t rem = 0; rem < stratum && !scan_singular; ++rem) {
          std::array<Elem, 4> pt;
          for (auto& x : pt) x = K.zero();
          pt[level] = K.one();
          uint64_t r = rem;
          for (int i = 0; i < level; ++i) {
            pt[i] = K.element(r % K.q());
            r /= K.q();
          }
          if (!K.is_zero(evaluate_proj(s.F, K, pt))) continue;
          if (!K.is_zero(evaluate_proj(s.G, K, pt))) continue;
          bool all_minors_zero = true;
          for (const auto& mnr : minors)
            if (!K.is_zero(evaluate_proj(mnr, K, pt))) {
              all_minors_zero = false;
              break;
            }
          if (all_minors_zero) scan_singular = true;
        }
      }
    }
    if (scan_singular) {
      ++scanned;
      CHECK_FALSE(is_nonsingular(s.F, s.G));
    }
  }
  CHECK(scanned > 0);  // the sample exercises the singular branch
}
