#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "genus4/hassewitt.hpp"
#include "genus4/standard_forms.hpp"

using namespace genus4;

namespace {

Mono4 mono(int a, int b, int c, int d) {
  Mono4 m;
  m.e = {uint16_t(a), uint16_t(b), uint16_t(c), uint16_t(d)};
  return m;
}

Mat4 rows(std::array<std::array<uint32_t, 4>, 4> r) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i * 4 + j] = r[i][j];
  return m;
}

}  // namespace

TEST_CASE("degenerate-quadric family over F_3") {
  Poly4 Fd = Poly4::from_terms(3, 2, {{mono(0, 1, 0, 1), 2}, {mono(0, 0, 2, 0), 1}});
  Poly4 G = Poly4::from_terms(3, 3,
                              {{mono(3, 0, 0, 0), 1},
                               {mono(0, 3, 0, 0), 1},
                               {mono(1, 1, 1, 0), 1},
                               {mono(0, 1, 2, 0), 1},
                               {mono(1, 0, 0, 2), 1}});
  HWMatrix h = hasse_witt(Fd, G);
  CHECK(h.m == rows({{{0, 0, 0, 0}, {0, 1, 2, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}}));
  CHECK(a_number(h) == 3);
  CHECK(p_rank(h) == 1);  // H^2 = H for this matrix
  Mat4 h2 = mat_mul(3, h.m, h.m);
  CHECK(h2 == h.m);
}

TEST_CASE("rank-one example over F_7") {
  Poly4 F1 = Poly4::from_terms(7, 2, {{mono(1, 0, 0, 1), 2}, {mono(0, 1, 1, 0), 2}});
  Poly4 G = Poly4::from_terms(7, 3,
                              {{mono(2, 1, 0, 0), 2},
                               {mono(0, 3, 0, 0), 1},
                               {mono(2, 0, 1, 0), 1},
                               {mono(0, 2, 1, 0), 1},
                               {mono(0, 0, 3, 0), 3},
                               {mono(0, 1, 1, 1), 2},
                               {mono(0, 0, 2, 1), 1},
                               {mono(0, 1, 0, 2), 4},
                               {mono(0, 0, 1, 2), 6},
                               {mono(0, 0, 0, 3), 4}});
  HWMatrix h = hasse_witt(F1, G);
  CHECK(h.m == rows({{{2, 3, 6, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}}));
  CHECK(a_number(h) == 3);
  CHECK(p_rank(h) == 1);
  // char poly x^3 (x - 2) = x^4 + 5 x^3
  CHECK(char_poly(h) == std::array<uint32_t, 5>{0, 0, 0, 5, 1});
  // column convention: H e1 = 2 e1
  CHECK(h.at(0, 0) == 2);
  CHECK(h.at(1, 0) == 0);
  CHECK(h.at(2, 0) == 0);
  CHECK(h.at(3, 0) == 0);
}

TEST_CASE("full-matrix example over F_11") {
  Poly4 Fd = Poly4::from_terms(11, 2, {{mono(0, 0, 2, 0), 1}, {mono(0, 1, 0, 1), 2}});
  Poly4 G = Poly4::from_terms(11, 3,
                              {{mono(3, 0, 0, 0), 9},
                               {mono(1, 2, 0, 0), 1},
                               {mono(0, 3, 0, 0), 4},
                               {mono(1, 1, 1, 0), 9},
                               {mono(1, 0, 2, 0), 2},
                               {mono(0, 0, 3, 0), 8},
                               {mono(1, 0, 1, 1), 7},
                               {mono(1, 0, 0, 2), 8},
                               {mono(0, 0, 1, 2), 1},
                               {mono(0, 0, 0, 3), 3}});
  HWMatrix h = hasse_witt(Fd, G);
  CHECK(h.m == rows({{{1, 5, 3, 10}, {7, 2, 10, 4}, {2, 10, 6, 9}, {4, 9, 1, 7}}}));
  CHECK(a_number(h) == 3);
  CHECK(p_rank(h) == 1);
  // transpose view
  Mat4 cm = cartier_manin(h);
  CHECK(cm[0 * 4 + 1] == 7);
  CHECK(cm[1 * 4 + 0] == 5);
}

TEST_CASE("parametric family over F_5, single row") {
  Poly4 Fd = Poly4::from_terms(5, 2, {{mono(0, 1, 0, 1), 2}, {mono(0, 0, 2, 0), 1}});
  for (uint32_t a = 1; a < 5; ++a)
    for (uint32_t b = 1; b < 5; ++b)
      for (uint32_t c = 0; c < 5; ++c) {
        Poly4 G = Poly4::from_terms(5, 3,
                                    {{mono(3, 0, 0, 0), a},
                                     {mono(1, 0, 0, 2), 1},
                                     {mono(0, 3, 0, 0), b},
                                     {mono(0, 0, 0, 3), c},
                                     {mono(0, 0, 1, 2), 1}});
        HWMatrix h = hasse_witt(Fd, G);
        Mat4 expect{};
        expect[1 * 4 + 1] = 3 * a % 5 * b % 5 * b % 5;
        expect[1 * 4 + 2] = 4 * a % 5 * b % 5;
        expect[1 * 4 + 3] = 4 * a % 5;
        CHECK(h.m == expect);
      }
}

TEST_CASE("parametric family over F_5, rank three") {
  Poly4 Fd = Poly4::from_terms(5, 2, {{mono(0, 1, 0, 1), 2}, {mono(0, 0, 2, 0), 1}});
  for (uint32_t a = 1; a < 5; ++a)
    for (uint32_t b = 1; b < 5; ++b) {
      Poly4 G = Poly4::from_terms(5, 3,
                                  {{mono(3, 0, 0, 0), 3 * a % 5 * a % 5},
                                   {mono(1, 0, 0, 2), 1},
                                   {mono(1, 1, 1, 0), b},
                                   {mono(0, 3, 0, 0), b * b % 5 * a % 5},
                                   {mono(0, 0, 0, 3), a},
                                   {mono(0, 0, 1, 2), 1}});
      HWMatrix h = hasse_witt(Fd, G);
      uint32_t a3 = a * a % 5 * a % 5, b3 = b * b % 5 * b % 5;
      Mat4 expect{};
      expect[0 * 4 + 2] = 4 * a % 5 * b3 % 5;
      expect[0 * 4 + 3] = 4 * b % 5;
      expect[1 * 4 + 2] = 2 * a3 % 5 * b % 5 * b % 5;
      expect[1 * 4 + 3] = 2 * a % 5 * a % 5;
      expect[3 * 4 + 2] = 4 * b3 % 5;
      expect[3 * 4 + 3] = 4 * a3 % 5 * b % 5;
      CHECK(h.m == expect);
    }
}

TEST_CASE("rank, a-number, p-rank basics") {
  HWMatrix zero{3, {}};
  CHECK(a_number(zero) == 4);
  CHECK(p_rank(zero) == 0);
  CHECK(char_poly(zero) == std::array<uint32_t, 5>{0, 0, 0, 0, 1});

  HWMatrix id{3, rows({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}})};
  CHECK(a_number(id) == 0);
  CHECK(p_rank(id) == 4);
  // (x - 1)^4 = x^4 + 2x^3 + 0x^2 + 2x + 1 over F_3
  CHECK(char_poly(id) == std::array<uint32_t, 5>{1, 2, 0, 2, 1});
  CHECK(cartier_manin(zero) == zero.m);
}

TEST_CASE("rank stability and invariant bounds on random curves") {
  SplitMix64 g{99};
  HWWorkspace ws;
  for (uint32_t p : {3u, 5u}) {
    for (int it = 0; it < 200; ++it) {
      CurveCase c = kAllCases[uniform_below(g, 4)];
      uint64_t idx = uniform_below(g, case_cardinality(c, p));
      CurveSpec s = curve_from_index(c, p, idx);
      HWMatrix h = hasse_witt(s.F, s.G, ws);
      int a = a_number(h), f = p_rank(h);
      CHECK(a + f <= 4);
      CHECK(f <= mat_rank(p, h.m));
      CHECK(mat_rank(p, mat_pow(p, h.m, 4)) == mat_rank(p, mat_pow(p, h.m, 5)));
      auto hp = char_poly(h);
      if (a >= 1) CHECK(hp[0] == 0);  // x divides the characteristic polynomial
    }
  }
}

TEST_CASE("workspace and plain paths agree") {
  SplitMix64 g{123};
  HWWorkspace ws;
  for (uint32_t p : {3u, 5u, 7u, 11u}) {
    for (int it = 0; it < 10; ++it) {
      CurveCase c = kAllCases[uniform_below(g, 4)];
      CurveSpec s = curve_from_index(c, p, uniform_below(g, case_cardinality(c, p)));
      CHECK(hasse_witt(s.F, s.G).m == hasse_witt_vec(quadric_terms(s.F), s.vec, ws).m);
    }
  }
}

TEST_CASE("input validation") {
  Poly4 Fd = Poly4::from_terms(3, 2, {{mono(0, 1, 0, 1), 2}, {mono(0, 0, 2, 0), 1}});
  Poly4 G3(3, 3);
  CHECK_THROWS(hasse_witt(Fd, Fd));       // wrong degree
  CHECK_THROWS(hasse_witt(Fd, G3));       // zero cubic
  CHECK_THROWS(hasse_witt(Poly4(3, 2), Poly4(3, 3)));
}

TEST_CASE("kernel basis solves the homogeneous system") {
  SplitMix64 g{7};
  for (uint32_t p : {3u, 7u}) {
    for (int it = 0; it < 50; ++it) {
      Mat4 m{};
      for (auto& x : m) x = static_cast<uint32_t>(uniform_below(g, p));
      auto basis = kernel_basis(p, m);
      CHECK(basis.size() == static_cast<size_t>(4 - mat_rank(p, m)));
      for (const auto& v : basis)
        for (int i = 0; i < 4; ++i) {
          uint64_t s = 0;
          for (int j = 0; j < 4; ++j) s += uint64_t(m[i * 4 + j]) * v[j];
          CHECK(s % p == 0);
        }
    }
  }
}
