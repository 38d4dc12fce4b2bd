#include "genus4/standard_forms.hpp"

#include <array>
#include <stdexcept>

namespace genus4 {

const char* case_name(CurveCase c) {
  switch (c) {
    case CurveCase::D: return "D";
    case CurveCase::N1i: return "N1i";
    case CurveCase::N1ii: return "N1ii";
    case CurveCase::N2: return "N2";
  }
  return "?";
}

std::optional<CurveCase> case_from_name(const std::string& s) {
  for (CurveCase c : kAllCases)
    if (s == case_name(c)) return c;
  return std::nullopt;
}

uint32_t case_epsilon(uint32_t p) { return smallest_nonresidue(p); }

namespace {

// graded-lex ranks of the 20 cubic monomials (x^3 first)
enum CubicSlot : int {
  X3 = 0, X2Y = 1, X2Z = 2, X2W = 3, XY2 = 4, XYZ = 5, XYW = 6, XZ2 = 7, XZW = 8,
  XW2 = 9, Y3 = 10, Y2Z = 11, Y2W = 12, YZ2 = 13, YZW = 14, YW2 = 15, Z3 = 16,
  Z2W = 17, ZW2 = 18, W3 = 19
};

// Digits of the lexicographic tuple enumeration.  RBlock5 covers the jointly
// constrained (a1..a5) block of case D: all-zero, or first nonzero entry 1.
enum class Digit { Free, NonZero, Binary, SquareClass, RBlock5, PairNZ };

struct CaseLayout {
  std::vector<Digit> digits;
  int nparams;  // expanded named-coefficient count
};

const CaseLayout& layout(CurveCase c) {
  static const CaseLayout d{{Digit::NonZero, Digit::RBlock5, Digit::NonZero, Digit::Free,
                             Digit::Free, Digit::Free, Digit::Binary, Digit::Binary},
                            12};
  static const CaseLayout n1i{{Digit::NonZero, Digit::NonZero, Digit::Free, Digit::Free,
                               Digit::SquareClass, Digit::Free, Digit::Free, Digit::Free,
                               Digit::Binary, Digit::Free, Digit::Free, Digit::Free},
                              12};
  static const CaseLayout n1ii{{Digit::NonZero, Digit::NonZero, Digit::Free, Digit::Binary,
                                Digit::SquareClass, Digit::Free, Digit::Free, Digit::Binary,
                                Digit::Free, Digit::Free, Digit::Free},
                               11};
  static const CaseLayout n2{{Digit::PairNZ, Digit::Free, Digit::Binary, Digit::Free,
                              Digit::Free, Digit::Free, Digit::Free, Digit::Binary,
                              Digit::Free, Digit::Free, Digit::Free},
                             12};
  switch (c) {
    case CurveCase::D: return d;
    case CurveCase::N1i: return n1i;
    case CurveCase::N1ii: return n1ii;
    case CurveCase::N2: return n2;
  }
  throw std::logic_error("layout");
}

uint64_t rblock5_count(uint32_t p, int k) {
  // valid k-suffixes: all-zero or first nonzero equal to 1
  uint64_t n = 1, pk = 1;
  for (int i = 0; i < k; ++i) {
    n += pk;
    pk *= p;
  }
  return n;
}

uint64_t digit_size(Digit d, uint32_t p) {
  switch (d) {
    case Digit::Free: return p;
    case Digit::NonZero: return p - 1;
    case Digit::Binary: return 2;
    case Digit::SquareClass: return 3;
    case Digit::RBlock5: return rblock5_count(p, 5);
    case Digit::PairNZ: return uint64_t(p) * p - 1;
  }
  throw std::logic_error("digit_size");
}

// appends the named coefficients for one digit to `out`
void digit_unrank(Digit d, uint32_t p, uint64_t idx, std::vector<uint32_t>& out) {
  switch (d) {
    case Digit::Free:
      out.push_back(static_cast<uint32_t>(idx));
      return;
    case Digit::NonZero:
      out.push_back(static_cast<uint32_t>(idx + 1));
      return;
    case Digit::Binary:
      out.push_back(static_cast<uint32_t>(idx));
      return;
    case Digit::SquareClass:
      out.push_back(idx == 2 ? case_epsilon(p) : static_cast<uint32_t>(idx));
      return;
    case Digit::PairNZ: {
      uint64_t v = idx + 1;
      out.push_back(static_cast<uint32_t>(v / p));
      out.push_back(static_cast<uint32_t>(v % p));
      return;
    }
    case Digit::RBlock5: {
      std::array<uint32_t, 5> r{};
      int pos = 0;
      for (int k = 5; k >= 1; --k) {
        uint64_t zero_branch = rblock5_count(p, k - 1);
        if (idx < zero_branch) {
          r[pos++] = 0;
          continue;
        }
        // leading 1, remaining k-1 positions free in base p, msb first
        idx -= zero_branch;
        r[pos++] = 1;
        uint64_t pk = 1;
        for (int i = 0; i < k - 1; ++i) pk *= p;
        for (int i = 0; i < k - 1; ++i) {
          pk /= p;
          r[pos++] = static_cast<uint32_t>(idx / pk);
          idx %= pk;
        }
        idx = 0;
        break;
      }
      for (uint32_t v : r) out.push_back(v);
      return;
    }
  }
  throw std::logic_error("digit_unrank");
}

// consumes named coefficients for one digit from params[pos...]; returns rank
uint64_t digit_rank(Digit d, uint32_t p, const std::vector<uint32_t>& params, size_t& pos) {
  switch (d) {
    case Digit::Free: {
      uint32_t v = params[pos++];
      if (v >= p) throw std::invalid_argument("coefficient out of range");
      return v;
    }
    case Digit::NonZero: {
      uint32_t v = params[pos++];
      if (v == 0 || v >= p) throw std::invalid_argument("coefficient must be nonzero");
      return v - 1;
    }
    case Digit::Binary: {
      uint32_t v = params[pos++];
      if (v > 1) throw std::invalid_argument("coefficient must be 0 or 1");
      return v;
    }
    case Digit::SquareClass: {
      uint32_t v = params[pos++];
      if (v == 0 || v == 1) return v;
      if (v == case_epsilon(p)) return 2;
      throw std::invalid_argument("coefficient must be 0, 1 or the fixed non-square");
    }
    case Digit::PairNZ: {
      uint32_t a = params[pos++], b = params[pos++];
      if (a >= p || b >= p || (a == 0 && b == 0))
        throw std::invalid_argument("pair must be nonzero");
      return uint64_t(a) * p + b - 1;
    }
    case Digit::RBlock5: {
      std::array<uint32_t, 5> r{};
      for (int i = 0; i < 5; ++i) {
        r[i] = params[pos++];
        if (r[i] >= p) throw std::invalid_argument("coefficient out of range");
      }
      int first = -1;
      for (int i = 0; i < 5; ++i)
        if (r[i]) {
          first = i;
          break;
        }
      if (first >= 0 && r[first] != 1)
        throw std::invalid_argument("leading coefficient of the x-block must be 1");
      if (first < 0) return 0;
      // rank: skip all tuples with more leading zeros, then base-p suffix
      uint64_t idx = rblock5_count(p, 5 - first - 1);
      uint64_t suffix = 0;
      for (int i = first + 1; i < 5; ++i) suffix = suffix * p + r[i];
      return idx + suffix;
    }
  }
  throw std::logic_error("digit_rank");
}

}  // namespace

Poly4 quadric_of(CurveCase c, uint32_t p) {
  auto mono = [](int a, int b, int cc, int d) {
    Mono4 m;
    m.e = {uint16_t(a), uint16_t(b), uint16_t(cc), uint16_t(d)};
    return m;
  };
  switch (c) {
    case CurveCase::D:
      return Poly4::from_terms(p, 2, {{mono(0, 1, 0, 1), 2}, {mono(0, 0, 2, 0), 1}});
    case CurveCase::N1i:
    case CurveCase::N1ii:
      return Poly4::from_terms(p, 2, {{mono(1, 0, 0, 1), 2}, {mono(0, 1, 1, 0), 2}});
    case CurveCase::N2: {
      uint32_t eps = case_epsilon(p);
      return Poly4::from_terms(
          p, 2, {{mono(1, 0, 0, 1), 2}, {mono(0, 2, 0, 0), 1}, {mono(0, 0, 2, 0), p - eps}});
    }
  }
  throw std::logic_error("quadric_of");
}

uint64_t case_cardinality(CurveCase c, uint32_t p) {
  uint64_t n = 1;
  for (Digit d : layout(c).digits) n *= digit_size(d, p);
  return n;
}

std::vector<uint32_t> params_from_index(CurveCase c, uint32_t p, uint64_t index) {
  const auto& lay = layout(c);
  if (index >= case_cardinality(c, p)) throw std::invalid_argument("index out of range");
  // mixed radix, first digit most significant
  std::vector<uint64_t> ranks(lay.digits.size());
  for (size_t i = lay.digits.size(); i-- > 0;) {
    uint64_t sz = digit_size(lay.digits[i], p);
    ranks[i] = index % sz;
    index /= sz;
  }
  std::vector<uint32_t> params;
  params.reserve(lay.nparams);
  for (size_t i = 0; i < lay.digits.size(); ++i) digit_unrank(lay.digits[i], p, ranks[i], params);
  return params;
}

uint64_t index_of_params(CurveCase c, uint32_t p, const std::vector<uint32_t>& params) {
  const auto& lay = layout(c);
  size_t pos = 0;
  uint64_t index = 0;
  for (Digit d : lay.digits) {
    index = index * digit_size(d, p) + digit_rank(d, p, params, pos);
  }
  if (pos != params.size()) throw std::invalid_argument("parameter count mismatch");
  return index;
}

void vec_from_params(CurveCase c, uint32_t p, const std::vector<uint32_t>& pr,
                     CubicVector& v) {
  v.fill(0);
  switch (c) {
    case CurveCase::D:
      // a0 x^3 + (a1 y^2 + a2 z^2 + a3 w^2 + a4 yz + a5 zw) x
      // + a6 y^3 + a7 z^3 + a8 w^3 + a9 yz^2 + b1 z^2 w + b2 zw^2
      v[X3] = pr[0];
      v[XY2] = pr[1];
      v[XZ2] = pr[2];
      v[XW2] = pr[3];
      v[XYZ] = pr[4];
      v[XZW] = pr[5];
      v[Y3] = pr[6];
      v[Z3] = pr[7];
      v[W3] = pr[8];
      v[YZ2] = pr[9];
      v[Z2W] = pr[10];
      v[ZW2] = pr[11];
      return;
    case CurveCase::N1i:
      // (a1 y + a2 z) x^2 + a3 yzx + y^3 + a4 z^3 + b1 y^2 z + a5 yz^2
      // + (a6 y^2 + a7 yz + b2 z^2) w + (a8 y + a9 z) w^2 + a10 w^3
      v[X2Y] = pr[0];
      v[X2Z] = pr[1];
      v[XYZ] = pr[2];
      v[Y3] = 1;
      v[Z3] = pr[3];
      v[Y2Z] = pr[4];
      v[YZ2] = pr[5];
      v[Y2W] = pr[6];
      v[YZW] = pr[7];
      v[Z2W] = pr[8];
      v[YW2] = pr[9];
      v[ZW2] = pr[10];
      v[W3] = pr[11];
      return;
    case CurveCase::N1ii:
      // (a1 y + a2 z) x^2 + a3 yzx + b1 y^2 z + b2 yz^2
      // + (a4 y^2 + a5 yz + b3 z^2) w + (a6 y + a7 z) w^2 + a8 w^3
      v[X2Y] = pr[0];
      v[X2Z] = pr[1];
      v[XYZ] = pr[2];
      v[Y2Z] = pr[3];
      v[YZ2] = pr[4];
      v[Y2W] = pr[5];
      v[YZW] = pr[6];
      v[Z2W] = pr[7];
      v[YW2] = pr[8];
      v[ZW2] = pr[9];
      v[W3] = pr[10];
      return;
    case CurveCase::N2: {
      // (a1 y + a2 z) x^2 + a3 (y^2 - eps z^2) x + b1 y(y^2 - eps z^2)
      // + a4 y(y^2 + 3 eps z^2) + a5 z(3 y^2 + eps z^2)
      // + (a6 y^2 + a7 yz + b2 z^2) w + (a8 y + a9 z) w^2 + a10 w^3
      const uint64_t eps = case_epsilon(p);
      const uint32_t a1 = pr[0], a2 = pr[1], a3 = pr[2], b1 = pr[3], a4 = pr[4], a5 = pr[5];
      v[X2Y] = a1;
      v[X2Z] = a2;
      v[XY2] = a3;
      v[XZ2] = static_cast<uint32_t>((p - eps) * a3 % p);
      v[Y3] = (b1 + a4) % p;
      v[YZ2] = static_cast<uint32_t>(((p - eps) * b1 + 3 * eps % p * a4) % p);
      v[Y2Z] = 3 * a5 % p;
      v[Z3] = static_cast<uint32_t>(eps * a5 % p);
      v[Y2W] = pr[6];
      v[YZW] = pr[7];
      v[Z2W] = pr[8];
      v[YW2] = pr[9];
      v[ZW2] = pr[10];
      v[W3] = pr[11];
      return;
    }
  }
  throw std::logic_error("vec_from_params");
}

void cubic_vec_from_index(CurveCase c, uint32_t p, uint64_t index, CubicVector& out) {
  vec_from_params(c, p, params_from_index(c, p, index), out);
}

CurveSpec curve_from_index(CurveCase c, uint32_t p, uint64_t index) {
  CurveSpec s;
  s.cse = c;
  s.p = p;
  s.index = index;
  s.params = params_from_index(c, p, index);
  vec_from_params(c, p, s.params, s.vec);
  s.F = quadric_of(c, p);
  s.G = cubic_decode(p, s.vec);
  return s;
}

CurveSpec curve_from_vec(CurveCase c, uint32_t p, const CubicVector& v) {
  for (uint32_t x : v)
    if (x >= p) throw std::invalid_argument("cubic coefficient out of range");
  std::vector<uint32_t> pr;
  auto zero_slots = [&](std::initializer_list<int> slots) {
    for (int s : slots)
      if (v[s]) throw std::invalid_argument("vector outside the case pattern");
  };
  switch (c) {
    case CurveCase::D:
      zero_slots({X2Y, X2Z, X2W, XYW, Y2Z, Y2W, YZW, YW2});
      pr = {v[X3], v[XY2], v[XZ2], v[XW2], v[XYZ], v[XZW],
            v[Y3], v[Z3],  v[W3],  v[YZ2], v[Z2W], v[ZW2]};
      break;
    case CurveCase::N1i:
      zero_slots({X3, X2W, XY2, XYW, XZ2, XZW, XW2});
      if (v[Y3] != 1) throw std::invalid_argument("vector outside the case pattern");
      pr = {v[X2Y], v[X2Z], v[XYZ], v[Z3],  v[Y2Z], v[YZ2],
            v[Y2W], v[YZW], v[Z2W], v[YW2], v[ZW2], v[W3]};
      break;
    case CurveCase::N1ii:
      zero_slots({X3, X2W, XY2, XYW, XZ2, XZW, XW2, Y3, Z3});
      pr = {v[X2Y], v[X2Z], v[XYZ], v[Y2Z], v[YZ2], v[Y2W],
            v[YZW], v[Z2W], v[YW2], v[ZW2], v[W3]};
      break;
    case CurveCase::N2: {
      zero_slots({X3, X2W, XYW, XZW, XW2});
      const uint32_t eps = case_epsilon(p);
      const uint32_t a3 = v[XY2];
      if (v[XZ2] != uint64_t(p - eps) * a3 % p)
        throw std::invalid_argument("vector outside the case pattern");
      // invert (b1, a4) -> (y^3, yz^2) and a5 -> (y^2 z, z^3)
      const uint32_t einv = mod_inverse(eps, p);
      const uint32_t inv4 = mod_inverse(4 % p, p);
      const uint32_t A = v[Y3];
      const uint32_t B = static_cast<uint32_t>(uint64_t(einv) * v[YZ2] % p);
      const uint32_t a4 = static_cast<uint32_t>(uint64_t(inv4) * ((A + B) % p) % p);
      const uint32_t b1 = (A + p - a4) % p;
      const uint32_t a5 = static_cast<uint32_t>(uint64_t(einv) * v[Z3] % p);
      if (v[Y2Z] != 3 * uint64_t(a5) % p)
        throw std::invalid_argument("vector outside the case pattern");
      pr = {v[X2Y], v[X2Z], a3, b1, a4, a5, v[Y2W], v[YZW], v[Z2W], v[YW2], v[ZW2], v[W3]};
      break;
    }
  }
  CurveSpec s;
  s.cse = c;
  s.p = p;
  s.params = pr;
  s.index = index_of_params(c, p, pr);  // also validates the constraints
  vec_from_params(c, p, pr, s.vec);
  if (s.vec != v) throw std::invalid_argument("vector outside the case pattern");
  s.F = quadric_of(c, p);
  s.G = cubic_decode(p, s.vec);
  return s;
}

uint64_t SplitMix64::next() {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t sample_stream_seed(uint64_t seed, uint64_t draw) {
  SplitMix64 g{seed ^ (0xA0761D6478BD642Full * (draw + 1))};
  return g.next();
}

uint64_t uniform_below(SplitMix64& g, uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    uint64_t x = g.next();
    if (x < limit) return x % n;
  }
}

uint64_t sample_index(CurveCase c, uint32_t p, uint64_t seed, uint64_t draw) {
  SplitMix64 g{sample_stream_seed(seed, draw)};
  return uniform_below(g, case_cardinality(c, p));
}

CurveSpec sample_curve(CurveCase c, uint32_t p, uint64_t seed, uint64_t draw) {
  return curve_from_index(c, p, sample_index(c, p, seed, draw));
}

}  // namespace genus4
