#include "genus4/hassewitt.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>

namespace genus4 {

namespace {

constexpr std::array<std::array<int, 4>, 4> kBasisTuple = {{
    {2, 1, 1, 1}, {1, 2, 1, 1}, {1, 1, 2, 1}, {1, 1, 1, 2}}};

// Precomputed convolution index pairs for the 16 extracted coefficients of
// A^2 where A = (FG)^{(p-1)/2}: entry (i, j) reads the monomial p*t_j - t_i.
struct TargetTable {
  int half_deg = 0;  // 5(p-1)/2
  std::array<std::vector<std::pair<uint32_t, uint32_t>>, 16> pairs;
};

const TargetTable& target_table(uint32_t p) {
  static std::mutex mu;
  static std::map<uint32_t, TargetTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  TargetTable tb;
  tb.half_deg = 5 * (p - 1) / 2;
  const auto& half = monomials_of_degree(tb.half_deg);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::array<int, 4> target;
      int total = 0;
      for (int v = 0; v < 4; ++v) {
        target[v] = static_cast<int>(p) * kBasisTuple[j][v] - kBasisTuple[i][v];
        total += target[v];
      }
      assert(total == 5 * static_cast<int>(p - 1));
      auto& out = tb.pairs[static_cast<size_t>(i) * 4 + j];
      for (uint32_t r1 = 0; r1 < half.size(); ++r1) {
        const auto& e1 = half[r1].e;
        Mono4 m2;
        bool ok = true;
        for (int v = 0; v < 4; ++v) {
          int rest = target[v] - e1[v];
          if (rest < 0) {
            ok = false;
            break;
          }
          m2.e[v] = static_cast<uint16_t>(rest);
        }
        if (ok) out.emplace_back(r1, mono_rank(m2));
      }
    }
  return cache.emplace(p, std::move(tb)).first->second;
}

// raw dense block helpers; coefficients stay < p on entry, products are
// accumulated unreduced (bounded by 2 * |block| * (p-1)^2 < 2^32) and folded
// once per stage
void reduce_block(std::vector<uint32_t>& v, uint32_t p) {
  for (auto& x : v) x %= p;
}

void square_into(std::vector<uint32_t>& out, const std::vector<uint32_t>& a, int adeg,
                 uint32_t p) {
  const auto& ms = monomials_of_degree(adeg);
  const int dout = 2 * adeg;
  const auto& lut = rank_lut_flat(dout);
  const size_t stride = dout + 1;
  out.assign(binom(dout + 3, 3), 0);
  for (uint32_t r1 = 0; r1 < a.size(); ++r1) {
    if (!a[r1]) continue;
    const auto& e1 = ms[r1].e;
    const uint32_t c1 = a[r1];
    out[lut[(2 * e1[0] * stride + 2 * e1[1]) * stride + 2 * e1[2]]] += c1 * c1;
    const uint32_t c1x2 = 2 * c1;
    for (uint32_t r2 = r1 + 1; r2 < a.size(); ++r2) {
      if (!a[r2]) continue;
      const auto& e2 = ms[r2].e;
      out[lut[((e1[0] + e2[0]) * stride + e1[1] + e2[1]) * stride + e1[2] + e2[2]]] +=
          c1x2 * a[r2];
    }
  }
  reduce_block(out, p);
}

void mul_into(std::vector<uint32_t>& out, const std::vector<uint32_t>& a, int adeg,
              const std::vector<uint32_t>& b, int bdeg, uint32_t p) {
  const auto& ma = monomials_of_degree(adeg);
  const auto& mb = monomials_of_degree(bdeg);
  const int dout = adeg + bdeg;
  const auto& lut = rank_lut_flat(dout);
  const size_t stride = dout + 1;
  out.assign(binom(dout + 3, 3), 0);
  for (uint32_t r2 = 0; r2 < b.size(); ++r2) {
    if (!b[r2]) continue;
    const auto& e2 = mb[r2].e;
    const uint32_t c2 = b[r2];
    for (uint32_t r1 = 0; r1 < a.size(); ++r1) {
      if (!a[r1]) continue;
      const auto& e1 = ma[r1].e;
      out[lut[((e1[0] + e2[0]) * stride + e1[1] + e2[1]) * stride + e1[2] + e2[2]]] +=
          a[r1] * c2;
    }
  }
  reduce_block(out, p);
}

}  // namespace

QuadricTerms quadric_terms(const Poly4& F) {
  if (F.degree() != 2) throw std::invalid_argument("quadric_terms: degree must be 2");
  QuadricTerms q;
  q.p = F.p();
  const auto& ms = monomials_of_degree(2);
  for (uint32_t r = 0; r < F.coeffs().size(); ++r) {
    if (!F.coeffs()[r]) continue;
    if (q.n == 4) throw std::invalid_argument("quadric_terms: more than 4 terms");
    q.t[q.n++] = {ms[r], F.coeffs()[r]};
  }
  if (q.n == 0) throw std::invalid_argument("quadric_terms: zero quadric");
  return q;
}

HWMatrix hasse_witt_vec(const QuadricTerms& F, const CubicVector& g, HWWorkspace& ws) {
  const uint32_t p = F.p;
  const auto& cubics = cubic_monomials();
  // FG, degree 5 (56 coefficients)
  ws.fg.assign(56, 0);
  for (int t = 0; t < F.n; ++t) {
    const auto& [mf, cf] = F.t[t];
    for (int i = 0; i < 20; ++i) {
      if (!g[i]) continue;
      Mono4 s;
      for (int v = 0; v < 4; ++v) s.e[v] = static_cast<uint16_t>(mf.e[v] + cubics[i].e[v]);
      ws.fg[mono_rank(s)] += cf * g[i] % p;
    }
  }
  reduce_block(ws.fg, p);

  // A = (FG)^{(p-1)/2}
  const std::vector<uint32_t>* A = nullptr;
  int adeg = 0;
  switch (p) {
    case 3:
      A = &ws.fg;
      adeg = 5;
      break;
    case 5:
      square_into(ws.b1, ws.fg, 5, p);
      A = &ws.b1;
      adeg = 10;
      break;
    case 7:
      square_into(ws.b1, ws.fg, 5, p);
      mul_into(ws.a, ws.b1, 10, ws.fg, 5, p);
      A = &ws.a;
      adeg = 15;
      break;
    case 11:
      square_into(ws.b1, ws.fg, 5, p);
      square_into(ws.b2, ws.b1, 10, p);
      mul_into(ws.a, ws.b2, 20, ws.fg, 5, p);
      A = &ws.a;
      adeg = 25;
      break;
    default: {
      // general odd p: full dense power
      square_into(ws.b1, ws.fg, 5, p);
      std::vector<uint32_t>* cur = &ws.b1;
      std::vector<uint32_t>* nxt = &ws.b2;
      int d = 10;
      for (uint32_t k = 2; k < (p - 1) / 2; ++k) {
        mul_into(*nxt, *cur, d, ws.fg, 5, p);
        std::swap(cur, nxt);
        d += 5;
      }
      A = cur;
      adeg = d;
    }
  }
  (void)adeg;

  const TargetTable& tb = target_table(p);
  HWMatrix h;
  h.p = p;
  for (int k = 0; k < 16; ++k) {
    uint64_t acc = 0;
    for (const auto& [r1, r2] : tb.pairs[k]) acc += uint64_t((*A)[r1]) * (*A)[r2];
    h.m[k] = static_cast<uint32_t>(acc % p);
  }
  return h;
}

HWMatrix hasse_witt(const Poly4& F, const Poly4& G, HWWorkspace& ws) {
  if (F.degree() != 2 || G.degree() != 3)
    throw std::invalid_argument("hasse_witt: degrees must be (2, 3)");
  if (F.p() != G.p()) throw std::invalid_argument("hasse_witt: prime mismatch");
  if (F.is_zero() || G.is_zero()) throw std::invalid_argument("hasse_witt: zero input");
  return hasse_witt_vec(quadric_terms(F), cubic_encode(G), ws);
}

HWMatrix hasse_witt(const Poly4& F, const Poly4& G) {
  HWWorkspace ws;
  return hasse_witt(F, G, ws);
}

Mat4 mat_mul(uint32_t p, const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      uint64_t s = 0;
      for (int k = 0; k < 4; ++k) s += uint64_t(a[i * 4 + k]) * b[k * 4 + j];
      c[i * 4 + j] = static_cast<uint32_t>(s % p);
    }
  return c;
}

Mat4 mat_pow(uint32_t p, Mat4 a, uint32_t n) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) r[i * 4 + i] = 1;
  while (n) {
    if (n & 1) r = mat_mul(p, r, a);
    a = mat_mul(p, a, a);
    n >>= 1;
  }
  return r;
}

Mat4 mat_transpose(const Mat4& a) {
  Mat4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[j * 4 + i] = a[i * 4 + j];
  return t;
}

int mat_rank(uint32_t p, Mat4 a) {
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int r = rank; r < 4; ++r)
      if (a[r * 4 + col]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < 4; ++j) std::swap(a[rank * 4 + j], a[piv * 4 + j]);
    uint32_t inv = mod_inverse(a[rank * 4 + col], p);
    for (int j = 0; j < 4; ++j)
      a[rank * 4 + j] = static_cast<uint32_t>(uint64_t(a[rank * 4 + j]) * inv % p);
    for (int r = 0; r < 4; ++r) {
      if (r == rank || !a[r * 4 + col]) continue;
      uint32_t f = a[r * 4 + col];
      for (int j = 0; j < 4; ++j)
        a[r * 4 + j] =
            static_cast<uint32_t>((a[r * 4 + j] + uint64_t(p - f) * a[rank * 4 + j]) % p);
    }
    ++rank;
  }
  return rank;
}

bool mat_invertible(uint32_t p, const Mat4& a) { return mat_rank(p, a) == 4; }

std::vector<std::array<uint32_t, 4>> kernel_basis(uint32_t p, const Mat4& m) {
  Mat4 a = m;
  std::array<int, 4> pivot_col = {-1, -1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int r = rank; r < 4; ++r)
      if (a[r * 4 + col]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < 4; ++j) std::swap(a[rank * 4 + j], a[piv * 4 + j]);
    uint32_t inv = mod_inverse(a[rank * 4 + col], p);
    for (int j = 0; j < 4; ++j)
      a[rank * 4 + j] = static_cast<uint32_t>(uint64_t(a[rank * 4 + j]) * inv % p);
    for (int r = 0; r < 4; ++r) {
      if (r == rank || !a[r * 4 + col]) continue;
      uint32_t f = a[r * 4 + col];
      for (int j = 0; j < 4; ++j)
        a[r * 4 + j] =
            static_cast<uint32_t>((a[r * 4 + j] + uint64_t(p - f) * a[rank * 4 + j]) % p);
    }
    pivot_col[rank] = col;
    ++rank;
  }
  std::vector<std::array<uint32_t, 4>> basis;
  for (int col = 0; col < 4; ++col) {
    bool is_pivot = false;
    for (int r = 0; r < rank; ++r)
      if (pivot_col[r] == col) is_pivot = true;
    if (is_pivot) continue;
    std::array<uint32_t, 4> v{};
    v[col] = 1;
    for (int r = 0; r < rank; ++r) {
      uint32_t c = a[r * 4 + col];
      if (c) v[pivot_col[r]] = p - c;
    }
    basis.push_back(v);
  }
  return basis;
}

int a_number(const HWMatrix& h) { return 4 - mat_rank(h.p, h.m); }

int p_rank(const HWMatrix& h) { return mat_rank(h.p, mat_pow(h.p, h.m, 4)); }

std::array<uint32_t, 5> char_poly(const HWMatrix& h) {
  const uint32_t p = h.p;
  // det(xI - H) expanded over the 24 permutations; entries are linear in x
  std::array<uint32_t, 5> acc{};
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inv;
    // product of (delta * x - H[i][perm[i]])
    std::array<uint32_t, 5> prod{};
    prod[0] = 1;
    int deg = 0;
    for (int i = 0; i < 4; ++i) {
      uint32_t c0 = (p - h.at(i, perm[i]) % p) % p;  // constant part
      uint32_t c1 = (perm[i] == i) ? 1u : 0u;
      std::array<uint32_t, 5> nxt{};
      for (int k = 0; k <= deg; ++k) {
        nxt[k] = static_cast<uint32_t>((nxt[k] + uint64_t(prod[k]) * c0) % p);
        if (c1) nxt[k + 1] = static_cast<uint32_t>((nxt[k + 1] + uint64_t(prod[k])) % p);
      }
      prod = nxt;
      ++deg;
    }
    for (int k = 0; k <= 4; ++k) {
      if (inv % 2 == 0)
        acc[k] = (acc[k] + prod[k]) % p;
      else
        acc[k] = (acc[k] + p - prod[k]) % p;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

Mat4 cartier_manin(const HWMatrix& h) { return mat_transpose(h.m); }

InvariantRecord invariants(const HWMatrix& h) {
  InvariantRecord r;
  r.a = a_number(h);
  r.f = p_rank(h);
  r.h = char_poly(h);
  return r;
}

}  // namespace genus4
