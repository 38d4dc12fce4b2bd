#include "genus4/isoclass.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace genus4 {

namespace {

// Gram matrix of the case quadric, A[i][j] with F(v) = v^T A v
std::array<uint32_t, 16> gram(CurveCase c, uint32_t p) {
  std::array<uint32_t, 16> a{};
  switch (quadric_kind(c)) {
    case 0:  // 2yw + z^2
      a[1 * 4 + 3] = 1;
      a[3 * 4 + 1] = 1;
      a[2 * 4 + 2] = 1;
      break;
    case 1:  // 2xw + 2yz
      a[0 * 4 + 3] = 1;
      a[3 * 4 + 0] = 1;
      a[1 * 4 + 2] = 1;
      a[2 * 4 + 1] = 1;
      break;
    case 2:  // 2xw + y^2 - eps z^2
      a[0 * 4 + 3] = 1;
      a[3 * 4 + 0] = 1;
      a[1 * 4 + 1] = 1;
      a[2 * 4 + 2] = p - case_epsilon(p);
      break;
  }
  return a;
}

uint32_t bilinear(uint32_t p, const std::array<uint32_t, 16>& a,
                  const std::array<uint32_t, 4>& u, const std::array<uint32_t, 4>& v) {
  uint64_t s = 0;
  for (int i = 0; i < 4; ++i) {
    if (!u[i]) continue;
    uint64_t row = 0;
    for (int j = 0; j < 4; ++j) row += uint64_t(a[i * 4 + j]) * v[j];
    s += u[i] * (row % p);
  }
  return static_cast<uint32_t>(s % p);
}

// incremental row echelon over F_p used for the independence pruning
struct Echelon {
  uint32_t p;
  std::vector<std::array<uint32_t, 4>> rows;
  std::vector<int> pivots;
  bool absorbs(const std::array<uint32_t, 4>& v) const {
    std::array<uint32_t, 4> r = v;
    for (size_t k = 0; k < rows.size(); ++k) {
      uint32_t c = r[pivots[k]];
      if (!c) continue;
      for (int i = 0; i < 4; ++i)
        r[i] = static_cast<uint32_t>((r[i] + uint64_t(p - c) * rows[k][i]) % p);
    }
    for (int i = 0; i < 4; ++i)
      if (r[i]) return false;
    return true;
  }
  void add(const std::array<uint32_t, 4>& v) {
    std::array<uint32_t, 4> r = v;
    for (size_t k = 0; k < rows.size(); ++k) {
      uint32_t c = r[pivots[k]];
      if (!c) continue;
      for (int i = 0; i < 4; ++i)
        r[i] = static_cast<uint32_t>((r[i] + uint64_t(p - c) * rows[k][i]) % p);
    }
    int piv = -1;
    for (int i = 0; i < 4; ++i)
      if (r[i]) {
        piv = i;
        break;
      }
    uint32_t inv = mod_inverse(r[piv], p);
    for (int i = 0; i < 4; ++i) r[i] = static_cast<uint32_t>(uint64_t(r[i]) * inv % p);
    rows.push_back(r);
    pivots.push_back(piv);
  }
};

void backtrack_columns(uint32_t p, const std::array<uint32_t, 16>& a, uint32_t lambda,
                       int col, std::array<std::array<uint32_t, 4>, 4>& cols,
                       Echelon& ech, std::vector<Similitude>& out) {
  if (col == 4) {
    Similitude s;
    s.lambda = lambda;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s.m[i * 4 + j] = cols[j][i];
    out.push_back(s);
    return;
  }
  const uint64_t total = uint64_t(p) * p * p * p;
  for (uint64_t code = 1; code < total; ++code) {
    std::array<uint32_t, 4> v{};
    uint64_t r = code;
    for (int i = 0; i < 4; ++i) {
      v[i] = static_cast<uint32_t>(r % p);
      r /= p;
    }
    // Gram constraints against the fixed columns, then the new diagonal
    bool ok = true;
    for (int i = 0; i < col && ok; ++i) {
      uint32_t want = static_cast<uint32_t>(uint64_t(lambda) * a[i * 4 + col] % p);
      if (bilinear(p, a, cols[i], v) != want) ok = false;
    }
    if (!ok) continue;
    if (bilinear(p, a, v, v) != uint64_t(lambda) * a[col * 4 + col] % p) continue;
    if (ech.absorbs(v)) continue;
    ech.add(v);
    cols[col] = v;
    backtrack_columns(p, a, lambda, col + 1, cols, ech, out);
    ech.rows.pop_back();
    ech.pivots.pop_back();
  }
}

// cube-coset scalar representatives: rescaling G by a cube is already
// realized by a scalar similitude
std::vector<uint32_t> scalar_reps(uint32_t p) {
  if ((p - 1) % 3 != 0) return {1};
  for (uint32_t c = 2; c < p; ++c) {
    if (mod_pow(c, (p - 1) / 3, p) != 1) {
      return {1, c, static_cast<uint32_t>(uint64_t(c) * c % p)};
    }
  }
  return {1};
}

// reduced rows of span{x F, y F, z F, w F} with graded-lex pivots
struct ModFReducer {
  std::vector<CubicVector> rows;
  std::vector<int> pivots;
  uint32_t p;

  ModFReducer(CurveCase c, uint32_t p_in) : p(p_in) {
    Poly4 F = quadric_of(c, p);
    std::vector<CubicVector> raw;
    for (int v = 0; v < 4; ++v) {
      Mono4 m;
      m.e[v] = 1;
      Poly4 xv = Poly4::from_terms(p, 1, {{m, 1}});
      raw.push_back(cubic_encode(xv.mul(F)));
    }
    for (auto& r : raw) {
      for (size_t k = 0; k < rows.size(); ++k) {
        uint32_t c2 = r[pivots[k]];
        if (!c2) continue;
        for (int i = 0; i < 20; ++i)
          r[i] = static_cast<uint32_t>((r[i] + uint64_t(p - c2) * rows[k][i]) % p);
      }
      int piv = -1;
      for (int i = 0; i < 20; ++i)
        if (r[i]) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      uint32_t inv = mod_inverse(r[piv], p);
      for (int i = 0; i < 20; ++i) r[i] = static_cast<uint32_t>(uint64_t(r[i]) * inv % p);
      // back-substitute into earlier rows to keep a reduced basis
      for (size_t k = 0; k < rows.size(); ++k) {
        uint32_t c2 = rows[k][piv];
        if (!c2) continue;
        for (int i = 0; i < 20; ++i)
          rows[k][i] =
              static_cast<uint32_t>((rows[k][i] + uint64_t(p - c2) * r[i]) % p);
      }
      rows.push_back(r);
      pivots.push_back(piv);
    }
  }

  void reduce(CubicVector& v) const {
    for (size_t k = 0; k < rows.size(); ++k) {
      uint32_t c = v[pivots[k]];
      if (!c) continue;
      for (int i = 0; i < 20; ++i)
        v[i] = static_cast<uint32_t>((v[i] + uint64_t(p - c) * rows[k][i]) % p);
    }
  }
};

const ModFReducer& reducer_for(CurveCase c, uint32_t p) {
  static std::mutex mu;
  static std::vector<std::tuple<int, uint32_t, ModFReducer>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (auto& [kind, pp, red] : cache)
    if (kind == quadric_kind(c) && pp == p) return red;
  cache.emplace_back(quadric_kind(c), p, ModFReducer(c, p));
  return std::get<2>(cache.back());
}

// transform a cubic vector by a similitude: coefficients of G(M x)
struct CubicTransformer {
  uint32_t p;
  // quadratic monomial products of pairs of image linear forms, then times a
  // third form, expanded monomial by monomial
  void apply(const std::array<uint32_t, 16>& m, const CubicVector& g, CubicVector& out) const {
    const auto& cubics = cubic_monomials();
    const auto& quads = monomials_of_degree(2);
    const auto& lut3 = rank_lut_flat(3);
    // rows of the substitution: variable v pulls back to sum_j m[v][j] x_j
    uint32_t l[4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) l[i][j] = m[i * 4 + j] % p;
    // pairwise products as dense degree-2 blocks
    uint32_t q[4][4][10];
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b) {
        uint32_t acc[10] = {0};
        for (int i = 0; i < 4; ++i) {
          if (!l[a][i]) continue;
          for (int j = 0; j < 4; ++j) {
            if (!l[b][j]) continue;
            Mono4 s;
            s.e[i] += 1;
            s.e[j] += 1;
            acc[mono_rank(s)] += l[a][i] * l[b][j] % p;
          }
        }
        for (int k = 0; k < 10; ++k) {
          q[a][b][k] = acc[k] % p;
          q[b][a][k] = q[a][b][k];
        }
      }
    out.fill(0);
    for (int t = 0; t < 20; ++t) {
      if (!g[t]) continue;
      // split the monomial into three variables v1 <= v2 <= v3
      int vars[3], n = 0;
      for (int v = 0; v < 4; ++v)
        for (int rep = 0; rep < cubics[t].e[v]; ++rep) vars[n++] = v;
      const uint32_t* quad = q[vars[0]][vars[1]];
      const uint32_t* lin = l[vars[2]];
      for (uint32_t r = 0; r < 10; ++r) {
        if (!quad[r]) continue;
        const auto& eq = quads[r].e;
        for (int j = 0; j < 4; ++j) {
          if (!lin[j]) continue;
          uint32_t idx = lut3[((eq[0] + (j == 0)) * 4u + eq[1] + (j == 1)) * 4u + eq[2] +
                              (j == 2)];
          out[idx] = static_cast<uint32_t>((out[idx] + uint64_t(g[t]) * quad[r] % p * lin[j]) % p);
        }
      }
    }
  }
};

bool vec_less(const CubicVector& a, const CubicVector& b) {
  for (int i = 0; i < 20; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

int quadric_kind(CurveCase c) {
  switch (c) {
    case CurveCase::D: return 0;
    case CurveCase::N1i:
    case CurveCase::N1ii: return 1;
    case CurveCase::N2: return 2;
  }
  return -1;
}

std::vector<Similitude> similitude_group(CurveCase c, uint32_t p) {
  const bool degenerate = quadric_kind(c) == 0;
  if ((degenerate && p > 7) || (!degenerate && p > 5))
    throw std::invalid_argument("similitude_group: unsupported p for full enumeration");
  auto a = gram(c, p);
  std::vector<Similitude> out;
  for (uint32_t lambda = 1; lambda < p; ++lambda) {
    std::array<std::array<uint32_t, 4>, 4> cols{};
    Echelon ech{p, {}, {}};
    backtrack_columns(p, a, lambda, 0, cols, ech, out);
  }
  return out;
}

CubicVector cubic_normal_form_mod_F(const CubicVector& g, CurveCase c, uint32_t p) {
  CubicVector v = g;
  for (auto& x : v) x %= p;
  reducer_for(c, p).reduce(v);
  return v;
}

CubicVector canonical_form(const CubicVector& g, CurveCase c, uint32_t p,
                           const std::vector<Similitude>& group) {
  const ModFReducer& red = reducer_for(c, p);
  const auto scalars = scalar_reps(p);
  CubicTransformer tr{p};
  CubicVector best{};
  bool have = false;
  CubicVector img, scaled;
  for (const auto& sim : group) {
    tr.apply(sim.m, g, img);
    for (uint32_t s : scalars) {
      for (int i = 0; i < 20; ++i)
        scaled[i] = static_cast<uint32_t>(uint64_t(s) * img[i] % p);
      red.reduce(scaled);
      if (!have || vec_less(scaled, best)) {
        best = scaled;
        have = true;
      }
    }
  }
  if (!have) throw std::invalid_argument("canonical_form: empty group");
  return best;
}

ClassPartition classify(const std::vector<std::pair<CurveCase, CubicVector>>& curves,
                        uint32_t p, int workers) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  ClassPartition out;

  for (int kind = 0; kind <= 2; ++kind) {
    std::vector<size_t> items;
    for (size_t i = 0; i < curves.size(); ++i)
      if (quadric_kind(curves[i].first) == kind) items.push_back(i);
    if (items.empty()) continue;
    const CurveCase rep_case = kind == 0   ? CurveCase::D
                               : kind == 1 ? CurveCase::N1i
                                           : CurveCase::N2;
    const auto group = similitude_group(rep_case, p);
    const ModFReducer& red = reducer_for(rep_case, p);
    const auto scalars = scalar_reps(p);

    // normal forms of the inputs, sorted for orbit membership lookups
    std::vector<std::pair<CubicVector, size_t>> nf(items.size());
    for (size_t k = 0; k < items.size(); ++k) {
      CubicVector v = curves[items[k]].second;
      for (auto& x : v) x %= p;
      red.reduce(v);
      nf[k] = {v, items[k]};
    }
    std::sort(nf.begin(), nf.end(), [](const auto& a, const auto& b) {
      return vec_less(a.first, b.first) ||
             (a.first == b.first && a.second < b.second);
    });

    std::vector<bool> classified(nf.size(), false);
    for (size_t seed = 0; seed < nf.size(); ++seed) {
      if (classified[seed]) continue;
      const CubicVector seed_vec = curves[nf[seed].second].second;

      std::mutex mu;
      CubicVector best{};
      bool have = false;
      std::vector<size_t> members;  // positions in nf
      std::atomic<size_t> next{0};
      const size_t chunk = 4096;

      auto worker = [&]() {
        CubicTransformer tr{p};
        CubicVector img, scaled;
        CubicVector local_best{};
        bool local_have = false;
        std::vector<size_t> local_members;
        for (;;) {
          size_t start = next.fetch_add(chunk);
          if (start >= group.size()) break;
          size_t stop = std::min(group.size(), start + chunk);
          for (size_t gi = start; gi < stop; ++gi) {
            tr.apply(group[gi].m, seed_vec, img);
            for (uint32_t s : scalars) {
              for (int i = 0; i < 20; ++i)
                scaled[i] = static_cast<uint32_t>(uint64_t(s) * img[i] % p);
              red.reduce(scaled);
              if (!local_have || vec_less(scaled, local_best)) {
                local_best = scaled;
                local_have = true;
              }
              // members of the same class sit in the orbit
              auto it = std::lower_bound(
                  nf.begin(), nf.end(), scaled,
                  [](const auto& a, const CubicVector& b) { return vec_less(a.first, b); });
              while (it != nf.end() && it->first == scaled) {
                local_members.push_back(static_cast<size_t>(it - nf.begin()));
                ++it;
              }
            }
          }
        }
        std::lock_guard<std::mutex> lock(mu);
        if (local_have && (!have || vec_less(local_best, best))) {
          best = local_best;
          have = true;
        }
        members.insert(members.end(), local_members.begin(), local_members.end());
      };

      std::vector<std::thread> pool;
      for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());

      ClassPartition::Cls cls;
      cls.class_id = best;
      bool first = true;
      for (size_t pos : members) {
        classified[pos] = true;
        size_t input_idx = nf[pos].second;
        cls.members.push_back(input_idx);
        if (first) {
          cls.representative = input_idx;
          cls.cse = curves[input_idx].first;
          first = false;
        } else {
          if (curves[input_idx].first != cls.cse) cls.mixed_cases = true;
          if (vec_less(curves[input_idx].second, curves[cls.representative].second))
            cls.representative = input_idx;
        }
      }
      if (cls.members.empty())
        throw std::logic_error("classify: seed not contained in its own orbit");
      std::sort(cls.members.begin(), cls.members.end());
      out.classes.push_back(std::move(cls));
    }
  }
  return out;
}

}  // namespace genus4
