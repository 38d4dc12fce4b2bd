#include "genus4/cartier.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace genus4 {

ProjPoint normalize_point(const Fq& K, const std::array<Elem, 4>& coords) {
  int last = -1;
  for (int i = 3; i >= 0; --i)
    if (!K.is_zero(coords[i])) {
      last = i;
      break;
    }
  if (last < 0) throw std::invalid_argument("normalize_point: zero tuple");
  ProjPoint pt;
  pt.p = K.p();
  pt.e = K.e();
  Elem inv = K.inv(coords[last]);
  for (int i = 0; i < 4; ++i) pt.x[i] = K.mul(coords[i], inv);
  return pt;
}

ProjPoint frobenius_point(const Fq& K, const ProjPoint& pt) {
  ProjPoint out = pt;
  for (int i = 0; i < 4; ++i) out.x[i] = K.frobenius(pt.x[i]);
  return out;  // last nonzero coordinate stays 1
}

uint32_t point_orbit_degree(const Fq& K, const ProjPoint& pt) {
  ProjPoint cur = frobenius_point(K, pt);
  for (uint32_t d = 1; d <= K.e(); ++d) {
    if (cur == pt) return d;
    cur = frobenius_point(K, cur);
  }
  throw IntegrityError("point_orbit_degree: orbit does not close");
}

bool point_less(const Fq& K, const ProjPoint& a, const ProjPoint& b) {
  for (int i = 0; i < 4; ++i) {
    uint64_t ia = K.index_of(a.x[i]), ib = K.index_of(b.x[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

bool point_on_curve(const Fq& K, const ProjPoint& pt, const Poly4& F, const Poly4& G) {
  return K.is_zero(evaluate_proj(F, K, pt.x)) && K.is_zero(evaluate_proj(G, K, pt.x));
}

int baker_bound(uint32_t p, int f) {
  if (f < 0 || f > 3) throw std::invalid_argument("baker_bound: p-rank out of range");
  uint64_t bound = 0, pf = 1;
  for (int i = 0; i < f; ++i) pf *= p;
  bound = (pf - 1) / (p - 1);
  return static_cast<int>(std::min<uint64_t>(6, bound));
}

int CartierReport::type1_point_count() const {
  int n = 0;
  for (const auto& pt : type1) n += pt.degree;
  return n;
}

int CartierReport::type2_point_count() const {
  int n = 0;
  for (const auto& pt : type2) n += pt.degree;
  return n;
}

int CartierReport::type1_mass() const {
  int n = 0;
  for (const auto& pt : type1) n += pt.degree * pt.multiplicity;
  return n;
}

namespace {

// binary forms over F_p: c[i] is the coefficient of u^(deg-i) v^i
struct BForm {
  int deg = -1;  // -1 encodes the zero form
  std::vector<uint32_t> c;
};

BForm bform_zero() { return {}; }

bool bform_is_zero(const BForm& f) {
  if (f.deg < 0) return true;
  for (uint32_t x : f.c)
    if (x) return false;
  return true;
}

BForm bform_mul(const BForm& a, const BForm& b, uint32_t p) {
  if (bform_is_zero(a) || bform_is_zero(b)) return bform_zero();
  BForm r;
  r.deg = a.deg + b.deg;
  r.c.assign(r.deg + 1, 0);
  for (int i = 0; i <= a.deg; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j <= b.deg; ++j)
      r.c[i + j] = static_cast<uint32_t>((r.c[i + j] + uint64_t(a.c[i]) * b.c[j]) % p);
  }
  return r;
}

// coefficient forms of t^j inside a ternary form over (u, v, t)
std::vector<BForm> t_coefficients(const KForm& f) {
  std::vector<BForm> out(f.deg + 1);  // out[k] has degree k, multiplies t^(deg-k)
  for (int k = 0; k <= f.deg; ++k) {
    BForm b;
    b.deg = k;
    b.c.assign(k + 1, 0);
    for (int a = 0; a <= k; ++a) b.c[k - a] = f.c[kform_rank3(a, k - a, f.deg)];
    out[k] = b;
  }
  return out;
}

BForm det_recursive(std::vector<std::vector<BForm>>& m, std::vector<int>& cols, int row,
                    uint32_t p) {
  const int n = static_cast<int>(m.size());
  if (row == n) {
    BForm r;
    r.deg = 0;
    r.c = {1};
    return r;
  }
  BForm acc = bform_zero();
  for (size_t k = 0; k < cols.size(); ++k) {
    int col = cols[k];
    const BForm& entry = m[row][col];
    if (bform_is_zero(entry)) continue;
    cols.erase(cols.begin() + static_cast<long>(k));
    BForm sub = det_recursive(m, cols, row + 1, p);
    cols.insert(cols.begin() + static_cast<long>(k), col);
    if (!bform_is_zero(sub)) {
      BForm term = bform_mul(entry, sub, p);
      if (k % 2) {
        for (auto& x : term.c) x = (p - x) % p;
      }
      if (bform_is_zero(acc)) {
        acc = term;
      } else if (acc.deg == term.deg) {
        for (int i = 0; i <= acc.deg; ++i) acc.c[i] = (acc.c[i] + term.c[i]) % p;
      } else {
        throw IntegrityError("resultant: inhomogeneous determinant");
      }
    }
  }
  return acc;
}

// Res_t of a t-quadric and t-cubic with nonzero constant leading coefficients
BForm resultant_t(const std::vector<BForm>& q, const std::vector<BForm>& c, uint32_t p) {
  // Sylvester matrix, rows = 3 shifts of q, 2 shifts of c
  auto zero = bform_zero();
  std::vector<std::vector<BForm>> m(5, std::vector<BForm>(5, zero));
  for (int s = 0; s < 3; ++s)
    for (int j = 0; j < 3; ++j) m[s][s + j] = q[j];
  for (int s = 0; s < 2; ++s)
    for (int j = 0; j < 4; ++j) m[3 + s][s + j] = c[j];
  std::vector<int> cols = {0, 1, 2, 3, 4};
  return det_recursive(m, cols, 0, p);
}

Elem bform_eval(const BForm& f, const Fq& K, const Elem& u0, const Elem& v0) {
  Elem acc = K.zero();
  if (bform_is_zero(f)) return acc;
  std::vector<Elem> pu(f.deg + 1), pv(f.deg + 1);
  pu[0] = K.one();
  pv[0] = K.one();
  for (int i = 1; i <= f.deg; ++i) {
    pu[i] = K.mul(pu[i - 1], u0);
    pv[i] = K.mul(pv[i - 1], v0);
  }
  for (int i = 0; i <= f.deg; ++i) {
    if (!f.c[i]) continue;
    acc = K.add(acc, K.scale(f.c[i], K.mul(pu[f.deg - i], pv[i])));
  }
  return acc;
}

}  // namespace

std::vector<CartierAnalyzer::SectionPoint> CartierAnalyzer::solve_dim1(
    const std::array<uint32_t, 4>& v, const Poly4& F, const Poly4& G) {
  const Fq& K = fields_.get(F.p(), 1);
  std::array<Elem, 4> coords;
  for (int i = 0; i < 4; ++i) coords[i] = K.from_uint(v[i]);
  ProjPoint pt = normalize_point(K, coords);
  std::vector<SectionPoint> out;
  if (point_on_curve(K, pt, F, G)) out.push_back({pt, 1, 1});
  return out;
}

std::vector<CartierAnalyzer::SectionPoint> CartierAnalyzer::solve_dim2(
    const std::vector<std::array<uint32_t, 4>>& basis, const Poly4& F, const Poly4& G,
    uint32_t max_e) {
  const uint32_t p = F.p();
  KForm fq = restrict_span(F, basis);
  KForm fg = restrict_span(G, basis);
  if (fq.is_zero() && fg.is_zero())
    throw IntegrityError("linear section: line contained in the curve");
  // common projective zeros of the two binary forms
  fpuni::Poly aq(fq.c.rbegin(), fq.c.rend());  // rank2 index d-a -> low-to-high in u
  fpuni::Poly ag(fg.c.rbegin(), fg.c.rend());
  fpuni::normalize(aq);
  fpuni::normalize(ag);
  fpuni::Poly g;
  if (fq.is_zero())
    g = ag;
  else if (fg.is_zero())
    g = aq;
  else
    g = fpuni::gcd_monic(aq, ag, p);
  // infinity root (1:0): both leading u coefficients vanish
  bool inf_common = (fq.is_zero() || fq.c[0] == 0) && (fg.is_zero() || fg.c[0] == 0);

  std::vector<SectionPoint> out;
  auto add_point = [&](const Fq& K, const Elem& u0, const Elem& v0, int degree) {
    std::array<Elem, 4> coords;
    for (int i = 0; i < 4; ++i)
      coords[i] = K.add(K.scale(basis[0][i], u0), K.scale(basis[1][i], v0));
    out.push_back({normalize_point(K, coords), degree, 1});
  };
  if (inf_common) {
    const Fq& K1 = fields_.get(p, 1);
    add_point(K1, K1.one(), K1.zero(), 1);
  }
  if (fpuni::degree(g) >= 1) {
    auto factor_counts = fpuni::exact_degree_factor_counts(g, p, static_cast<int>(max_e));
    for (uint32_t e = 1; e <= max_e; ++e) {
      if (!factor_counts[e]) continue;
      const Fq& K = fields_.get(p, e);
      for (auto& [r, mult] : roots_univariate(std::vector<uint32_t>(g.begin(), g.end()), K)) {
        if (K.orbit_degree(r) != e) continue;
        add_point(K, r, K.one(), static_cast<int>(e));
      }
    }
  }
  return out;
}

namespace {

struct OrbitEntry {
  ProjPoint rep;
  int degree;
  int mult;
};

// inserts one representative per orbit, checking conjugate consistency
bool orbit_insert(std::vector<OrbitEntry>& entries, const Fq& K, const ProjPoint& pt,
                  int degree, int mult, int& mass) {
  ProjPoint rep = pt;
  ProjPoint cur = pt;
  for (int k = 1; k < degree; ++k) {
    cur = frobenius_point(K, cur);
    if (point_less(K, cur, rep)) rep = cur;
  }
  for (auto& en : entries) {
    if (en.rep == rep) {
      if (en.degree != degree || en.mult != mult)
        throw IntegrityError("linear section: conjugates disagree");
      return false;
    }
  }
  entries.push_back({rep, degree, mult});
  mass += degree * mult;
  return true;
}

}  // namespace

std::vector<CartierAnalyzer::SectionPoint> CartierAnalyzer::solve_dim3(
    const std::vector<std::array<uint32_t, 4>>& basis, const Poly4& F, const Poly4& G,
    uint32_t max_e) {
  const uint32_t p = F.p();
  KForm Q = restrict_span(F, basis);
  KForm C = restrict_span(G, basis);
  if (Q.is_zero()) throw IntegrityError("linear section: plane inside the quadric");
  if (C.is_zero()) throw IntegrityError("linear section: plane inside the cubic");

  // candidate projection centers in P^2(F_p), shuffled by the retry seed
  std::vector<std::array<uint32_t, 3>> centers;
  for (int level = 0; level < 3; ++level) {
    uint64_t stratum = 1;
    for (int i = 0; i < level; ++i) stratum *= p;
    for (uint64_t rem = 0; rem < stratum; ++rem) {
      std::array<uint32_t, 3> c{};
      c[level] = 1;
      uint64_t r = rem;
      for (int i = 0; i < level; ++i) {
        c[i] = static_cast<uint32_t>(r % p);
        r /= p;
      }
      centers.push_back(c);
    }
  }
  if (seed_) {
    SplitMix64 rng{seed_};
    for (size_t i = centers.size(); i > 1; --i)
      std::swap(centers[i - 1], centers[uniform_below(rng, i)]);
  }

  auto eval_kform = [&](const KForm& f, const std::array<uint32_t, 3>& at) {
    uint64_t acc = 0;
    for (int a = f.deg; a >= 0; --a)
      for (int b = f.deg - a; b >= 0; --b) {
        uint64_t m = f.c[kform_rank3(a, b, f.deg)];
        for (int i = 0; i < a; ++i) m = m * at[0] % p;
        for (int i = 0; i < b; ++i) m = m * at[1] % p;
        for (int i = 0; i < f.deg - a - b; ++i) m = m * at[2] % p;
        acc += m;
      }
    return static_cast<uint32_t>(acc % p);
  };

  int attempts = 0;
  for (const auto& center : centers) {
    if (attempts >= 32) break;
    if (eval_kform(Q, center) == 0 || eval_kform(C, center) == 0) continue;
    ++attempts;

    // plane frame with the center as the third direction; the other two are
    // standard vectors avoiding the center's last nonzero slot
    int piv = center[2] ? 2 : (center[1] ? 1 : 0);
    std::array<std::array<uint32_t, 3>, 3> frame{};
    int fi = 0;
    for (int i = 0; i < 3; ++i) {
      if (i == piv) continue;
      frame[fi][i] = 1;
      ++fi;
    }
    frame[2] = center;
    // substitute (u, v, t) -> u*frame0 + v*frame1 + t*center into Q and C by
    // re-restricting the ambient forms through the composed basis
    std::vector<std::array<uint32_t, 4>> composed(3);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) {
        uint64_t s = 0;
        for (int k = 0; k < 3; ++k) s += uint64_t(frame[j][k]) * basis[k][i];
        composed[j][i] = static_cast<uint32_t>(s % p);
      }
    KForm Qf = restrict_span(F, composed);
    KForm Cf = restrict_span(G, composed);

    auto qt = t_coefficients(Qf);  // qt[k] multiplies t^(2-k)
    auto ct = t_coefficients(Cf);
    std::vector<BForm> qrow = {qt[0], qt[1], qt[2]};
    std::vector<BForm> crow = {ct[0], ct[1], ct[2], ct[3]};
    // leading coefficients are the center values, nonzero by construction
    BForm R = resultant_t(qrow, crow, p);
    if (bform_is_zero(R)) throw IntegrityError("linear section: common component");
    assert(R.deg == 6);

    fpuni::Poly R1(R.c.rbegin(), R.c.rend());  // low-to-high in u at v = 1
    fpuni::normalize(R1);
    int inf_mult = 6 - fpuni::degree(R1);

    auto factor_counts = fpuni::exact_degree_factor_counts(R1, p, 6);
    std::vector<uint32_t> levels;
    for (uint32_t e = 1; e <= max_e; ++e) {
      bool need = factor_counts[e] > 0 || (e % 2 == 0 && factor_counts[e / 2] > 0);
      if (inf_mult > 0 && e <= 2) need = true;
      if (need) levels.push_back(e);
    }

    std::vector<OrbitEntry> entries;
    int mass = 0;
    bool retry = false;

    auto make_point = [&](const Fq& K, const Elem& u0, const Elem& v0, const Elem& t0) {
      std::array<Elem, 4> coords;
      for (int i = 0; i < 4; ++i) {
        Elem s = K.scale(composed[0][i], u0);
        s = K.add(s, K.scale(composed[1][i], v0));
        s = K.add(s, K.scale(composed[2][i], t0));
        coords[i] = s;
      }
      return normalize_point(K, coords);
    };

    for (uint32_t e : levels) {
      if (mass == 6) break;
      if (retry) break;
      const Fq& K = fields_.get(p, e);
      const Elem half = K.inv(K.from_uint(2));

      // projective roots of R over F_{p^e} with multiplicity
      std::vector<std::pair<std::array<Elem, 2>, int>> roots;
      {
        std::vector<Elem> rp(R1.size());
        for (size_t i = 0; i < R1.size(); ++i) rp[i] = K.from_uint(R1[i]);
        for (auto& [r, m] : roots_univariate(rp, K))
          roots.push_back({{r, K.one()}, m});
        if (inf_mult > 0) roots.push_back({{K.one(), K.zero()}, inf_mult});
      }

      for (auto& [uv, m] : roots) {
        if (retry || mass == 6) break;
        const Elem &u0 = uv[0], &v0 = uv[1];
        // fiber polynomials in t
        std::vector<Elem> qf = {bform_eval(qt[2], K, u0, v0), bform_eval(qt[1], K, u0, v0),
                                bform_eval(qt[0], K, u0, v0)};
        std::vector<Elem> cf = {bform_eval(ct[3], K, u0, v0), bform_eval(ct[2], K, u0, v0),
                                bform_eval(ct[1], K, u0, v0), bform_eval(ct[0], K, u0, v0)};
        uni::Poly g = uni::gcd_monic(K, qf, cf);
        const int dg = uni::degree(g);
        if (dg <= 0) throw IntegrityError("linear section: fiber without common root");
        if (dg == 1) {
          ProjPoint P = make_point(K, u0, v0, K.neg(g[0]));
          if (point_orbit_degree(K, P) == e) orbit_insert(entries, K, P, e, m, mass);
          continue;
        }
        // monic quadratic fiber
        Elem g1 = g[1], g0 = g[0];
        Elem disc = K.sub(K.mul(g1, g1), K.scale(4, g0));
        if (K.is_zero(disc)) {
          Elem t0 = K.mul(K.neg(g1), half);
          ProjPoint P = make_point(K, u0, v0, t0);
          if (point_orbit_degree(K, P) == e) orbit_insert(entries, K, P, e, m, mass);
          continue;
        }
        auto s = K.sqrt(disc);
        if (!s.has_value()) continue;  // conjugate pair appears at level 2e
        Elem t1 = K.mul(K.add(K.neg(g1), *s), half);
        Elem t2 = K.mul(K.sub(K.neg(g1), *s), half);
        ProjPoint P1 = make_point(K, u0, v0, t1);
        ProjPoint P2 = make_point(K, u0, v0, t2);
        uint32_t d1 = point_orbit_degree(K, P1);
        uint32_t d2 = point_orbit_degree(K, P2);
        if (d1 != e && d2 != e) continue;
        if (d1 != d2) {
          retry = true;  // conjugate-degree mismatch: pick a fresh projection
          break;
        }
        bool same_orbit = false;
        ProjPoint cur = P1;
        for (uint32_t k = 0; k < e; ++k) {
          if (cur == P2) {
            same_orbit = true;
            break;
          }
          cur = frobenius_point(K, cur);
        }
        if (same_orbit) {
          if (m % 2) throw IntegrityError("linear section: odd shared multiplicity");
          orbit_insert(entries, K, P1, e, m / 2, mass);
        } else if (m == 2) {
          orbit_insert(entries, K, P1, e, 1, mass);
          orbit_insert(entries, K, P2, e, 1, mass);
        } else if (m < 2) {
          throw IntegrityError("linear section: fiber mass below point count");
        } else {
          retry = true;  // m > 2 over two distinct orbits: not separable here
          break;
        }
        if (mass > 6) throw IntegrityError("linear section: mass overflow");
      }
    }

    if (retry) continue;
    if (max_e >= 6 && mass != 6) continue;  // projection missed structure; retry
    std::vector<SectionPoint> out;
    for (auto& en : entries) out.push_back({en.rep, en.degree, en.mult});
    return out;
  }
  throw IntegrityError("linear section: projections exhausted");
}

std::vector<CartierAnalyzer::SectionPoint> CartierAnalyzer::linear_section_points(
    const std::vector<std::array<uint32_t, 4>>& basis, const Poly4& F, const Poly4& G,
    uint32_t max_e) {
  switch (basis.size()) {
    case 1: return solve_dim1(basis[0], F, G);
    case 2: return solve_dim2(basis, F, G, max_e);
    case 3: return solve_dim3(basis, F, G, max_e);
    default: throw std::invalid_argument("linear_section_points: dimension must be 1..3");
  }
}

std::vector<CartierPoint> CartierAnalyzer::type1_points(const CurveSpec& s, const HWMatrix& h) {
  const int a = a_number(h);
  if (a < 1 || a > 3)
    throw std::invalid_argument("type1_points: a-number must be 1, 2 or 3");
  auto basis = kernel_basis(h.p, h.m);
  auto pts = linear_section_points(basis, s.F, s.G, 6);
  std::vector<CartierPoint> out;
  for (auto& sp : pts) {
    CartierPoint cp;
    cp.pt = sp.pt;
    cp.type = 1;
    cp.degree = sp.degree;
    cp.multiplicity = (a == 3) ? sp.multiplicity : 1;
    cp.mult_defined = (a == 3);
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [&](const CartierPoint& x, const CartierPoint& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    if (x.pt.e != y.pt.e) return x.pt.e < y.pt.e;
    return point_less(fields_.get(x.pt.p, x.pt.e), x.pt, y.pt);
  });
  if (a == 3) {
    int mass = 0;
    for (auto& cp : out) mass += cp.degree * cp.multiplicity;
    if (mass != 6) throw IntegrityError("type1_points: multiplicities do not sum to 6");
  }
  return out;
}

std::vector<CartierPoint> CartierAnalyzer::type2_points(const CurveSpec& s, const HWMatrix& h) {
  const int a = a_number(h);
  if (a < 1 || a > 3)
    throw std::invalid_argument("type2_points: a-number must be 1, 2 or 3");
  const uint32_t p = h.p;
  std::vector<CartierPoint> out;

  // nonzero spectrum of H: strip the x^k factor of the characteristic
  // polynomial, then factor by degree (roots live in degree <= 3)
  auto hp = char_poly(h);
  fpuni::Poly n(hp.begin(), hp.end());
  size_t shift = 0;
  while (shift < n.size() && n[shift] == 0) ++shift;
  n.erase(n.begin(), n.begin() + static_cast<long>(shift));
  fpuni::normalize(n);
  if (fpuni::degree(n) < 1) return out;

  // (e, lambda) pairs with lambda = mu^e in F_p^x for an eigenvalue mu
  std::set<std::pair<uint32_t, uint32_t>> elambda;
  for (uint32_t d = 1; d <= 3; ++d) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < d; ++i) q *= p;
    fpuni::Poly xq = fpuni::powmod_x(q, n, p);
    if (xq.size() < 2) xq.resize(2, 0);
    xq[1] = (xq[1] + p - 1) % p;
    fpuni::Poly gd = fpuni::gcd_monic(n, xq, p);
    if (fpuni::degree(gd) < 1) continue;
    const Fq& K = fields_.get(p, d);
    for (auto& [mu, mult] : roots_univariate(std::vector<uint32_t>(gd.begin(), gd.end()), K)) {
      (void)mult;
      if (K.is_zero(mu) || K.orbit_degree(mu) != d) continue;
      Elem power = K.one();
      for (uint32_t e = 1; e <= 6; ++e) {
        power = K.mul(power, mu);
        if (K.frobenius(power) == power && !K.is_zero(power))
          elambda.insert({e, power[0]});
      }
    }
  }

  for (auto& [e, lambda] : elambda) {
    Mat4 m = mat_pow(p, h.m, e);
    for (int i = 0; i < 4; ++i) m[i * 4 + i] = (m[i * 4 + i] + p - lambda) % p;
    auto basis = kernel_basis(p, m);
    if (basis.empty() || basis.size() > 3) continue;
    const Fq& K = fields_.get(p, e);
    for (auto& sp : linear_section_points(basis, s.F, s.G, e)) {
      if (sp.degree != static_cast<int>(e)) continue;
      // verify H v^(p) = c v with c != 0
      std::array<Elem, 4> w;
      for (int i = 0; i < 4; ++i) {
        Elem acc = K.zero();
        for (int j = 0; j < 4; ++j)
          acc = K.add(acc, K.scale(h.at(i, j), K.frobenius(sp.pt.x[j])));
        w[i] = acc;
      }
      int last = 3;
      while (K.is_zero(sp.pt.x[last])) --last;
      Elem c = w[last];  // v_last = 1 after normalization
      bool ok = !K.is_zero(c);
      for (int i = 0; i < 4 && ok; ++i)
        if (!(w[i] == K.mul(c, sp.pt.x[i]))) ok = false;
      if (!ok) continue;
      CartierPoint cp;
      cp.pt = sp.pt;
      cp.type = 2;
      cp.degree = sp.degree;
      cp.eigenvalue = c;
      cp.mult_defined = false;
      out.push_back(cp);
    }
  }
  std::sort(out.begin(), out.end(), [&](const CartierPoint& x, const CartierPoint& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    return point_less(fields_.get(x.pt.p, x.pt.e), x.pt, y.pt);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CartierPoint& x, const CartierPoint& y) {
                          return x.pt == y.pt;
                        }),
            out.end());
  return out;
}

CartierReport CartierAnalyzer::analyze(const CurveSpec& s, const HWMatrix& h) {
  CartierReport r;
  r.a = a_number(h);
  r.f = p_rank(h);
  r.type1 = type1_points(s, h);
  r.type2 = type2_points(s, h);
  return r;
}

}  // namespace genus4
