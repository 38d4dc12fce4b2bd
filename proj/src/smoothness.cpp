#include "genus4/smoothness.hpp"

#include <algorithm>
#include <stdexcept>

namespace genus4 {

namespace gb {

uint64_t Mono5::key() const {
  uint64_t k = uint64_t(deg()) << 40;
  k |= uint64_t(255 - e[4]) << 32;
  k |= uint64_t(255 - e[3]) << 24;
  k |= uint64_t(255 - e[2]) << 16;
  k |= uint64_t(255 - e[1]) << 8;
  k |= uint64_t(255 - e[0]);
  return k;
}

bool Mono5::divides(const Mono5& m) const {
  for (int i = 0; i < 5; ++i)
    if (e[i] > m.e[i]) return false;
  return true;
}

Mono5 Mono5::lcm(const Mono5& m) const {
  Mono5 r;
  for (int i = 0; i < 5; ++i) r.e[i] = std::max(e[i], m.e[i]);
  return r;
}

Mono5 Mono5::mul(const Mono5& m) const {
  Mono5 r;
  for (int i = 0; i < 5; ++i) r.e[i] = static_cast<uint8_t>(e[i] + m.e[i]);
  return r;
}

bool Mono5::coprime(const Mono5& m) const {
  for (int i = 0; i < 5; ++i)
    if (e[i] && m.e[i]) return false;
  return true;
}

namespace {

Term make_term(const Mono5& m, uint32_t c) { return Term{m.key(), m, c}; }

void sort_combine(GPoly& f) {
  std::sort(f.t.begin(), f.t.end(), [](const Term& a, const Term& b) { return a.key > b.key; });
  std::vector<Term> out;
  out.reserve(f.t.size());
  for (const Term& t : f.t) {
    if (!out.empty() && out.back().key == t.key) {
      out.back().c = (out.back().c + t.c) % f.p;
    } else {
      out.push_back(t);
      out.back().c %= f.p;
    }
  }
  f.t.clear();
  for (const Term& t : out)
    if (t.c) f.t.push_back(t);
}

// f -= c * mono * g, merged in one pass
void axpy_mono(GPoly& f, uint32_t c, const Mono5& mono, const GPoly& g) {
  const uint32_t p = f.p;
  std::vector<Term> out;
  out.reserve(f.t.size() + g.t.size());
  size_t i = 0, j = 0;
  while (i < f.t.size() || j < g.t.size()) {
    uint64_t gkey = 0;
    Mono5 gm;
    uint32_t gc = 0;
    if (j < g.t.size()) {
      gm = g.t[j].m.mul(mono);
      gkey = gm.key();
      gc = static_cast<uint32_t>(uint64_t(c) * g.t[j].c % p);
    }
    if (j >= g.t.size() || (i < f.t.size() && f.t[i].key > gkey)) {
      out.push_back(f.t[i++]);
    } else if (i >= f.t.size() || f.t[i].key < gkey) {
      out.push_back(Term{gkey, gm, (p - gc) % p});
      ++j;
    } else {
      uint32_t nc = (f.t[i].c + p - gc) % p;
      if (nc) out.push_back(Term{f.t[i].key, f.t[i].m, nc});
      ++i;
      ++j;
    }
  }
  std::erase_if(out, [](const Term& t) { return t.c == 0; });
  f.t = std::move(out);
}

GPoly s_poly(const GPoly& f, const GPoly& g) {
  const uint32_t p = f.p;
  Mono5 l = f.lead().m.lcm(g.lead().m);
  Mono5 mf, mg;
  for (int i = 0; i < 5; ++i) {
    mf.e[i] = static_cast<uint8_t>(l.e[i] - f.lead().m.e[i]);
    mg.e[i] = static_cast<uint8_t>(l.e[i] - g.lead().m.e[i]);
  }
  // lc(g) * mf * f - lc(f) * mg * g
  GPoly r;
  r.p = p;
  r.t.reserve(f.t.size() + g.t.size());
  for (const Term& t : f.t)
    r.t.push_back(make_term(t.m.mul(mf), static_cast<uint32_t>(uint64_t(t.c) * g.lead().c % p)));
  for (const Term& t : g.t)
    r.t.push_back(make_term(
        t.m.mul(mg), static_cast<uint32_t>(uint64_t(p - 1) * f.lead().c % p * t.c % p)));
  sort_combine(r);
  return r;
}

}  // namespace

GPoly gpoly_from_terms(uint32_t p,
                       std::initializer_list<std::pair<std::array<int, 5>, int>> terms) {
  GPoly f;
  f.p = p;
  for (const auto& [e, c] : terms) {
    Mono5 m;
    for (int i = 0; i < 5; ++i) m.e[i] = static_cast<uint8_t>(e[i]);
    uint32_t cc = static_cast<uint32_t>(((c % static_cast<int>(p)) + static_cast<int>(p)) % p);
    f.t.push_back(make_term(m, cc));
  }
  sort_combine(f);
  return f;
}

GPoly gpoly_from_poly4(const Poly4& f) {
  GPoly g;
  g.p = f.p();
  const auto& ms = monomials_of_degree(f.degree());
  for (uint32_t r = 0; r < f.coeffs().size(); ++r) {
    if (!f.coeffs()[r]) continue;
    Mono5 m;
    for (int i = 0; i < 4; ++i) m.e[i] = static_cast<uint8_t>(ms[r].e[i]);
    g.t.push_back(make_term(m, f.coeffs()[r]));
  }
  sort_combine(g);
  return g;
}

GPoly gpoly_monic(const GPoly& f) {
  if (f.is_zero()) return f;
  GPoly g = f;
  uint32_t inv = mod_inverse(f.lead().c, f.p);
  for (Term& t : g.t) t.c = static_cast<uint32_t>(uint64_t(t.c) * inv % f.p);
  return g;
}

GPoly normal_form(const GPoly& f, const std::vector<GPoly>& basis) {
  GPoly rem;
  rem.p = f.p;
  GPoly cur = f;
  while (!cur.is_zero()) {
    bool reduced = false;
    for (const GPoly& g : basis) {
      if (g.is_zero() || !g.lead().m.divides(cur.lead().m)) continue;
      Mono5 q;
      for (int i = 0; i < 5; ++i)
        q.e[i] = static_cast<uint8_t>(cur.lead().m.e[i] - g.lead().m.e[i]);
      uint32_t c = static_cast<uint32_t>(uint64_t(cur.lead().c) *
                                         mod_inverse(g.lead().c, cur.p) % cur.p);
      axpy_mono(cur, c, q, g);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.t.push_back(cur.t.front());
      cur.t.erase(cur.t.begin());
    }
  }
  return rem;
}

}  // namespace gb

namespace {

using gb::GPoly;
using gb::Mono5;

struct Pair {
  size_t i, j;
  Mono5 l;
  uint64_t lkey;
};

// Gebauer-Moller pair update on adding generator h at position hi
void update_pairs(std::vector<GPoly>& gens, std::vector<Pair>& pairs, const GPoly& h,
                  size_t hi) {
  std::vector<Pair> cand;
  for (size_t i = 0; i < hi; ++i) {
    if (gens[i].is_zero()) continue;
    Mono5 l = h.lead().m.lcm(gens[i].lead().m);
    cand.push_back(Pair{i, hi, l, l.key()});
  }
  std::vector<Pair> kept;
  for (size_t a = 0; a < cand.size(); ++a) {
    bool coprime = h.lead().m.coprime(gens[cand[a].i].lead().m);
    bool dominated = false;
    if (!coprime) {
      for (size_t b = a + 1; b < cand.size() && !dominated; ++b)
        if (!(cand[b].l == cand[a].l) && cand[b].l.divides(cand[a].l)) dominated = true;
      for (size_t b = 0; b < kept.size() && !dominated; ++b)
        if (kept[b].l.divides(cand[a].l)) dominated = true;
      // equal lcms among the still-unprocessed candidates: keep only the last
      for (size_t b = a + 1; b < cand.size() && !dominated; ++b)
        if (cand[b].l == cand[a].l) dominated = true;
    }
    if (!dominated) kept.push_back(cand[a]);
  }
  std::erase_if(kept,
                [&](const Pair& pr) { return h.lead().m.coprime(gens[pr.i].lead().m); });
  // prune old pairs strictly refined by h
  std::erase_if(pairs, [&](const Pair& pr) {
    if (!h.lead().m.divides(pr.l)) return false;
    Mono5 li = h.lead().m.lcm(gens[pr.i].lead().m);
    Mono5 lj = h.lead().m.lcm(gens[pr.j].lead().m);
    return !(li == pr.l) && !(lj == pr.l);
  });
  pairs.insert(pairs.end(), kept.begin(), kept.end());
}

std::vector<GPoly> buchberger(std::vector<GPoly> gens) {
  std::vector<GPoly> basis;
  std::vector<Pair> pairs;
  for (const GPoly& g : gens) {
    if (g.is_zero()) continue;
    GPoly r = gb::normal_form(g, basis);
    if (r.is_zero()) continue;
    basis.push_back(gb::gpoly_monic(r));
    update_pairs(basis, pairs, basis.back(), basis.size() - 1);
  }
  while (!pairs.empty()) {
    // normal selection: smallest lcm in the term order
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k)
      if (pairs[k].lkey < pairs[best].lkey) best = k;
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    GPoly s = gb::s_poly(basis[pr.i], basis[pr.j]);
    GPoly r = gb::normal_form(s, basis);
    if (r.is_zero()) continue;
    basis.push_back(gb::gpoly_monic(r));
    update_pairs(basis, pairs, basis.back(), basis.size() - 1);
  }
  return basis;
}

std::vector<GPoly> reduce_basis(std::vector<GPoly> basis) {
  // minimal: drop generators whose lead is divisible by another lead
  std::vector<GPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (basis[j].lead().m.divides(basis[i].lead().m)) {
        // ties (equal leads) keep the earlier one
        if (!(basis[j].lead().m == basis[i].lead().m) || j < i) redundant = true;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // tail reduction against the others
  std::vector<GPoly> reduced = minimal;
  for (size_t i = 0; i < reduced.size(); ++i) {
    std::vector<GPoly> others;
    for (size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    reduced[i] = gb::gpoly_monic(gb::normal_form(minimal[i], others));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const GPoly& a, const GPoly& b) { return a.lead().key < b.lead().key; });
  return reduced;
}

}  // namespace

IdealBasis groebner_basis(const IdealBasis& ideal) {
  std::vector<GPoly> gens;
  for (const GPoly& g : ideal.gens)
    if (!g.is_zero()) gens.push_back(g);
  IdealBasis out;
  out.p = ideal.p;
  if (gens.empty()) return out;
  out.gens = reduce_basis(buchberger(std::move(gens)));
  return out;
}

int lt_ideal_affine_dim(const IdealBasis& reduced_gb, int nvars) {
  if (!reduced_gb.gens.empty() && reduced_gb.gens.front().lead().m.deg() == 0) return -1;
  int best = -1;
  for (uint32_t mask = 0; mask < (1u << nvars); ++mask) {
    // S independent iff no leading monomial is supported inside S
    bool independent = true;
    for (const auto& g : reduced_gb.gens) {
      bool inside = true;
      for (int v = 0; v < 5; ++v) {
        if (!g.lead().m.e[v]) continue;
        if (v >= nvars || !(mask & (1u << v))) {
          inside = false;
          break;
        }
      }
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

bool radical_membership(const Poly4& f, const std::vector<Poly4>& ideal_gens) {
  const uint32_t p = f.p();
  if (f.is_zero()) return true;
  IdealBasis ideal;
  ideal.p = p;
  for (const Poly4& g : ideal_gens) {
    if (g.is_zero()) continue;
    ideal.gens.push_back(gb::gpoly_from_poly4(g));
  }
  // 1 - t*f
  GPoly tf = gb::gpoly_from_poly4(f);
  for (auto& t : tf.t) {
    t.m.e[4] += 1;
    t.c = (p - t.c) % p;
    t.key = t.m.key();
  }
  GPoly onep = gb::gpoly_from_terms(p, {{{0, 0, 0, 0, 0}, 1}});
  GPoly rab;
  rab.p = p;
  rab.t = onep.t;
  rab.t.insert(rab.t.end(), tf.t.begin(), tf.t.end());
  std::sort(rab.t.begin(), rab.t.end(),
            [](const gb::Term& a, const gb::Term& b) { return a.key > b.key; });
  ideal.gens.push_back(rab);
  IdealBasis gbasis = groebner_basis(ideal);
  return gbasis.gens.size() == 1 && gbasis.gens.front().lead().m.deg() == 0;
}

std::vector<Poly4> jacobian_minors(const Poly4& F, const Poly4& G) {
  std::array<Poly4, 4> dF, dG;
  for (int v = 0; v < 4; ++v) {
    dF[v] = F.derivative(v);
    dG[v] = G.derivative(v);
  }
  std::vector<Poly4> minors;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) minors.push_back(dF[i].mul(dG[j]).sub(dF[j].mul(dG[i])));
  return minors;
}

bool is_nonsingular(const Poly4& F, const Poly4& G) {
  const uint32_t p = F.p();
  std::vector<Poly4> gens = {F, G};
  for (Poly4& m : jacobian_minors(F, G)) gens.push_back(std::move(m));

  // rational singular points settle it without elimination
  for (int level = 0; level < 4; ++level) {
    uint64_t stratum = 1;
    for (int i = 0; i < level; ++i) stratum *= p;
    for (uint64_t rem = 0; rem < stratum; ++rem) {
      std::array<uint32_t, 4> pt{};
      pt[level] = 1;  // last nonzero coordinate normalized to 1
      uint64_t r = rem;
      for (int i = 0; i < level; ++i) {
        pt[i] = static_cast<uint32_t>(r % p);
        r /= p;
      }
      bool sing = true;
      for (const Poly4& g : gens)
        if (evaluate_fp(g, pt)) {
          sing = false;
          break;
        }
      if (sing) return false;
    }
  }

  static const std::array<std::array<int, 4>, 4> vars = {
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  for (const auto& ve : vars) {
    Mono4 m;
    for (int i = 0; i < 4; ++i) m.e[i] = static_cast<uint16_t>(ve[i]);
    Poly4 xv = Poly4::from_terms(p, 1, {{m, 1}});
    if (!radical_membership(xv, gens)) return false;
  }
  return true;
}

const char* reason_name(CurveReason r) {
  switch (r) {
    case CurveReason::ok: return "ok";
    case CurveReason::wrong_dimension: return "wrong_dimension";
    case CurveReason::singular: return "singular";
    case CurveReason::degenerate_input: return "degenerate_input";
  }
  return "?";
}

CurveVerdict is_standard_curve(const Poly4& F, const Poly4& G) {
  if (F.degree() != 2 || G.degree() != 3 || F.is_zero() || G.is_zero() || F.p() != G.p())
    return {false, CurveReason::degenerate_input};
  IdealBasis ideal;
  ideal.p = F.p();
  ideal.gens = {gb::gpoly_from_poly4(F), gb::gpoly_from_poly4(G)};
  IdealBasis gbasis = groebner_basis(ideal);
  if (lt_ideal_affine_dim(gbasis, 4) != 2) return {false, CurveReason::wrong_dimension};
  if (!is_nonsingular(F, G)) return {false, CurveReason::singular};
  return {true, CurveReason::ok};
}

}  // namespace genus4
