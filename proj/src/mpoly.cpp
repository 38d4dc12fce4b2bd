#include "genus4/mpoly.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace genus4 {

uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

const std::vector<Mono4>& monomials_of_degree(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<Mono4>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<Mono4> ms;
  ms.reserve(binom(d + 3, 3));
  for (int i1 = d; i1 >= 0; --i1)
    for (int i2 = d - i1; i2 >= 0; --i2)
      for (int i3 = d - i1 - i2; i3 >= 0; --i3) {
        Mono4 m;
        m.e = {uint16_t(i1), uint16_t(i2), uint16_t(i3), uint16_t(d - i1 - i2 - i3)};
        ms.push_back(m);
      }
  return cache.emplace(d, std::move(ms)).first->second;
}

uint32_t mono_rank(const Mono4& m) {
  const int d = m.degree();
  const int i1 = m.e[0], i2 = m.e[1], i3 = m.e[2];
  const int s = d - i1 - i2;  // degree left for (z, w)
  uint32_t r = 0;
  for (int a = i1 + 1; a <= d; ++a) r += static_cast<uint32_t>(binom(d - a + 2, 2));
  r += static_cast<uint32_t>(uint64_t(s) * (s + 1) / 2);  // monomials with larger y exponent
  r += static_cast<uint32_t>(s - i3);
  return r;
}

namespace {

// flat (d+1)^3 lookup rank tables per degree for the hot products
struct RankLut {
  int d = 0;
  std::vector<uint32_t> t;  // index ((i1*(d+1))+i2)*(d+1)+i3
  uint32_t at(int i1, int i2, int i3) const {
    return t[(static_cast<size_t>(i1) * (d + 1) + i2) * (d + 1) + i3];
  }
};

const RankLut& rank_lut(int d) {
  static std::mutex mu;
  static std::map<int, RankLut> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  RankLut lut;
  lut.d = d;
  lut.t.assign(static_cast<size_t>(d + 1) * (d + 1) * (d + 1), 0);
  const auto& ms = monomials_of_degree(d);
  for (uint32_t r = 0; r < ms.size(); ++r) {
    const auto& e = ms[r].e;
    lut.t[(static_cast<size_t>(e[0]) * (d + 1) + e[1]) * (d + 1) + e[2]] = r;
  }
  return cache.emplace(d, std::move(lut)).first->second;
}

}  // namespace

const std::vector<uint32_t>& rank_lut_flat(int d) { return rank_lut(d).t; }

Poly4::Poly4(uint32_t p, int degree) : p_(p), deg_(degree) {
  c_.assign(binom(degree + 3, 3), 0);
}

Poly4 Poly4::constant(uint32_t p, uint32_t value) {
  Poly4 f(p, 0);
  f.c_[0] = value % p;
  return f;
}

Poly4 Poly4::from_terms(uint32_t p, int degree,
                        std::initializer_list<std::pair<Mono4, uint32_t>> terms) {
  Poly4 f(p, degree);
  for (const auto& [m, c] : terms) f.set_term(m, c);
  return f;
}

bool Poly4::is_zero() const {
  for (uint32_t c : c_)
    if (c) return false;
  return true;
}

uint32_t Poly4::coefficient_of(const Mono4& m) const {
  if (m.degree() != deg_) return 0;
  return c_[mono_rank(m)];
}

void Poly4::set_term(const Mono4& m, uint32_t coeff) {
  if (m.degree() != deg_) throw std::invalid_argument("set_term: degree mismatch");
  c_[mono_rank(m)] = coeff % p_;
}

Poly4 Poly4::add(const Poly4& other) const {
  if (p_ != other.p_ || deg_ != other.deg_) throw std::invalid_argument("add: mismatch");
  Poly4 r(p_, deg_);
  for (size_t i = 0; i < c_.size(); ++i) {
    uint32_t s = c_[i] + other.c_[i];
    r.c_[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

Poly4 Poly4::sub(const Poly4& other) const {
  if (p_ != other.p_ || deg_ != other.deg_) throw std::invalid_argument("sub: mismatch");
  Poly4 r(p_, deg_);
  for (size_t i = 0; i < c_.size(); ++i) {
    uint32_t s = c_[i] + p_ - other.c_[i];
    r.c_[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

Poly4 Poly4::scale(uint32_t s) const {
  s %= p_;
  Poly4 r(p_, deg_);
  for (size_t i = 0; i < c_.size(); ++i)
    r.c_[i] = static_cast<uint32_t>(uint64_t(c_[i]) * s % p_);
  return r;
}

Poly4 Poly4::mul(const Poly4& other) const {
  if (p_ != other.p_) throw std::invalid_argument("mul: prime mismatch");
  const int dout = deg_ + other.deg_;
  Poly4 r(p_, dout);
  const auto& ma = monomials_of_degree(deg_);
  const auto& mb = monomials_of_degree(other.deg_);
  const auto& lut = rank_lut(dout);
  // sparse pass over a, dense inner over b
  for (uint32_t ra = 0; ra < c_.size(); ++ra) {
    const uint32_t ca = c_[ra];
    if (!ca) continue;
    const auto& ea = ma[ra].e;
    for (uint32_t rb = 0; rb < other.c_.size(); ++rb) {
      const uint32_t cb = other.c_[rb];
      if (!cb) continue;
      const auto& eb = mb[rb].e;
      uint32_t out = lut.at(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]);
      r.c_[out] = static_cast<uint32_t>((r.c_[out] + uint64_t(ca) * cb) % p_);
    }
  }
  return r;
}

Poly4 Poly4::pow(uint64_t n) const {
  if (n == 0) return constant(p_, 1);
  Poly4 base = *this;
  Poly4 result = constant(p_, 1);
  bool have = false;
  while (n) {
    if (n & 1) {
      result = have ? result.mul(base) : base;
      have = true;
    }
    n >>= 1;
    if (n) base = base.mul(base);
  }
  return result;
}

namespace {

// multiply a k-variable form by the linear form sum_j l[j] * u_j
KForm kform_mul_linear(const KForm& f, const std::array<uint32_t, 4>& l) {
  KForm r;
  r.p = f.p;
  r.nvars = f.nvars;
  r.deg = f.deg + 1;
  const uint32_t p = f.p;
  if (f.nvars == 2) {
    r.c.assign(r.deg + 1, 0);
    for (int a = f.deg; a >= 0; --a) {
      uint32_t cf = f.c[kform_rank2(a, f.deg)];
      if (!cf) continue;
      for (int j = 0; j < 2; ++j) {
        if (!l[j]) continue;
        int na = a + (j == 0 ? 1 : 0);
        uint32_t& out = r.c[kform_rank2(na, r.deg)];
        out = static_cast<uint32_t>((out + uint64_t(cf) * l[j]) % p);
      }
    }
  } else {
    r.c.assign(binom(r.deg + 2, 2), 0);
    for (int a = f.deg; a >= 0; --a)
      for (int b = f.deg - a; b >= 0; --b) {
        uint32_t cf = f.c[kform_rank3(a, b, f.deg)];
        if (!cf) continue;
        for (int j = 0; j < 3; ++j) {
          if (!l[j]) continue;
          int na = a + (j == 0 ? 1 : 0), nb = b + (j == 1 ? 1 : 0);
          uint32_t& out = r.c[kform_rank3(na, nb, r.deg)];
          out = static_cast<uint32_t>((out + uint64_t(cf) * l[j]) % p);
        }
      }
  }
  return r;
}

KForm kform_sum(KForm a, const KForm& b) {
  for (size_t i = 0; i < a.c.size(); ++i) {
    uint32_t s = a.c[i] + b.c[i];
    a.c[i] = s >= a.p ? s - a.p : s;
  }
  return a;
}

}  // namespace

bool KForm::is_zero() const {
  for (uint32_t x : c)
    if (x) return false;
  return true;
}

uint32_t kform_rank2(int a, int d) { return static_cast<uint32_t>(d - a); }

uint32_t kform_rank3(int a, int b, int d) {
  int s = d - a;
  return static_cast<uint32_t>(s * (s + 1) / 2 + (s - b));
}

KForm restrict_span(const Poly4& f, const std::vector<std::array<uint32_t, 4>>& basis) {
  const int k = static_cast<int>(basis.size());
  if (k != 2 && k != 3) throw std::invalid_argument("restrict_span: need 2 or 3 vectors");
  const uint32_t p = f.p();
  // linear form rows: variable i of the ambient space pulls back to
  // sum_j basis[j][i] * u_j
  std::array<std::array<uint32_t, 4>, 4> row{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < k; ++j) row[i][j] = basis[j][i] % p;

  KForm acc;
  acc.p = p;
  acc.nvars = k;
  acc.deg = f.degree();
  acc.c.assign(k == 2 ? acc.deg + 1 : binom(acc.deg + 2, 2), 0);

  const auto& ms = monomials_of_degree(f.degree());
  for (uint32_t r = 0; r < f.coeffs().size(); ++r) {
    uint32_t cf = f.coeffs()[r];
    if (!cf) continue;
    KForm term;
    term.p = p;
    term.nvars = k;
    term.deg = 0;
    term.c = {cf};
    for (int v = 0; v < 4; ++v)
      for (int rep = 0; rep < ms[r].e[v]; ++rep) term = kform_mul_linear(term, row[v]);
    acc = kform_sum(std::move(acc), term);
  }
  return acc;
}

Poly4 Poly4::substitute_linear(const std::array<uint32_t, 16>& M) const {
  // x_i -> sum_j M[i][j] x_j, then expand monomial by monomial
  const auto& ms = monomials_of_degree(deg_);
  Poly4 acc(p_, deg_);
  for (uint32_t r = 0; r < c_.size(); ++r) {
    uint32_t cf = c_[r];
    if (!cf) continue;
    // running product as a dense homogeneous polynomial of growing degree
    std::vector<uint32_t> cur = {cf};
    int curdeg = 0;
    for (int v = 0; v < 4; ++v) {
      for (int rep = 0; rep < ms[r].e[v]; ++rep) {
        const auto& mcur = monomials_of_degree(curdeg);
        const auto& lnext = rank_lut(curdeg + 1);
        std::vector<uint32_t> nxt(binom(curdeg + 4, 3), 0);
        for (uint32_t rc = 0; rc < cur.size(); ++rc) {
          if (!cur[rc]) continue;
          const auto& ec = mcur[rc].e;
          for (int j = 0; j < 4; ++j) {
            uint32_t mj = M[static_cast<size_t>(v) * 4 + j] % p_;
            if (!mj) continue;
            uint32_t out = lnext.at(ec[0] + (j == 0), ec[1] + (j == 1), ec[2] + (j == 2));
            nxt[out] = static_cast<uint32_t>((nxt[out] + uint64_t(cur[rc]) * mj) % p_);
          }
        }
        cur = std::move(nxt);
        ++curdeg;
      }
    }
    for (size_t i = 0; i < cur.size(); ++i) {
      uint32_t s = acc.c_[i] + cur[i];
      acc.c_[i] = s >= p_ ? s - p_ : s;
    }
  }
  return acc;
}

Poly4 Poly4::derivative(int v) const {
  if (deg_ == 0) return Poly4(p_, 0);
  Poly4 r(p_, deg_ - 1);
  const auto& ms = monomials_of_degree(deg_);
  const auto& lut = rank_lut(deg_ - 1);
  for (uint32_t i = 0; i < c_.size(); ++i) {
    if (!c_[i] || ms[i].e[v] == 0) continue;
    auto e = ms[i].e;
    uint32_t k = e[v];
    e[v] -= 1;
    uint32_t out = lut.at(e[0], e[1], e[2]);
    r.c_[out] = static_cast<uint32_t>((r.c_[out] + uint64_t(c_[i]) * k) % p_);
  }
  return r;
}

const std::array<Mono4, 20>& cubic_monomials() {
  static const std::array<Mono4, 20> table = [] {
    std::array<Mono4, 20> t{};
    const auto& ms = monomials_of_degree(3);
    for (int i = 0; i < 20; ++i) t[i] = ms[i];
    return t;
  }();
  return table;
}

Poly4 cubic_decode(uint32_t p, const CubicVector& v) {
  Poly4 g(p, 3);
  for (int i = 0; i < 20; ++i) g.coeffs()[i] = v[i] % p;
  return g;
}

CubicVector cubic_encode(const Poly4& g) {
  if (g.degree() != 3) throw std::invalid_argument("cubic_encode: degree must be 3");
  CubicVector v{};
  for (int i = 0; i < 20; ++i) v[i] = g.coeffs()[i];
  return v;
}

Elem evaluate_proj(const Poly4& f, const Fq& K, const std::array<Elem, 4>& coords) {
  bool allzero = true;
  for (const auto& c : coords)
    if (!K.is_zero(c)) allzero = false;
  if (allzero) throw std::invalid_argument("evaluate_proj: zero coordinate tuple");
  const int d = f.degree();
  // power tables per coordinate
  std::array<std::vector<Elem>, 4> pw;
  for (int i = 0; i < 4; ++i) {
    pw[i].resize(d + 1);
    pw[i][0] = K.one();
    for (int k = 1; k <= d; ++k) pw[i][k] = K.mul(pw[i][k - 1], coords[i]);
  }
  const auto& ms = monomials_of_degree(d);
  Elem acc = K.zero();
  for (uint32_t r = 0; r < f.coeffs().size(); ++r) {
    uint32_t cf = f.coeffs()[r];
    if (!cf) continue;
    Elem t = K.from_uint(cf);
    for (int v = 0; v < 4; ++v)
      if (ms[r].e[v]) t = K.mul(t, pw[v][ms[r].e[v]]);
    acc = K.add(acc, t);
  }
  return acc;
}

uint32_t evaluate_fp(const Poly4& f, const std::array<uint32_t, 4>& coords) {
  const uint32_t p = f.p();
  const int d = f.degree();
  std::array<std::array<uint32_t, 64>, 4> pw{};
  for (int i = 0; i < 4; ++i) {
    pw[i][0] = 1;
    for (int k = 1; k <= d; ++k)
      pw[i][k] = static_cast<uint32_t>(uint64_t(pw[i][k - 1]) * (coords[i] % p) % p);
  }
  const auto& ms = monomials_of_degree(d);
  uint64_t acc = 0;
  for (uint32_t r = 0; r < f.coeffs().size(); ++r) {
    uint32_t cf = f.coeffs()[r];
    if (!cf) continue;
    uint64_t t = cf;
    for (int v = 0; v < 4; ++v) t = t * pw[v][ms[r].e[v]] % p;
    acc += t;
  }
  return static_cast<uint32_t>(acc % p);
}

}  // namespace genus4
