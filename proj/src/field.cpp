#include "genus4/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace genus4 {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t mod_pow(uint32_t base, uint64_t exp, uint32_t p) {
  uint64_t r = 1, b = base % p;
  while (exp) {
    if (exp & 1) r = r * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<uint32_t>(r);
}

uint32_t mod_inverse(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("mod_inverse: zero");
  return mod_pow(a, p - 2, p);
}

uint32_t smallest_nonresidue(uint32_t p) {
  for (uint32_t c = 2; c < p; ++c)
    if (mod_pow(c, (p - 1) / 2, p) == p - 1) return c;
  throw std::invalid_argument("smallest_nonresidue: p must be an odd prime > 2");
}

namespace fpuni {

int degree(const Poly& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (f[i]) return static_cast<int>(i);
  return -1;
}

void normalize(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

namespace {

// reduce modulo a monic modulus given by its low coefficients (implicit
// leading 1 at degree e)
Poly mulmod_low(const Poly& a, const Poly& b, const Poly& f_low, uint32_t p) {
  const size_t e = f_low.size();
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + uint64_t(a[i]) * b[j]) % p;
  }
  for (size_t k = c.size(); k-- > e;) {
    if (!c[k]) continue;
    uint32_t lead = c[k];
    c[k] = 0;
    for (size_t j = 0; j < e; ++j)
      c[k - e + j] = (c[k - e + j] + uint64_t(lead) * (p - f_low[j] % p)) % p;
  }
  c.resize(e);
  return c;
}

Poly monic_low(const Poly& modulus, uint32_t p) {
  Poly m = modulus;
  normalize(m);
  if (m.empty()) throw std::invalid_argument("fpuni: zero modulus");
  uint32_t inv = mod_inverse(m.back(), p);
  for (auto& c : m) c = static_cast<uint32_t>(uint64_t(c) * inv % p);
  m.pop_back();  // drop the leading 1
  return m;
}

}  // namespace

Poly mulmod(const Poly& a, const Poly& b, const Poly& modulus, uint32_t p) {
  return mulmod_low(a, b, monic_low(modulus, p), p);
}

Poly powmod_x(uint64_t n, const Poly& modulus, uint32_t p) {
  Poly low = monic_low(modulus, p);
  const size_t e = low.size();
  if (e == 0) return {};  // constant modulus: everything is 0
  Poly result(e, 0), base(e, 0);
  result[0] = 1;
  if (e == 1) {
    base[0] = (p - low[0] % p) % p;  // x = -c0 mod (x + c0)
  } else {
    base[1] = 1;
  }
  while (n) {
    if (n & 1) result = mulmod_low(result, base, low, p);
    base = mulmod_low(base, base, low, p);
    n >>= 1;
  }
  return result;
}

Poly gcd_monic(Poly a, Poly b, uint32_t p) {
  normalize(a);
  normalize(b);
  while (degree(b) >= 0) {
    int da = degree(a), db = degree(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    uint32_t c = uint64_t(a[da]) * mod_inverse(b[db], p) % p;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = (a[da - db + i] + uint64_t(p - c) * b[i]) % p;
    normalize(a);
  }
  normalize(a);
  if (!a.empty()) {
    uint32_t inv = mod_inverse(a.back(), p);
    for (auto& c : a) c = static_cast<uint32_t>(uint64_t(c) * inv % p);
  }
  return a;
}

std::vector<int> exact_degree_factor_counts(const Poly& f, uint32_t p, int maxd) {
  std::vector<int> exact(maxd + 1, 0);
  Poly g = f;
  normalize(g);
  if (degree(g) <= 0) return exact;
  for (int d = 1; d <= maxd; ++d) {
    uint64_t q = 1;
    for (int i = 0; i < d; ++i) q *= p;
    // gcd(f, x^{p^d} - x) collects the distinct roots of degree dividing d
    Poly xq = powmod_x(q, g, p);
    if (xq.size() < 2) xq.resize(2, 0);
    xq[1] = (xq[1] + p - 1) % p;
    int dividing = degree(gcd_monic(g, xq, p));
    if (dividing < 0) dividing = 0;
    int lower = 0;
    for (int d2 = 1; d2 < d; ++d2)
      if (d % d2 == 0) lower += d2 * exact[d2];
    exact[d] = (dividing - lower) / d;
  }
  return exact;
}

}  // namespace fpuni

bool is_irreducible_monic(const ModulusCoeffs& low, uint32_t p) {
  const size_t e = low.size();
  if (e == 0) return false;
  if (e == 1) return true;
  fpuni::Poly f(low.begin(), low.end());
  f.push_back(1);
  // x^{p^e} == x mod f, and gcd(x^{p^{e/r}} - x, f) = 1 for prime r | e
  uint64_t pe = 1;
  for (size_t i = 0; i < e; ++i) pe *= p;
  fpuni::Poly xpe = fpuni::powmod_x(pe, f, p);
  xpe.resize(e, 0);
  bool is_x = xpe[1] == 1 && xpe[0] == 0;
  for (size_t i = 2; i < e && is_x; ++i)
    if (xpe[i]) is_x = false;
  if (!is_x) return false;
  for (uint32_t r = 2; r <= e; ++r) {
    if (e % r != 0 || !is_prime_u32(r)) continue;
    uint64_t pk = 1;
    for (size_t i = 0; i < e / r; ++i) pk *= p;
    fpuni::Poly g = fpuni::powmod_x(pk, f, p);
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;  // x^{p^k} - x
    if (fpuni::degree(fpuni::gcd_monic(f, g, p)) != 0) return false;
  }
  return true;
}

ModulusCoeffs canonical_modulus(uint32_t p, uint32_t e) {
  if (e == 1) return {0};  // modulus t; arithmetic never consults it
  // scan (c0, c1, ...) ascending, low coefficient most significant; c0 = 0
  // is divisible by t, skip the whole branch
  ModulusCoeffs low(e, 0);
  for (uint64_t idx = 1;; ++idx) {
    uint64_t v = idx;
    for (uint32_t i = 0; i < e; ++i) {
      low[e - 1 - i] = static_cast<uint32_t>(v % p);  // c0 varies slowest
      v /= p;
    }
    if (v) throw std::runtime_error("canonical_modulus: no irreducible found");
    if (low[0] != 0 && is_irreducible_monic(low, p)) return low;
  }
}

const Fq& Fq::get(uint32_t p, uint32_t e) {
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Fq>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Fq>(p, e, canonical_modulus(p, e))).first;
  return *it->second;
}

Fq::Fq(uint32_t p, uint32_t e, ModulusCoeffs modulus_low)
    : p_(p), e_(e), mod_(std::move(modulus_low)) {
  if (!is_prime_u32(p) || p < 3 || p >= (1u << 16))
    throw std::invalid_argument("Fq: p must be an odd prime < 2^16");
  if (e < 1 || e > kMaxExtDegree) throw std::invalid_argument("Fq: degree out of range");
  if (mod_.size() != e) throw std::invalid_argument("Fq: modulus degree mismatch");
  for (auto& c : mod_) c %= p;
  if (e > 1 && !is_irreducible_monic(mod_, p))
    throw std::invalid_argument("Fq: modulus is reducible");
  q_ = 1;
  for (uint32_t i = 0; i < e; ++i) q_ *= p;
  build_tables();
}

void Fq::build_tables() {
  // red_[k] = t^{e+k} mod f
  Elem cur{};  // t^e = -sum c_j t^j
  for (uint32_t j = 0; j < e_; ++j) cur[j] = (p_ - mod_[j]) % p_;
  for (uint32_t k = 0; k + 1 < e_; ++k) {
    red_[k] = cur;
    // multiply by t
    Elem nxt{};
    uint32_t carry = cur[e_ - 1];
    for (uint32_t j = e_ - 1; j > 0; --j) nxt[j] = cur[j - 1];
    nxt[0] = 0;
    if (carry)
      for (uint32_t j = 0; j < e_; ++j)
        nxt[j] = (nxt[j] + uint64_t(carry) * ((p_ - mod_[j]) % p_)) % p_;
    cur = nxt;
  }
  if (e_ == 1) red_[0] = Elem{};
  // frob_[j] = (t^j)^p = t^{j*p} mod f
  for (uint32_t j = 0; j < e_; ++j) {
    fpuni::Poly full(mod_.begin(), mod_.end());
    full.push_back(1);
    fpuni::Poly col = fpuni::powmod_x(uint64_t(j) * p_, full, p_);
    col.resize(e_, 0);
    Elem v{};
    for (uint32_t i = 0; i < e_; ++i) v[i] = col[i];
    frob_[j] = v;
  }
}

Elem Fq::one() const {
  Elem a{};
  a[0] = 1;
  return a;
}

Elem Fq::from_uint(uint32_t r) const {
  Elem a{};
  a[0] = r % p_;
  return a;
}

bool Fq::is_zero(const Elem& a) const {
  for (uint32_t i = 0; i < e_; ++i)
    if (a[i]) return false;
  return true;
}

Elem Fq::element(uint64_t index) const {
  Elem a{};
  for (uint32_t i = 0; i < e_; ++i) {
    a[i] = static_cast<uint32_t>(index % p_);
    index /= p_;
  }
  return a;
}

uint64_t Fq::index_of(const Elem& a) const {
  uint64_t idx = 0;
  for (uint32_t i = e_; i-- > 0;) idx = idx * p_ + a[i];
  return idx;
}

Elem Fq::add(const Elem& a, const Elem& b) const {
  Elem c{};
  for (uint32_t i = 0; i < e_; ++i) {
    uint32_t s = a[i] + b[i];
    c[i] = s >= p_ ? s - p_ : s;
  }
  return c;
}

Elem Fq::sub(const Elem& a, const Elem& b) const {
  Elem c{};
  for (uint32_t i = 0; i < e_; ++i) {
    uint32_t s = a[i] + p_ - b[i];
    c[i] = s >= p_ ? s - p_ : s;
  }
  return c;
}

Elem Fq::neg(const Elem& a) const {
  Elem c{};
  for (uint32_t i = 0; i < e_; ++i) c[i] = a[i] ? p_ - a[i] : 0;
  return c;
}

Elem Fq::scale(uint32_t s, const Elem& a) const {
  s %= p_;
  Elem c{};
  for (uint32_t i = 0; i < e_; ++i) c[i] = static_cast<uint32_t>(uint64_t(s) * a[i] % p_);
  return c;
}

Elem Fq::mul(const Elem& a, const Elem& b) const {
  if (e_ == 1) {
    Elem c{};
    c[0] = static_cast<uint32_t>(uint64_t(a[0]) * b[0] % p_);
    return c;
  }
  uint64_t conv[2 * kMaxExtDegree - 1] = {0};
  for (uint32_t i = 0; i < e_; ++i) {
    if (!a[i]) continue;
    for (uint32_t j = 0; j < e_; ++j) conv[i + j] += uint64_t(a[i]) * b[j];
  }
  Elem c{};
  for (uint32_t i = 0; i < e_; ++i) c[i] = static_cast<uint32_t>(conv[i] % p_);
  for (uint32_t k = 0; k + 1 < e_; ++k) {
    uint64_t hi = conv[e_ + k] % p_;
    if (!hi) continue;
    for (uint32_t j = 0; j < e_; ++j)
      c[j] = static_cast<uint32_t>((c[j] + hi * red_[k][j]) % p_);
  }
  return c;
}

Elem Fq::pow(const Elem& a, uint64_t n) const {
  Elem r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

Elem Fq::inv(const Elem& a) const {
  if (is_zero(a)) throw std::invalid_argument("Fq::inv: zero");
  return pow(a, q_ - 2);
}

Elem Fq::frobenius(const Elem& a) const {
  if (e_ == 1) return a;
  Elem c{};
  for (uint32_t j = 0; j < e_; ++j) {
    if (!a[j]) continue;
    for (uint32_t i = 0; i < e_; ++i)
      c[i] = static_cast<uint32_t>((c[i] + uint64_t(a[j]) * frob_[j][i]) % p_);
  }
  return c;
}

uint32_t Fq::orbit_degree(const Elem& a) const {
  Elem x = frobenius(a);
  for (uint32_t d = 1; d <= e_; ++d) {
    if (x == a) return d;
    x = frobenius(x);
  }
  throw std::runtime_error("orbit_degree: element not fixed by frobenius^e");
}

bool Fq::is_square(const Elem& a) const {
  if (is_zero(a)) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

std::optional<Elem> Fq::sqrt(const Elem& a) const {
  if (is_zero(a)) return zero();
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks on the cyclic group of order q-1
  uint64_t m = q_ - 1;
  uint32_t s = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  if (s == 1) return pow(a, (q_ + 1) / 4);
  Elem nr{};
  for (uint64_t i = 2;; ++i) {
    nr = element(i);
    if (!is_zero(nr) && !is_square(nr)) break;
  }
  Elem c = pow(nr, m);
  Elem x = pow(a, (m + 1) / 2);
  Elem t = pow(a, m);
  uint32_t r = s;
  while (!(t == one())) {
    uint32_t i = 0;
    Elem tt = t;
    while (!(tt == one())) {
      tt = mul(tt, tt);
      ++i;
      if (i == r) return std::nullopt;  // unreachable for squares
    }
    Elem b = c;
    for (uint32_t j = 0; j + i + 1 < r; ++j) b = mul(b, b);
    x = mul(x, b);
    c = mul(b, b);
    t = mul(t, c);
    r = i;
  }
  return x;
}

std::string Fq::to_string(const Elem& a) const {
  if (e_ == 1) return std::to_string(a[0]);
  std::ostringstream os;
  os << '[';
  for (uint32_t i = 0; i < e_; ++i) {
    if (i) os << ',';
    os << a[i];
  }
  os << ']';
  return os.str();
}

std::vector<std::pair<Elem, int>> roots_univariate(const std::vector<uint32_t>& f_mod_p,
                                                   const Fq& target) {
  std::vector<Elem> lifted(f_mod_p.size());
  for (size_t i = 0; i < f_mod_p.size(); ++i) lifted[i] = target.from_uint(f_mod_p[i]);
  return roots_univariate(lifted, target);
}

std::vector<std::pair<Elem, int>> roots_univariate(const std::vector<Elem>& f, const Fq& target) {
  uni::Poly g(f);
  uni::normalize(target, g);
  if (g.empty()) throw std::invalid_argument("roots_univariate: zero polynomial");
  std::vector<std::pair<Elem, int>> out;
  if (uni::degree(g) == 0) return out;
  for (uint64_t i = 0; i < target.q(); ++i) {
    Elem x = target.element(i);
    if (!target.is_zero(uni::eval(target, g, x))) continue;
    int mult = 0;
    uni::Poly h = g;
    while (uni::degree(h) >= 1 && target.is_zero(uni::eval(target, h, x))) {
      h = uni::div_linear(target, h, x);
      ++mult;
    }
    out.emplace_back(x, mult);
  }
  return out;
}

namespace uni {

void normalize(const Fq& K, Poly& f) {
  while (!f.empty() && K.is_zero(f.back())) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Elem eval(const Fq& K, const Poly& f, const Elem& x) {
  Elem r = K.zero();
  for (size_t i = f.size(); i-- > 0;) r = K.add(K.mul(r, x), f[i]);
  return r;
}

Poly make_monic(const Fq& K, const Poly& f) {
  Poly g = f;
  normalize(K, g);
  if (g.empty()) return g;
  Elem c = K.inv(g.back());
  for (auto& a : g) a = K.mul(a, c);
  return g;
}

Poly rem(const Fq& K, Poly a, const Poly& b) {
  Poly d = b;
  normalize(K, d);
  if (d.empty()) throw std::invalid_argument("uni::rem: division by zero");
  normalize(K, a);
  Elem lead_inv = K.inv(d.back());
  while (degree(a) >= degree(d)) {
    Elem c = K.mul(a.back(), lead_inv);
    size_t shift = a.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i)
      a[shift + i] = K.sub(a[shift + i], K.mul(c, d[i]));
    normalize(K, a);
  }
  return a;
}

Poly gcd_monic(const Fq& K, Poly a, Poly b) {
  normalize(K, a);
  normalize(K, b);
  while (!b.empty()) {
    Poly r = rem(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(K, a);
}

Poly div_linear(const Fq& K, const Poly& f, const Elem& r) {
  // synthetic division by (t - r); remainder must be zero
  Poly q(f.size() - 1);
  Elem carry = K.zero();
  for (size_t i = f.size(); i-- > 1;) {
    carry = K.add(f[i], K.mul(carry, r));
    q[i - 1] = carry;
  }
  Elem remv = K.add(f[0], K.mul(carry, r));
  if (!K.is_zero(remv)) throw std::invalid_argument("div_linear: not a root");
  return q;
}

}  // namespace uni

const Fq& FieldTable::get(uint32_t p, uint32_t e) {
  for (auto& [key, fq] : overrides_)
    if (key.first == p && key.second == e) return *fq;
  auto key = std::make_pair(p, e);
  if (std::find(touched_.begin(), touched_.end(), key) == touched_.end()) touched_.push_back(key);
  return Fq::get(p, e);
}

void FieldTable::set_override(uint32_t p, uint32_t e, ModulusCoeffs modulus_low) {
  for (auto& [key, fq] : overrides_)
    if (key.first == p && key.second == e) {
      fq = std::make_unique<Fq>(p, e, std::move(modulus_low));
      return;
    }
  overrides_.emplace_back(std::make_pair(p, e),
                          std::make_unique<Fq>(p, e, std::move(modulus_low)));
}

bool FieldTable::has_override(uint32_t p, uint32_t e) const {
  for (auto& [key, fq] : overrides_)
    if (key.first == p && key.second == e) return true;
  return false;
}

std::vector<std::pair<std::pair<uint32_t, uint32_t>, ModulusCoeffs>> FieldTable::used() const {
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, ModulusCoeffs>> out;
  for (auto& [key, fq] : overrides_) out.emplace_back(key, fq->modulus_low());
  for (auto& key : touched_) {
    bool overridden = false;
    for (auto& [k2, fq] : overrides_)
      if (k2 == key) overridden = true;
    if (!overridden) out.emplace_back(key, Fq::get(key.first, key.second).modulus_low());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace genus4
