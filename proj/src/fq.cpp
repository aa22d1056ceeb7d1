#include "prohecke/fq.hpp"

#include <algorithm>
#include <stdexcept>

namespace prohecke {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over F_p as little-endian coefficient vectors.
using Poly = std::vector<int>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  int f = static_cast<int>(m.size()) - 1;
  std::vector<int> r(2 * f, 0);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // m is monic of degree f
  for (int d = 2 * f - 1; d >= f; --d) {
    int c = r[d];
    if (!c) continue;
    for (int k = 0; k <= f; ++k) r[d - f + k] = ((r[d - f + k] - c * m[k]) % p + p) % p;
  }
  r.resize(f);
  return r;
}

}  // namespace

Field::Field(int p, int f) : p_(p), f_(f) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (f < 1) throw std::invalid_argument("Field: f must be positive");
  long long q = 1;
  for (int i = 0; i < f; ++i) q *= p;
  if (q > 1024) throw std::invalid_argument("Field: q = p^f above 1024 is not supported");
  q_ = static_cast<int>(q);

  auto encode = [&](const Poly& a) {
    uint32_t v = 0;
    for (int i = f - 1; i >= 0; --i) v = v * p + a[i];
    return v;
  };
  auto decode = [&](uint32_t v) {
    Poly a(f);
    for (int i = 0; i < f; ++i) { a[i] = v % p; v /= p; }
    return a;
  };

  // Search moduli in lexicographic order of the non-leading coefficients; the
  // first one for which x has multiplicative order q-1 is primitive.
  bool found = false;
  for (uint32_t code = 0; code < static_cast<uint32_t>(q_) && !found; ++code) {
    Poly m = decode(code);
    m.push_back(1);
    if (f == 1) {
      // degree one: the generator is searched separately
      modulus_ = m;
      found = true;
      break;
    }
    if (m[0] == 0) continue;
    Poly x(f, 0);
    x[1 % f] = 1;
    Poly y = x;
    int order = 1;
    while (!(y[0] == 1 && std::all_of(y.begin() + 1, y.end(), [](int c) { return c == 0; }))) {
      y = poly_mulmod(y, x, m, p);
      ++order;
      if (order > q_) break;
    }
    if (order == q_ - 1) {
      modulus_ = m;
      found = true;
    }
  }
  if (!found) throw std::logic_error("Field: no primitive modulus found");

  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    Poly pa = decode(a);
    Poly na(f);
    for (int i = 0; i < f; ++i) na[i] = (p - pa[i]) % p;
    neg_[a] = encode(na);
    for (int b = 0; b < q_; ++b) {
      Poly pb = decode(b);
      Poly s(f);
      for (int i = 0; i < f; ++i) s[i] = (pa[i] + pb[i]) % p;
      add_[a * q_ + b] = encode(s);
      mul_[a * q_ + b] = encode(poly_mulmod(pa, pb, modulus_, p));
    }
  }

  // generator: x for f > 1, smallest primitive root for f = 1
  auto order_of = [&](uint32_t g) {
    int ord = 1;
    uint32_t y = g;
    while (y != 1) {
      y = mul(y, g);
      ++ord;
      if (ord > q_) return -1;
    }
    return ord;
  };
  if (q_ == 2) {
    gen_ = 1;
  } else if (f == 1) {
    for (uint32_t g = 2; g < static_cast<uint32_t>(q_); ++g)
      if (order_of(g) == q_ - 1) { gen_ = g; break; }
  } else {
    gen_ = p;  // digits (0,1,0,...) encode x
  }
  exp_.assign(q_ - 1, 1);
  log_.assign(q_, -1);
  uint32_t y = 1;
  for (int k = 0; k < q_ - 1; ++k) {
    exp_[k] = y;
    log_[y] = k;
    y = mul(y, gen_);
  }
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("Field: inverse of zero");
  int l = log_[a];
  return exp_[(q_ - 1 - l) % (q_ - 1)];
}

uint32_t Field::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<uint32_t>(r);  // prime-field elements are the constants
}

uint32_t Field::gen_pow(long long k) const {
  long long m = q_ - 1;
  long long r = k % m;
  if (r < 0) r += m;
  return exp_[r];
}

int Field::log(uint32_t a) const {
  if (a == 0) throw std::domain_error("Field: log of zero");
  return log_[a];
}

std::vector<int> Field::digits(uint32_t a) const {
  std::vector<int> d(f_);
  for (int i = 0; i < f_; ++i) { d[i] = a % p_; a /= p_; }
  return d;
}

std::string Field::str(uint32_t a) const {
  if (f_ == 1) return std::to_string(a);
  std::string s = "(";
  auto d = digits(a);
  for (int i = 0; i < f_; ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

}  // namespace prohecke
