#pragma once
// Coefficient domains: exact rationals, the quadratic extension Q(sqrt(-2)),
// prime fields F_p (odd p < 2^31), and complex doubles — plus the conversions
// between them and a uniform traits interface used by the polynomial layer.

#include <gmpxx.h>

#include <cassert>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace octocut {

using Rational = mpq_class;
using Cplx = std::complex<double>;

// Context needed to construct domain elements from scratch (only F_p uses it).
struct DomCtx {
  uint32_t p = 0;
};

// ---------------------------------------------------------------------------
// modular arithmetic helpers
// ---------------------------------------------------------------------------

inline uint32_t mod_add(uint32_t a, uint32_t b, uint32_t p) {
  uint64_t s = uint64_t(a) + b;
  return uint32_t(s >= p ? s - p : s);
}

inline uint32_t mod_sub(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint32_t mod_mul(uint32_t a, uint32_t b, uint32_t p) {
  return uint32_t((uint64_t(a) * b) % p);
}

inline uint32_t mod_pow(uint32_t base, uint64_t e, uint32_t p) {
  uint64_t acc = 1 % p, b = base % p;
  while (e) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return uint32_t(acc);
}

inline uint32_t mod_inv(uint32_t a, uint32_t p) {
  if (a % p == 0) throw std::domain_error("mod_inv: zero is not invertible");
  return mod_pow(a % p, p - 2, p);  // p prime
}

// Tonelli–Shanks square root mod an odd prime; returns the smaller of the two
// roots (canonical choice) or nullopt when a is a non-residue.
std::optional<uint32_t> sqrt_mod(uint32_t a, uint32_t p);

// ---------------------------------------------------------------------------
// F_p elements
// ---------------------------------------------------------------------------

struct Fp {
  uint32_t v = 0;
  uint32_t p = 0;  // 0 marks an uninitialized element (zero of any modulus)

  Fp() = default;
  Fp(uint32_t value, uint32_t prime) : v(value % prime), p(prime) {}

  static Fp from_int(long long n, uint32_t prime) {
    long long r = n % (long long)prime;
    if (r < 0) r += prime;
    return Fp(uint32_t(r), prime);
  }

  bool is_zero() const { return v == 0; }

  friend uint32_t common_p(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p) throw std::domain_error("Fp: modulus mismatch");
    return a.p ? a.p : b.p;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    uint32_t p = common_p(a, b);
    return p ? Fp(mod_add(a.v, b.v, p), p) : Fp();
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    uint32_t p = common_p(a, b);
    return p ? Fp(mod_sub(a.v, b.v, p), p) : Fp();
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    uint32_t p = common_p(a, b);
    return p ? Fp(mod_mul(a.v, b.v, p), p) : Fp();
  }
  Fp operator-() const { return p ? Fp(v ? p - v : 0, p) : Fp(); }
  Fp inv() const {
    if (!p) throw std::domain_error("Fp: inverse of uninitialized zero");
    return Fp(mod_inv(v, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p) return false;
    return a.v == b.v;
  }
};

// ---------------------------------------------------------------------------
// Q(sqrt(-2)): elements a + b*r with r^2 = -2, written (a+br2) in text form
// ---------------------------------------------------------------------------

struct QuadExt {
  Rational a = 0;
  Rational b = 0;

  QuadExt() = default;
  QuadExt(Rational x) : a(std::move(x)) {}
  QuadExt(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a + y.a, x.b + y.b);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a - y.a, x.b - y.b);
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a * y.a - 2 * x.b * y.b, x.a * y.b + x.b * y.a);
  }
  QuadExt operator-() const { return QuadExt(-a, -b); }
  QuadExt conj() const { return QuadExt(a, -b); }
  Rational norm() const { return a * a + 2 * b * b; }  // = x * conj(x)
  QuadExt inv() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("QuadExt: inverse of zero");
    return QuadExt(a / n, -b / n);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inv(); }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// ---------------------------------------------------------------------------
// conversions (explicit; the traits expose them too)
// ---------------------------------------------------------------------------

// rational -> F_p; throws when the denominator vanishes mod p.
inline Fp to_fp(const Rational& r, uint32_t p) {
  // mpz % with a negative operand keeps the sign; normalize by hand.
  mpz_class nm = r.get_num() % p;
  if (nm < 0) nm += p;
  mpz_class dm = r.get_den() % p;
  if (dm == 0) throw std::domain_error("to_fp: denominator divisible by p");
  uint32_t nv = uint32_t(nm.get_ui());
  uint32_t dv = uint32_t(dm.get_ui());
  return Fp(mod_mul(nv, mod_inv(dv, p), p), p);
}

// Q(sqrt(-2)) -> F_p via the canonical (smaller) square root of -2 mod p;
// throws when -2 is a non-residue.
inline Fp to_fp(const QuadExt& q, uint32_t p) {
  Fp ra = to_fp(q.a, p);
  if (q.b == 0) return ra;
  auto r = sqrt_mod(p - 2 % p, p);
  if (!r) throw std::domain_error("to_fp: -2 is not a square mod p");
  return ra + to_fp(q.b, p) * Fp(*r, p);
}

inline Cplx to_cplx(const Rational& r) { return Cplx(r.get_d(), 0.0); }
inline Cplx to_cplx(const QuadExt& q) {
  // sqrt(-2) maps to the principal branch i*sqrt(2)
  return Cplx(q.a.get_d(), q.b.get_d() * std::sqrt(2.0));
}

// ---------------------------------------------------------------------------
// textual helpers
// ---------------------------------------------------------------------------

std::string rational_to_string(const Rational& r);
std::optional<Rational> rational_from_string(std::string_view s);
std::string cplx_to_string(const Cplx& z);
std::optional<Cplx> cplx_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// domain traits
// ---------------------------------------------------------------------------

template <class C>
struct Dom;

template <>
struct Dom<Rational> {
  static const char* name() { return "q"; }
  static Rational zero(DomCtx = {}) { return Rational(0); }
  static Rational one(DomCtx = {}) { return Rational(1); }
  static Rational from_int(long long n, DomCtx = {}) { return Rational((long)n); }
  static bool is_zero(const Rational& r) { return r == 0; }
  static std::string str(const Rational& r) { return rational_to_string(r); }
  static std::optional<Rational> parse(std::string_view s, DomCtx = {}) {
    return rational_from_string(s);
  }
};

template <>
struct Dom<QuadExt> {
  static const char* name() { return "qr2"; }
  static QuadExt zero(DomCtx = {}) { return QuadExt(); }
  static QuadExt one(DomCtx = {}) { return QuadExt(Rational(1)); }
  static QuadExt from_int(long long n, DomCtx = {}) { return QuadExt(Rational((long)n)); }
  static bool is_zero(const QuadExt& q) { return q.is_zero(); }
  static std::string str(const QuadExt& q);
  static std::optional<QuadExt> parse(std::string_view s, DomCtx = {});
};

template <>
struct Dom<Fp> {
  static const char* name() { return "fp"; }
  static Fp zero(DomCtx ctx = {}) { return ctx.p ? Fp(0, ctx.p) : Fp(); }
  static Fp one(DomCtx ctx) {
    if (!ctx.p) throw std::domain_error("Dom<Fp>::one needs a modulus");
    return Fp(1, ctx.p);
  }
  static Fp from_int(long long n, DomCtx ctx) {
    if (!ctx.p) throw std::domain_error("Dom<Fp>::from_int needs a modulus");
    return Fp::from_int(n, ctx.p);
  }
  static bool is_zero(const Fp& x) { return x.v == 0; }
  static std::string str(const Fp& x) { return std::to_string(x.v); }
  static std::optional<Fp> parse(std::string_view s, DomCtx ctx);
};

template <>
struct Dom<Cplx> {
  static const char* name() { return "c"; }
  static Cplx zero(DomCtx = {}) { return Cplx(0, 0); }
  static Cplx one(DomCtx = {}) { return Cplx(1, 0); }
  static Cplx from_int(long long n, DomCtx = {}) { return Cplx(double(n), 0); }
  static bool is_zero(const Cplx& z) { return z == Cplx(0, 0); }
  static std::string str(const Cplx& z) { return cplx_to_string(z); }
  static std::optional<Cplx> parse(std::string_view s, DomCtx = {}) {
    return cplx_from_string(s);
  }
};

// exact domains admit bitwise zero tests; Cplx needs tolerances
template <class C>
inline constexpr bool dom_is_exact = true;
template <>
inline constexpr bool dom_is_exact<Cplx> = false;

// uniform rational -> C embedding (Fp requires ctx.p)
template <class C>
C from_rational(const Rational& r, DomCtx ctx);
template <>
inline Rational from_rational<Rational>(const Rational& r, DomCtx) { return r; }
template <>
inline QuadExt from_rational<QuadExt>(const Rational& r, DomCtx) { return QuadExt(r); }
template <>
inline Cplx from_rational<Cplx>(const Rational& r, DomCtx) { return to_cplx(r); }
template <>
inline Fp from_rational<Fp>(const Rational& r, DomCtx ctx) {
  if (!ctx.p) throw std::domain_error("from_rational<Fp> needs a modulus");
  return to_fp(r, ctx.p);
}

}  // namespace octocut
