#pragma once
// Sparse multivariate polynomials over a pluggable coefficient domain, with a
// graded-lexicographic canonical term order, formal differentiation,
// substitution, evaluation, coefficient mapping, and an exact text format.

#include "octocut/domains.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <vector>

namespace octocut {

using Expo = std::vector<int32_t>;

inline int degree_of(const Expo& e) {
  int d = 0;
  for (int32_t x : e) d += x;
  return d;
}

// Multiply a coefficient by a small integer using only ring operations, so no
// construction context (e.g. an F_p modulus) is needed.
template <class C>
C mul_int(const C& c, long long n) {
  C acc = c;
  acc -= c;  // additive zero carrying any internal context of c
  bool neg = n < 0;
  unsigned long long m = neg ? (unsigned long long)(-n) : (unsigned long long)n;
  C base = c;
  while (m) {
    if (m & 1) acc += base;
    base += base;
    m >>= 1;
  }
  if (neg) return -acc;
  return acc;
}

// Graded-lex, highest term first: compare by total degree, then by
// lexicographically larger exponent vector.  Map iteration therefore walks
// terms in canonical print order.
struct TermOrder {
  bool operator()(const Expo& x, const Expo& y) const {
    int dx = degree_of(x), dy = degree_of(y);
    if (dx != dy) return dx > dy;
    return x > y;
  }
};

template <class C>
class Poly {
 public:
  int nvars = 0;
  std::map<Expo, C, TermOrder> terms;

  Poly() = default;
  explicit Poly(int n) : nvars(n) {}

  static Poly zero(int n) { return Poly(n); }

  static Poly constant(int n, C v) {
    Poly p(n);
    if (!Dom<C>::is_zero(v)) p.terms.emplace(Expo(n, 0), std::move(v));
    return p;
  }

  static Poly variable(int n, int idx, C one_val) {
    Poly p(n);
    Expo e(n, 0);
    e.at(idx) = 1;
    p.terms.emplace(std::move(e), std::move(one_val));
    return p;
  }

  static Poly monomial(int n, Expo e, C v) {
    Poly p(n);
    if (!Dom<C>::is_zero(v)) p.terms.emplace(std::move(e), std::move(v));
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  size_t term_count() const { return terms.size(); }

  void add_term(const Expo& e, const C& c) {
    if (Dom<C>::is_zero(c)) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (Dom<C>::is_zero(it->second)) terms.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  Poly operator-() const {
    Poly r(nvars);
    for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.nvars);
    Expo e(a.nvars);
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const C& k) const {
    Poly r(nvars);
    if (Dom<C>::is_zero(k)) return r;
    for (const auto& [e, c] : terms) {
      C v = c * k;
      if (!Dom<C>::is_zero(v)) r.terms.emplace(e, std::move(v));
    }
    return r;
  }

  Poly mul_monomial(const Expo& m, const C& k) const {
    Poly r(nvars);
    if (Dom<C>::is_zero(k)) return r;
    Expo e(nvars);
    for (const auto& [et, c] : terms) {
      for (int i = 0; i < nvars; ++i) e[i] = et[i] + m[i];
      C v = c * k;
      if (!Dom<C>::is_zero(v)) r.terms.emplace(e, std::move(v));
    }
    return r;
  }

  Poly derivative(int var) const {
    Poly r(nvars);
    for (const auto& [e, c] : terms) {
      if (e[var] == 0) continue;
      Expo d = e;
      d[var] -= 1;
      r.add_term(d, mul_int(c, e[var]));
    }
    return r;
  }

  // degree of the zero polynomial is reported as -1
  int total_degree() const {
    return terms.empty() ? -1 : degree_of(terms.begin()->first);
  }

  std::optional<int> homogeneous_degree() const {
    if (terms.empty()) return 0;
    int d = degree_of(terms.begin()->first);
    for (const auto& [e, c] : terms)
      if (degree_of(e) != d) return std::nullopt;
    return d;
  }

  C coeff(const Expo& e, DomCtx ctx = {}) const {
    auto it = terms.find(e);
    return it == terms.end() ? Dom<C>::zero(ctx) : it->second;
  }

  C evaluate(std::span<const C> pt, DomCtx ctx = {}) const {
    if ((int)pt.size() != nvars) throw std::invalid_argument("evaluate: point size mismatch");
    C acc = Dom<C>::zero(ctx);
    for (const auto& [e, c] : terms) {
      C t = c;
      for (int i = 0; i < nvars; ++i)
        for (int32_t k = 0; k < e[i]; ++k) t *= pt[i];
      acc += t;
    }
    return acc;
  }

  // General substitution: variable i is replaced by images[i]; all images
  // share one target variable count.
  Poly substitute(const std::vector<Poly>& images) const {
    if ((int)images.size() != nvars)
      throw std::invalid_argument("substitute: image count mismatch");
    int nout = images.empty() ? nvars : images[0].nvars;
    for (const auto& im : images)
      if (im.nvars != nout) throw std::invalid_argument("substitute: ragged image rings");
    // cache of image powers, cache[i][k-1] = images[i]^k
    std::vector<std::vector<Poly>> pw(nvars);
    auto power = [&](int i, int32_t k) -> const Poly& {
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(images[i]);
      while ((int)cache.size() < k) cache.push_back(cache.back() * images[i]);
      return cache[k - 1];
    };
    Poly out(nout);
    for (const auto& [e, c] : terms) {
      Poly t = Poly::constant(nout, c);
      for (int i = 0; i < nvars; ++i)
        if (e[i] > 0) t = t * power(i, e[i]);
      out += t;
    }
    return out;
  }

  // Substitution by degree<=1 forms in the same ring; unlisted variables map
  // to themselves.  ctx is needed only for F_p coefficients (identity images
  // require a unit).
  Poly substitute_linear(const std::map<int, Poly>& sub, DomCtx ctx = {}) const {
    std::vector<Poly> images;
    images.reserve(nvars);
    for (int i = 0; i < nvars; ++i) {
      auto it = sub.find(i);
      if (it == sub.end()) {
        images.push_back(Poly::variable(nvars, i, Dom<C>::one(ctx)));
      } else {
        if (it->second.nvars != nvars)
          throw std::invalid_argument("substitute_linear: ring mismatch");
        if (it->second.total_degree() > 1)
          throw std::invalid_argument("substitute_linear: image degree exceeds 1");
        images.push_back(it->second);
      }
    }
    return substitute(images);
  }

  template <class To, class F>
  Poly<To> map_coeffs(F f, int nout = -1) const {
    Poly<To> r(nout < 0 ? nvars : nout);
    for (const auto& [e, c] : terms) {
      To v = f(c);
      if (!Dom<To>::is_zero(v)) r.terms.emplace(e, std::move(v));
    }
    return r;
  }

  // torus weight of an eigenvector polynomial: the common value of
  // sum_i w[i]*e[i] mod `mod` over all terms, or nullopt
  std::optional<int> weight_class(std::span<const int> w, int mod) const {
    if ((int)w.size() != nvars) throw std::invalid_argument("weight_class: size mismatch");
    std::optional<int> cls;
    for (const auto& [e, c] : terms) {
      long s = 0;
      for (int i = 0; i < nvars; ++i) s += (long)w[i] * e[i];
      int v = int(((s % mod) + mod) % mod);
      if (!cls)
        cls = v;
      else if (*cls != v)
        return std::nullopt;
    }
    return cls;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
  }

 private:
  void check_same(const Poly& o) const {
    if (nvars != o.nvars) throw std::invalid_argument("poly: variable count mismatch");
  }
};

// ---------------------------------------------------------------------------
// variable sets and the text format
//
// Canonical form, e.g.:  -1*t10^2 + 1/2*t2*t5 - 1*t9*t11*d2
// Coefficients are always explicit; terms in graded-lex descending order;
// quadratic-extension coefficients print parenthesized, e.g. (3+2r2)*t1*t6.
// ---------------------------------------------------------------------------

struct VarSet {
  std::vector<std::string> names;

  int index_of(std::string_view s) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return (int)i;
    return -1;
  }
  int size() const { return (int)names.size(); }
};

inline VarSet numbered_vars(const std::string& prefix, int n, int start = 1) {
  VarSet v;
  for (int i = 0; i < n; ++i) v.names.push_back(prefix + std::to_string(start + i));
  return v;
}

inline VarSet named_vars(std::vector<std::string> names) { return VarSet{std::move(names)}; }

namespace detail {

// Split a polynomial string into signed term strings.  A '+'/'-' at paren
// depth 0 separates terms unless it is part of a float exponent ("1e-3").
std::vector<std::pair<int, std::string>> split_terms(std::string_view s);

}  // namespace detail

template <class C>
std::string poly_to_text(const Poly<C>& p, const VarSet& vars) {
  if ((int)vars.names.size() != p.nvars)
    throw std::invalid_argument("poly_to_text: variable set mismatch");
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    std::string cs = Dom<C>::str(c);
    bool neg = !cs.empty() && cs[0] == '-';
    std::string core = neg ? cs.substr(1) : cs;
    std::string body = core;
    for (int i = 0; i < p.nvars; ++i) {
      if (e[i] == 0) continue;
      body += "*" + vars.names[i];
      if (e[i] > 1) body += "^" + std::to_string(e[i]);
    }
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

template <class C>
Poly<C> poly_from_text(std::string_view s, const VarSet& vars, DomCtx ctx = {}) {
  Poly<C> p((int)vars.names.size());
  auto strip = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  std::string_view body = strip(s);
  if (body.empty() || body == "0") return p;
  for (auto& [sign, term] : detail::split_terms(body)) {
    std::string_view tv = strip(term);
    if (tv.empty()) throw std::runtime_error("poly parse: empty term");
    // split on '*' at depth 0
    std::vector<std::string> factors;
    {
      int depth = 0;
      std::string cur;
      for (char ch : tv) {
        if (ch == '(') depth++;
        if (ch == ')') depth--;
        if (ch == '*' && depth == 0) {
          factors.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      factors.push_back(cur);
    }
    C coeff = Dom<C>::one(ctx);
    bool have_coeff = false;
    Expo e((int)vars.names.size(), 0);
    for (size_t fi = 0; fi < factors.size(); ++fi) {
      std::string_view f = strip(factors[fi]);
      if (f.empty()) throw std::runtime_error("poly parse: empty factor");
      // variable factor: name[^exp]
      std::string name(f);
      int exp = 1;
      if (auto caret = f.find('^'); caret != std::string_view::npos) {
        name = std::string(strip(f.substr(0, caret)));
        std::string es(strip(f.substr(caret + 1)));
        try {
          exp = std::stoi(es);
        } catch (...) {
          throw std::runtime_error("poly parse: bad exponent '" + es + "'");
        }
        if (exp < 0) throw std::runtime_error("poly parse: negative exponent");
      }
      int vi = vars.index_of(name);
      if (vi >= 0) {
        e[vi] += exp;
        continue;
      }
      // not a variable: must be the coefficient, allowed only as first factor
      if (fi != 0 || have_coeff)
        throw std::runtime_error("poly parse: unknown variable '" + std::string(f) + "'");
      auto c = Dom<C>::parse(f, ctx);
      if (!c) throw std::runtime_error("poly parse: bad coefficient '" + std::string(f) + "'");
      coeff = *c;
      have_coeff = true;
    }
    if (sign < 0) coeff = -coeff;
    p.add_term(e, coeff);
  }
  return p;
}

// whole-polynomial coefficient conversions
template <class C>
Poly<Fp> poly_to_fp(const Poly<C>& p, uint32_t prime) {
  return p.template map_coeffs<Fp>([&](const C& c) { return to_fp(c, prime); });
}
template <class C>
Poly<Cplx> poly_to_cplx(const Poly<C>& p) {
  return p.template map_coeffs<Cplx>([](const C& c) { return to_cplx(c); });
}
inline Poly<QuadExt> poly_to_quadext(const Poly<Rational>& p) {
  return p.template map_coeffs<QuadExt>([](const Rational& c) { return QuadExt(c); });
}
template <class C>
Poly<C> poly_from_rational(const Poly<Rational>& p, DomCtx ctx = {}) {
  return p.template map_coeffs<C>([&](const Rational& c) { return from_rational<C>(c, ctx); });
}

}  // namespace octocut
