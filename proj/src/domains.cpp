#include "octocut/domains.hpp"
#include "octocut/poly.hpp"

#include <cctype>
#include <cstring>

namespace octocut {

// ---------------------------------------------------------------------------
// Tonelli–Shanks
// ---------------------------------------------------------------------------

std::optional<uint32_t> sqrt_mod(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) return 0u;
  if (p == 2) return a;
  if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;  // Euler criterion
  uint32_t r;
  if (p % 4 == 3) {
    r = mod_pow(a, (p + 1) / 4, p);
  } else {
    // write p-1 = q * 2^s with q odd
    uint32_t q = p - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    // find a quadratic non-residue z (deterministic scan)
    uint32_t z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
    uint32_t m = s;
    uint32_t c = mod_pow(z, q, p);
    uint32_t t = mod_pow(a, q, p);
    r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
      uint32_t i = 0, tt = t;
      while (tt != 1) {
        tt = mod_mul(tt, tt, p);
        ++i;
      }
      uint32_t b = mod_pow(c, 1u << (m - i - 1), p);
      m = i;
      c = mod_mul(b, b, p);
      t = mod_mul(t, c, p);
      r = mod_mul(r, b, p);
    }
  }
  return std::min(r, p - r);
}

// ---------------------------------------------------------------------------
// rational strings
// ---------------------------------------------------------------------------

std::string rational_to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> rational_from_string(std::string_view s) {
  if (s.size() > 1 && s.front() == '+') s.remove_prefix(1);  // GMP rejects a leading '+'
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (!(std::isdigit((unsigned char)c) || c == '-' || c == '+' || c == '/'))
      return std::nullopt;
  mpq_t q;
  mpq_init(q);
  std::string buf(s);
  if (mpq_set_str(q, buf.c_str(), 10) != 0) {
    mpq_clear(q);
    return std::nullopt;
  }
  if (mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    return std::nullopt;
  }
  mpq_canonicalize(q);
  Rational out(q);
  mpq_clear(q);
  return out;
}

// ---------------------------------------------------------------------------
// complex strings: canonical "(re±imi)" when im != 0, bare real otherwise
// ---------------------------------------------------------------------------

static std::string double_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cplx_to_string(const Cplx& z) {
  if (z.imag() == 0.0) return double_str(z.real());
  std::string im = double_str(std::abs(z.imag()));
  return "(" + double_str(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i)";
}

// Split "a±bX" at the top-level sign separating the two parts (skipping a
// leading sign and exponent signs like 1e-3); returns position or npos.
static size_t find_split_sign(std::string_view s) {
  for (size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (c != '+' && c != '-') continue;
    char prev = s[i - 1];
    if (prev == 'e' || prev == 'E') continue;
    return i;
  }
  return std::string_view::npos;
}

std::optional<Cplx> cplx_from_string(std::string_view s) {
  auto strip = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  s = strip(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = strip(s.substr(1, s.size() - 2));
  if (s.empty()) return std::nullopt;
  auto parse_d = [](std::string_view v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    std::string buf(v);
    char* end = nullptr;
    double x = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) return std::nullopt;
    return x;
  };
  bool has_i = !s.empty() && s.back() == 'i';
  if (!has_i) {
    auto x = parse_d(s);
    if (!x) return std::nullopt;
    return Cplx(*x, 0.0);
  }
  std::string_view body = s.substr(0, s.size() - 1);  // drop trailing 'i'
  size_t sp = find_split_sign(body);
  if (sp == std::string_view::npos) {
    // pure imaginary: "2i", "-1.5i", "i", "-i"
    std::string_view im = strip(body);
    if (im.empty() || im == "+") return Cplx(0.0, 1.0);
    if (im == "-") return Cplx(0.0, -1.0);
    auto y = parse_d(im);
    if (!y) return std::nullopt;
    return Cplx(0.0, *y);
  }
  auto re = parse_d(strip(body.substr(0, sp)));
  std::string_view ims = strip(body.substr(sp));
  std::optional<double> im;
  if (ims == "+")
    im = 1.0;
  else if (ims == "-")
    im = -1.0;
  else
    im = parse_d(ims);
  if (!re || !im) return std::nullopt;
  return Cplx(*re, *im);
}

// ---------------------------------------------------------------------------
// quadratic extension strings
// ---------------------------------------------------------------------------

std::string Dom<QuadExt>::str(const QuadExt& q) {
  if (q.b == 0) return rational_to_string(q.a);
  Rational ab = q.b < 0 ? Rational(-q.b) : q.b;
  return "(" + rational_to_string(q.a) + (q.b < 0 ? "-" : "+") + rational_to_string(ab) + "r2)";
}

std::optional<QuadExt> Dom<QuadExt>::parse(std::string_view s, DomCtx) {
  auto strip = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  s = strip(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = strip(s.substr(1, s.size() - 2));
  if (s.empty()) return std::nullopt;
  bool has_r2 = s.size() >= 2 && s.substr(s.size() - 2) == "r2";
  if (!has_r2) {
    auto r = rational_from_string(s);
    if (!r) return std::nullopt;
    return QuadExt(*r);
  }
  std::string_view body = s.substr(0, s.size() - 2);
  size_t sp = find_split_sign(body);
  if (sp == std::string_view::npos) {
    // pure r2 multiple: "2r2", "-1/2r2", "r2"
    std::string_view bs = strip(body);
    if (bs.empty() || bs == "+") return QuadExt(Rational(0), Rational(1));
    if (bs == "-") return QuadExt(Rational(0), Rational(-1));
    auto b = rational_from_string(bs);
    if (!b) return std::nullopt;
    return QuadExt(Rational(0), *b);
  }
  auto a = rational_from_string(strip(body.substr(0, sp)));
  std::string_view bsv = strip(body.substr(sp));
  std::optional<Rational> b;
  if (bsv == "+")
    b = Rational(1);
  else if (bsv == "-")
    b = Rational(-1);
  else
    b = rational_from_string(bsv);
  if (!a || !b) return std::nullopt;
  return QuadExt(*a, *b);
}

std::optional<Fp> Dom<Fp>::parse(std::string_view s, DomCtx ctx) {
  if (!ctx.p || s.empty()) return std::nullopt;
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit((unsigned char)s[i])) return std::nullopt;
    v = v * 10 + (s[i] - '0');
    if (v > (1ll << 40)) v %= ctx.p;  // keep bounded for long digit strings
  }
  return Fp::from_int(neg ? -v : v, ctx.p);
}

// ---------------------------------------------------------------------------
// polynomial text splitting
// ---------------------------------------------------------------------------

namespace detail {

std::vector<std::pair<int, std::string>> split_terms(std::string_view s) {
  std::vector<std::pair<int, std::string>> out;
  int depth = 0;
  int sign = +1;
  std::string cur;
  size_t i = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    sign = s[0] == '-' ? -1 : +1;
    i = 1;
  }
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') depth++;
    if (c == ')') depth--;
    if ((c == '+' || c == '-') && depth == 0) {
      char prev = i ? s[i - 1] : '\0';
      bool is_exp = (prev == 'e' || prev == 'E') && i + 1 < s.size() &&
                    std::isdigit((unsigned char)s[i + 1]);
      if (!is_exp) {
        out.emplace_back(sign, cur);
        cur.clear();
        sign = c == '-' ? -1 : +1;
        continue;
      }
    }
    cur += c;
  }
  out.emplace_back(sign, cur);
  return out;
}

}  // namespace detail

}  // namespace octocut
