#include "knotlab/laurent.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace knotlab {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r))
    throw CoefficientOverflow("polynomial coefficient overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r))
    throw CoefficientOverflow("polynomial coefficient overflow in multiplication");
  return r;
}

bool term_less(const LaurentPoly2::Term &x, const LaurentPoly2::Term &y) {
  return x.a != y.a ? x.a < y.a : x.z < y.z;
}

// Merge two sorted term lists; `sign` is +1 or -1 for the second operand.
std::vector<LaurentPoly2::Term> merge(const std::vector<LaurentPoly2::Term> &p,
                                      const std::vector<LaurentPoly2::Term> &q, int sign) {
  std::vector<LaurentPoly2::Term> out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && term_less(p[i], q[j]))) {
      out.push_back(p[i++]);
    } else if (i == p.size() || term_less(q[j], p[i])) {
      auto t = q[j++];
      if (sign < 0)
        t.coeff = checked_mul(t.coeff, -1);
      out.push_back(t);
    } else {
      const std::int64_t c =
          sign > 0 ? checked_add(p[i].coeff, q[j].coeff) : checked_add(p[i].coeff, checked_mul(q[j].coeff, -1));
      if (c != 0)
        out.push_back({p[i].a, p[i].z, c});
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace

LaurentPoly2 LaurentPoly2::monomial(std::int64_t c, int a_pow, int z_pow) {
  LaurentPoly2 p;
  if (c != 0)
    p.terms_.push_back({a_pow, z_pow, c});
  return p;
}

LaurentPoly2 LaurentPoly2::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  LaurentPoly2 p;
  for (const auto &t : terms) {
    if (!p.terms_.empty() && p.terms_.back().a == t.a && p.terms_.back().z == t.z)
      p.terms_.back().coeff = checked_add(p.terms_.back().coeff, t.coeff);
    else
      p.terms_.push_back(t);
  }
  std::erase_if(p.terms_, [](const Term &t) { return t.coeff == 0; });
  return p;
}

LaurentPoly2 &LaurentPoly2::operator+=(const LaurentPoly2 &o) {
  if (o.terms_.empty())
    return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

LaurentPoly2 &LaurentPoly2::operator-=(const LaurentPoly2 &o) {
  if (o.terms_.empty())
    return *this;
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

LaurentPoly2 LaurentPoly2::operator-() const { return times_monomial(-1, 0, 0); }

LaurentPoly2 operator*(const LaurentPoly2 &p, const LaurentPoly2 &q) {
  std::vector<LaurentPoly2::Term> out;
  out.reserve(p.terms_.size() * q.terms_.size());
  for (const auto &x : p.terms_)
    for (const auto &y : q.terms_)
      out.push_back({x.a + y.a, x.z + y.z, checked_mul(x.coeff, y.coeff)});
  return LaurentPoly2::from_terms(std::move(out));
}

LaurentPoly2 LaurentPoly2::times_monomial(std::int64_t c, int da, int dz) const {
  LaurentPoly2 r;
  if (c == 0)
    return r;
  r.terms_.reserve(terms_.size());
  for (const auto &t : terms_)
    r.terms_.push_back({t.a + da, t.z + dz, checked_mul(t.coeff, c)});
  return r;
}

LaurentPoly2 LaurentPoly2::mirrored() const {
  std::vector<Term> t = terms_;
  for (auto &x : t)
    x.a = -x.a;
  return from_terms(std::move(t));
}

LaurentPoly2 LaurentPoly2::pow(unsigned e) const {
  LaurentPoly2 result = constant(1);
  LaurentPoly2 base = *this;
  while (e) {
    if (e & 1u)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

std::string LaurentPoly2::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i)
      out += " + ";
    const auto &t = terms_[i];
    out += std::to_string(t.coeff) + "a^" + std::to_string(t.a) + "z^" + std::to_string(t.z);
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::string_view text) {
  throw std::invalid_argument("malformed polynomial: " + std::string(text));
}

template <class Int> Int read_int(std::string_view &s, std::string_view whole) {
  Int v{};
  const char *b = s.data();
  const char *e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{})
    parse_fail(whole);
  s.remove_prefix(static_cast<std::size_t>(ptr - b));
  return v;
}

void expect(std::string_view &s, char c, std::string_view whole) {
  if (s.empty() || s.front() != c)
    parse_fail(whole);
  s.remove_prefix(1);
}

void skip_spaces(std::string_view &s) {
  while (!s.empty() && s.front() == ' ')
    s.remove_prefix(1);
}

} // namespace

LaurentPoly2 LaurentPoly2::parse(std::string_view text) {
  std::string_view s = text;
  skip_spaces(s);
  if (s == "0")
    return {};
  std::vector<Term> terms;
  while (true) {
    skip_spaces(s);
    Term t;
    t.coeff = read_int<std::int64_t>(s, text);
    expect(s, 'a', text);
    expect(s, '^', text);
    t.a = read_int<int>(s, text);
    expect(s, 'z', text);
    expect(s, '^', text);
    t.z = read_int<int>(s, text);
    terms.push_back(t);
    skip_spaces(s);
    if (s.empty())
      break;
    expect(s, '+', text);
  }
  return from_terms(std::move(terms));
}

std::size_t LaurentPoly2Hash::operator()(const LaurentPoly2 &p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (const auto &t : p.terms()) {
    for (std::int64_t v : {std::int64_t(t.a), std::int64_t(t.z), t.coeff}) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

} // namespace knotlab
