#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knotlab {

/// Thrown when an integer coefficient leaves the int64 range.
struct CoefficientOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// Exact Laurent polynomial in two variables a and z with int64
/// coefficients. Terms are kept sorted by (a-power, z-power) with no zero
/// coefficients, so structural equality is polynomial equality.
class LaurentPoly2 {
public:
  struct Term {
    int a = 0;
    int z = 0;
    std::int64_t coeff = 0;
    friend bool operator==(const Term &, const Term &) = default;
  };

  LaurentPoly2() = default;
  static LaurentPoly2 constant(std::int64_t c) { return monomial(c, 0, 0); }
  static LaurentPoly2 monomial(std::int64_t c, int a_pow, int z_pow);
  /// Builds from arbitrary terms, merging duplicates and dropping zeros.
  static LaurentPoly2 from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term> &terms() const { return terms_; }

  LaurentPoly2 &operator+=(const LaurentPoly2 &o);
  LaurentPoly2 &operator-=(const LaurentPoly2 &o);
  friend LaurentPoly2 operator+(LaurentPoly2 p, const LaurentPoly2 &q) { return p += q; }
  friend LaurentPoly2 operator-(LaurentPoly2 p, const LaurentPoly2 &q) { return p -= q; }
  friend LaurentPoly2 operator*(const LaurentPoly2 &p, const LaurentPoly2 &q);
  LaurentPoly2 operator-() const;

  /// Product with c * a^da * z^dz.
  LaurentPoly2 times_monomial(std::int64_t c, int da, int dz) const;

  /// Substitutes a -> a^-1 (the HOMFLYPT polynomial of the mirror image).
  LaurentPoly2 mirrored() const;

  LaurentPoly2 pow(unsigned e) const;

  friend bool operator==(const LaurentPoly2 &, const LaurentPoly2 &) = default;

  /// Canonical text: "c1a^i1z^j1 + c2a^i2z^j2 + ..." in (i, j) order; "0"
  /// for the zero polynomial.
  std::string to_string() const;
  static LaurentPoly2 parse(std::string_view text);

private:
  std::vector<Term> terms_;
};

/// Product of two polynomials (named form of operator*).
inline LaurentPoly2 poly_mul(const LaurentPoly2 &p, const LaurentPoly2 &q) { return p * q; }

struct LaurentPoly2Hash {
  std::size_t operator()(const LaurentPoly2 &p) const noexcept;
};

} // namespace knotlab
