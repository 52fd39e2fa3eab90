#pragma once

#include <map>
#include <vector>

#include "tbg/group.hpp"

namespace tbg {

// Polynomial in the length variable t with arbitrary-precision integer
// coefficients. Exponents are non-negative; no zeros are stored.
class PolyT {
 public:
  PolyT() = default;
  static PolyT zero() { return PolyT(); }
  static PolyT one() { return monomial(0, 1); }
  static PolyT monomial(int exponent, Int coefficient);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  Int coeff(int exponent) const;
  void add_coeff(int exponent, const Int& value);
  const std::map<int, Int>& terms() const { return coeffs_; }

  PolyT& operator+=(const PolyT& other);
  PolyT& operator-=(const PolyT& other);
  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator*(const PolyT& a, const PolyT& b);
  PolyT& operator*=(const PolyT& other) { return *this = *this * other; }
  PolyT negated() const;
  PolyT shifted(int by) const;  // multiply by t^by

  // Quotient of an exact division; throws if the division leaves a remainder.
  PolyT divided_exact(const PolyT& divisor) const;

  Int content() const;  // gcd of coefficients, 0 for zero polynomial
  Int leading_coeff() const;
  std::vector<Int> coefficients_ascending() const;
  std::vector<Int> expand(int order) const;  // power-series truncation of the polynomial

  friend bool operator==(const PolyT&, const PolyT&) = default;

 private:
  std::map<int, Int> coeffs_;
};

PolyT poly_gcd(PolyT a, PolyT b);

// Rational function in t. The denominator is content-normalized with a
// positive leading coefficient; common polynomial factors are removed.
class RationalT {
 public:
  RationalT() : num_(PolyT::zero()), den_(PolyT::one()) {}
  RationalT(PolyT numerator, PolyT denominator);
  static RationalT from_poly(PolyT p) { return RationalT(std::move(p), PolyT::one()); }

  const PolyT& numerator() const { return num_; }
  const PolyT& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalT& operator+=(const RationalT& other);
  RationalT& operator-=(const RationalT& other);
  friend RationalT operator+(RationalT a, const RationalT& b) { return a += b; }
  friend RationalT operator-(RationalT a, const RationalT& b) { return a -= b; }
  friend RationalT operator*(const RationalT& a, const RationalT& b);
  RationalT& operator*=(const RationalT& other) { return *this = *this * other; }

  friend bool operator==(const RationalT& a, const RationalT& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  void normalize();
  PolyT num_;
  PolyT den_;
};

// First N+1 power-series coefficients of R; the denominator needs a nonzero
// constant term.
std::vector<Int> expand_coeffs(const RationalT& R, int N);

// Solves A x = b exactly over polynomials by fraction-free elimination.
// The solution is x[i] = numerators[i] / denominator. The result is checked
// against the system; failure is a hard error.
struct PolySolve {
  std::vector<PolyT> numerators;
  PolyT denominator;
};
PolySolve solve_poly_system(std::vector<std::vector<PolyT>> A, std::vector<PolyT> b);

}  // namespace tbg
