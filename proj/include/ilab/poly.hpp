#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ilab/ff.hpp"

namespace ilab {

// Dense univariate polynomial, ascending coefficients, no trailing zeros.
class Polynomial {
 public:
  explicit Polynomial(const FiniteField& field);
  Polynomial(const FiniteField& field, std::vector<FieldElement> coeffs);
  // Integer coefficients reduced into the field.
  static Polynomial from_ints(const FiniteField& field, const std::vector<std::int64_t>& coeffs);
  static Polynomial constant(const FieldElement& c);
  static Polynomial monomial(const FieldElement& c, int degree);
  // y - root
  static Polynomial linear_root(const FieldElement& root);

  const FiniteField& field() const { return field_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_nonzero_constant() const { return coeffs_.size() == 1; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  // Zero beyond the degree.
  FieldElement coeff(int k) const;
  FieldElement leading() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scale(const FieldElement& c) const;
  Polynomial pow(int e) const;
  std::pair<Polynomial, Polynomial> divrem(const Polynomial& divisor) const;
  Polynomial operator/(const Polynomial& o) const { return divrem(o).first; }
  Polynomial operator%(const Polynomial& o) const { return divrem(o).second; }
  FieldElement eval(const FieldElement& y) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  Polynomial lift(const FiniteField& target) const;

  bool operator==(const Polynomial& o) const;

  std::string to_string(const std::string& var = "y") const;

 private:
  void trim();
  FiniteField field_;
  std::vector<FieldElement> coeffs_;
};

bool is_nonzero_constant(const Polynomial& f);

Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Number of roots (over the algebraic closure) of each multiplicity:
// result[k] = count of distinct roots with multiplicity exactly k.
// Throws InvariantViolation if some multiplicity is divisible by p.
std::vector<int> root_multiplicities(const Polynomial& f);

// Res_{m,n}(f, g) with f of exact degree m and g read with formal degree n.
FieldElement resultant(const Polynomial& f, const Polynomial& g, int formal_deg_g);
FieldElement resultant(const Polynomial& f, const Polynomial& g);

// Determinant of the Sylvester matrix; slow, used as an oracle.
FieldElement sylvester_resultant(const Polynomial& f, int deg_f, const Polynomial& g, int deg_g);

// Polynomial through (xs[i], ys[i]).
Polynomial interpolate(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys);

// f(x, y) = c0(y) + x * c1(y).
struct XLinearPoly {
  Polynomial c0;
  Polynomial c1;

  // Formal y-degree.
  int degree_y() const { return std::max(c0.degree(), c1.degree()); }
  Polynomial at(const FieldElement& x) const;
  XLinearPoly derivative_y() const { return {c0.derivative(), c1.derivative()}; }
};

// Res_y(f, h) as a polynomial in x, computed over F_{p^2} by evaluation and interpolation.
// f must be monic in y.
Polynomial resultant_y(const XLinearPoly& f, const XLinearPoly& h);

// Res = c * x^e with c != 0; returns e.
std::optional<int> unit_times_power_of_x(const Polynomial& res);

}  // namespace ilab
