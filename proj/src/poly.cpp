#include "ilab/poly.hpp"

#include <algorithm>

#include "ilab/errors.hpp"

namespace ilab {

Polynomial::Polynomial(const FiniteField& field) : field_(field) {}

Polynomial::Polynomial(const FiniteField& field, std::vector<FieldElement> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!(c.field() == field_)) throw Error(ErrorKind::FieldMismatch, "coefficient outside polynomial field");
  }
  trim();
}

Polynomial Polynomial::from_ints(const FiniteField& field, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.emplace_back(field, v);
  return {field, std::move(c)};
}

Polynomial Polynomial::constant(const FieldElement& c) { return {c.field(), {c}}; }

Polynomial Polynomial::monomial(const FieldElement& c, int degree) {
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(degree) + 1, FieldElement::zero(c.field()));
  coeffs.back() = c;
  return {c.field(), std::move(coeffs)};
}

Polynomial Polynomial::linear_root(const FieldElement& root) {
  return {root.field(), {-root, FieldElement::one(root.field())}};
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return FieldElement::zero(field_);
  return coeffs_[static_cast<std::size_t>(k)];
}

FieldElement Polynomial::leading() const {
  if (is_zero()) return FieldElement::zero(field_);
  return coeffs_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (!(field_ == o.field_)) throw Error(ErrorKind::FieldMismatch, "polynomial fields differ");
  std::vector<FieldElement> c(std::max(coeffs_.size(), o.coeffs_.size()), FieldElement::zero(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return {field_, std::move(c)};
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(-x);
  return {field_, std::move(c)};
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (!(field_ == o.field_)) throw Error(ErrorKind::FieldMismatch, "polynomial fields differ");
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  std::vector<FieldElement> c(coeffs_.size() + o.coeffs_.size() - 1, FieldElement::zero(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return {field_, std::move(c)};
}

Polynomial Polynomial::scale(const FieldElement& k) const {
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(x * k);
  return {field_, std::move(c)};
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result = constant(FieldElement::one(field_));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& divisor) const {
  if (!(field_ == divisor.field_)) throw Error(ErrorKind::FieldMismatch, "polynomial fields differ");
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(field_), *this};
  std::vector<FieldElement> rem = coeffs_;
  const int dd = divisor.degree();
  std::vector<FieldElement> q(static_cast<std::size_t>(degree() - dd + 1), FieldElement::zero(field_));
  const FieldElement lead_inv = divisor.leading().inv();
  for (int k = degree(); k >= dd; --k) {
    const FieldElement c = rem[static_cast<std::size_t>(k)] * lead_inv;
    q[static_cast<std::size_t>(k - dd)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.erase(rem.begin() + dd, rem.end());
  return {Polynomial(field_, std::move(q)), Polynomial(field_, std::move(rem))};
}

FieldElement Polynomial::eval(const FieldElement& y) const {
  FieldElement acc = FieldElement::zero(field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial(field_);
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c.push_back(coeffs_[k].scaled(static_cast<std::int64_t>(k)));
  return {field_, std::move(c)};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scale(leading().inv());
}

Polynomial Polynomial::lift(const FiniteField& target) const {
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(x.lift(target));
  return {target, std::move(c)};
}

bool Polynomial::operator==(const Polynomial& o) const {
  return field_ == o.field_ && coeffs_ == o.coeffs_;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const auto& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c.to_string();
    if (!c.in_prime_field()) cs = "(" + cs + ")";
    if (k == 0) {
      out += cs;
    } else {
      if (!c.is_one()) out += cs + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

bool is_nonzero_constant(const Polynomial& f) { return f.is_nonzero_constant(); }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<int> root_multiplicities(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::InvariantViolation, "multiplicities of the zero polynomial");
  std::vector<int> counts(static_cast<std::size_t>(f.degree()) + 2, 0);
  if (f.degree() == 0) return {0};
  // rad_k = product of distinct factors of multiplicity >= k.
  Polynomial fm = f.monic();
  Polynomial rad = fm / gcd(fm, fm.derivative());
  Polynomial rest = fm / rad;
  Polynomial product = rad;
  std::vector<Polynomial> rads{rad};
  while (rest.degree() > 0) {
    Polynomial next = gcd(rest, rads.back());
    if (next.degree() <= 0) break;
    rads.push_back(next);
    rest = rest / next;
    product = product * next;
  }
  if (!(product == fm)) {
    throw Error(ErrorKind::InvariantViolation, "a root multiplicity is divisible by the characteristic");
  }
  for (std::size_t k = 0; k < rads.size(); ++k) {
    int here = rads[k].degree();
    int above = k + 1 < rads.size() ? rads[k + 1].degree() : 0;
    counts[k + 1] = here - above;
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

FieldElement resultant(const Polynomial& f, const Polynomial& g, int n) {
  const FiniteField& F = f.field();
  if (f.is_zero()) throw Error(ErrorKind::InvariantViolation, "resultant with zero first argument");
  const int m = f.degree();
  if (m == 0) return f.leading().pow(n);
  Polynomial r = g % f;
  if (r.is_zero()) return FieldElement::zero(F);
  const int k = r.degree();
  FieldElement sign = ((m * k) % 2 == 0) ? FieldElement::one(F) : -FieldElement::one(F);
  return f.leading().pow(n - k) * sign * resultant(r, f, m);
}

FieldElement resultant(const Polynomial& f, const Polynomial& g) {
  return resultant(f, g, std::max(g.degree(), 0));
}

FieldElement sylvester_resultant(const Polynomial& f, int m, const Polynomial& g, int n) {
  const FiniteField& F = f.field();
  const int size = m + n;
  if (size == 0) return FieldElement::one(F);
  std::vector<std::vector<FieldElement>> mat(static_cast<std::size_t>(size),
                                             std::vector<FieldElement>(static_cast<std::size_t>(size), FieldElement::zero(F)));
  for (int row = 0; row < n; ++row) {
    for (int k = 0; k <= m; ++k) mat[row][row + k] = f.coeff(m - k);
  }
  for (int row = 0; row < m; ++row) {
    for (int k = 0; k <= n; ++k) mat[n + row][row + k] = g.coeff(n - k);
  }
  FieldElement det = FieldElement::one(F);
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int row = col; row < size; ++row) {
      if (!mat[row][col].is_zero()) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) return FieldElement::zero(F);
    if (pivot != col) {
      std::swap(mat[pivot], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    const FieldElement inv = mat[col][col].inv();
    for (int row = col + 1; row < size; ++row) {
      if (mat[row][col].is_zero()) continue;
      const FieldElement factor = mat[row][col] * inv;
      for (int c = col; c < size; ++c) mat[row][c] -= factor * mat[col][c];
    }
  }
  return det;
}

Polynomial interpolate(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys) {
  const FiniteField& F = xs.front().field();
  Polynomial result(F);
  Polynomial all = Polynomial::constant(FieldElement::one(F));
  for (const auto& x : xs) all = all * Polynomial::linear_root(x);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i].is_zero()) continue;
    Polynomial basis = all / Polynomial::linear_root(xs[i]);
    result = result + basis.scale(ys[i] / basis.eval(xs[i]));
  }
  return result;
}

Polynomial XLinearPoly::at(const FieldElement& x) const {
  return c0 + c1.scale(x);
}

Polynomial resultant_y(const XLinearPoly& f, const XLinearPoly& h) {
  const FiniteField ext = f.c0.field().extension();
  XLinearPoly fe{f.c0.lift(ext), f.c1.lift(ext)};
  XLinearPoly he{h.c0.lift(ext), h.c1.lift(ext)};
  const int m = fe.degree_y();
  const int n = std::max(he.degree_y(), 0);
  if (m < 1) throw Error(ErrorKind::BadDegree, "resultant_y needs deg_y f >= 1");
  // Entries are linear in x, so the resultant has x-degree at most m + n.
  const int points = m + n + 1;
  if (points > ext.size()) throw Error(ErrorKind::BudgetExceeded, "not enough evaluation points");
  std::vector<FieldElement> xs, ys;
  for (int k = 0; k < points; ++k) {
    FieldElement x = FieldElement::from_index(ext, k);
    Polynomial fx = fe.at(x);
    if (fx.degree() != m) throw Error(ErrorKind::InvariantViolation, "resultant_y needs f monic in y");
    xs.push_back(x);
    ys.push_back(resultant(fx, he.at(x), n));
  }
  return interpolate(xs, ys);
}

std::optional<int> unit_times_power_of_x(const Polynomial& res) {
  if (res.is_zero()) return std::nullopt;
  for (int k = 0; k < res.degree(); ++k) {
    if (!res.coeff(k).is_zero()) return std::nullopt;
  }
  return res.degree();
}

}  // namespace ilab
