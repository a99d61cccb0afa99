#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ilab {

// F_p (degree 1) or F_p[w]/(w^2 - nu) (degree 2).
class FiniteField {
 public:
  static FiniteField prime(std::int64_t p);
  // Uses the smallest quadratic non-residue.
  static FiniteField quadratic(std::int64_t p);
  static FiniteField quadratic(std::int64_t p, std::int64_t nu);

  std::int64_t characteristic() const { return p_; }
  int degree() const { return degree_; }
  std::int64_t nu() const { return nu_; }
  std::int64_t size() const { return degree_ == 1 ? p_ : p_ * p_; }

  // Same characteristic, degree 2.
  FiniteField extension() const;

  bool operator==(const FiniteField&) const = default;

 private:
  FiniteField(std::int64_t p, int degree, std::int64_t nu) : p_(p), degree_(degree), nu_(nu) {}
  std::int64_t p_ = 0;
  int degree_ = 1;
  std::int64_t nu_ = 0;
};

class FieldElement {
 public:
  FieldElement(const FiniteField& field, std::int64_t a, std::int64_t b = 0);

  static FieldElement zero(const FiniteField& field) { return {field, 0}; }
  static FieldElement one(const FiniteField& field) { return {field, 1}; }
  // The adjoined root w (degree-2 fields only).
  static FieldElement generator(const FiniteField& field);
  // Elements in the order (a, b) lexicographic; index k maps to a = k % p, b = k / p.
  static FieldElement from_index(const FiniteField& field, std::int64_t k);
  static std::vector<FieldElement> all(const FiniteField& field);

  const FiniteField& field() const { return field_; }
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t index() const { return a_ + b_ * field_.characteristic(); }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }
  bool in_prime_field() const { return b_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement scaled(std::int64_t k) const;
  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;
  // Norm to F_p (a^2 - nu b^2 in degree 2).
  std::int64_t norm() const;

  // Re-embed into `target`, which must contain this element's field.
  FieldElement lift(const FiniteField& target) const;

  bool operator==(const FieldElement& o) const;
  std::strong_ordering operator<=>(const FieldElement& o) const;

  // "a", "b*w" or "a+b*w".
  std::string to_string() const;
  static FieldElement parse(const FiniteField& field, const std::string& text);

 private:
  void check_same(const FieldElement& o) const;
  FiniteField field_;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
};

std::optional<FieldElement> sqrt(const FieldElement& a);

// Square root of an F_p value, moving to F_p^2 when needed.
FieldElement sqrt_or_extend(const FiniteField& field, std::int64_t value);

}  // namespace ilab
