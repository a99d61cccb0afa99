#include "ilab/ff.hpp"

#include <cctype>

#include "ilab/errors.hpp"
#include "ilab/number.hpp"

namespace ilab {

FiniteField FiniteField::prime(std::int64_t p) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, std::to_string(p) + " is not an odd prime");
  return FiniteField(p, 1, 0);
}

FiniteField FiniteField::quadratic(std::int64_t p) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, std::to_string(p) + " is not an odd prime");
  return FiniteField(p, 2, smallest_nonresidue(p));
}

FiniteField FiniteField::quadratic(std::int64_t p, std::int64_t nu) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, std::to_string(p) + " is not an odd prime");
  nu = mod(nu, p);
  if (mod_pow(nu, (p - 1) / 2, p) != p - 1) {
    throw Error(ErrorKind::InvariantViolation, std::to_string(nu) + " is a square mod " + std::to_string(p));
  }
  return FiniteField(p, 2, nu);
}

FiniteField FiniteField::extension() const {
  return degree_ == 2 ? *this : quadratic(p_);
}

FieldElement::FieldElement(const FiniteField& field, std::int64_t a, std::int64_t b)
    : field_(field), a_(mod(a, field.characteristic())), b_(mod(b, field.characteristic())) {
  if (field.degree() == 1 && b_ != 0) {
    throw Error(ErrorKind::FieldMismatch, "w-coordinate in a prime field");
  }
}

FieldElement FieldElement::generator(const FiniteField& field) {
  if (field.degree() != 2) throw Error(ErrorKind::FieldMismatch, "prime field has no generator w");
  return {field, 0, 1};
}

FieldElement FieldElement::from_index(const FiniteField& field, std::int64_t k) {
  std::int64_t p = field.characteristic();
  return {field, k % p, k / p};
}

std::vector<FieldElement> FieldElement::all(const FiniteField& field) {
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(field.size()));
  for (std::int64_t k = 0; k < field.size(); ++k) out.push_back(from_index(field, k));
  return out;
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!(field_ == o.field_)) throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, a_ + o.a_, b_ + o.b_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, a_ - o.a_, b_ - o.b_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  const std::int64_t p = field_.characteristic();
  if (field_.degree() == 1) return {field_, a_ * o.a_ % p};
  std::int64_t a = (a_ * o.a_ + (b_ * o.b_ % p) * field_.nu()) % p;
  std::int64_t b = (a_ * o.b_ + b_ * o.a_) % p;
  return {field_, a, b};
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::operator-() const { return {field_, -a_, -b_}; }

FieldElement FieldElement::scaled(std::int64_t k) const {
  const std::int64_t p = field_.characteristic();
  k = mod(k, p);
  return {field_, a_ * k, b_ * k};
}

std::int64_t FieldElement::norm() const {
  const std::int64_t p = field_.characteristic();
  if (field_.degree() == 1) return a_;
  return mod(a_ * a_ - (b_ * b_ % p) * field_.nu(), p);
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const std::int64_t p = field_.characteristic();
  if (field_.degree() == 1) return {field_, mod_inv(a_, p)};
  // (a + bw)^-1 = (a - bw) / (a^2 - nu b^2)
  std::int64_t n_inv = mod_inv(norm(), p);
  return {field_, a_ * n_inv, -b_ * n_inv};
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  FieldElement result = one(field_);
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

FieldElement FieldElement::lift(const FiniteField& target) const {
  if (field_ == target) return *this;
  if (field_.characteristic() != target.characteristic() || field_.degree() != 1) {
    throw Error(ErrorKind::FieldMismatch, "cannot lift between these fields");
  }
  return {target, a_};
}

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && a_ == o.a_ && b_ == o.b_;
}

std::strong_ordering FieldElement::operator<=>(const FieldElement& o) const {
  if (auto c = b_ <=> o.b_; c != 0) return c;
  return a_ <=> o.a_;
}

std::string FieldElement::to_string() const {
  if (b_ == 0) return std::to_string(a_);
  std::string wpart = (b_ == 1 ? std::string("w") : std::to_string(b_) + "*w");
  if (a_ == 0) return wpart;
  return std::to_string(a_) + "+" + wpart;
}

namespace {

std::int64_t parse_int(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty integer");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
  if (pos != s.size()) throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  return v;
}

// Parses "b*w", "w", "-w", "b" into (value, is_w_term).
std::pair<std::int64_t, bool> parse_term(const std::string& term) {
  auto star = term.find('*');
  if (star != std::string::npos) {
    if (term.substr(star + 1) != "w") throw Error(ErrorKind::ParseError, "bad term '" + term + "'");
    return {parse_int(term.substr(0, star)), true};
  }
  if (term == "w" || term == "+w") return {1, true};
  if (term == "-w") return {-1, true};
  return {parse_int(term), false};
}

}  // namespace

FieldElement FieldElement::parse(const FiniteField& field, const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty field element");
  // Split on + or - that are not leading.
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '*') {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));
  std::int64_t a = 0, b = 0;
  for (auto& term : terms) {
    auto [v, is_w] = parse_term(term);
    (is_w ? b : a) += v;
  }
  if (b != 0 && field.degree() != 2) throw Error(ErrorKind::ParseError, "w used in a prime field");
  return {field, a, b};
}

namespace {

// Tonelli-Shanks in F_p; returns nullopt for non-squares.
std::optional<std::int64_t> sqrt_mod_p(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
  std::int64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = smallest_nonresidue(p);
  std::int64_t m = s;
  std::int64_t c = mod_pow(z, q, p);
  std::int64_t t = mod_pow(a, q, p);
  std::int64_t r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0, tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return std::min(r, p - r);
}

}  // namespace

std::optional<FieldElement> sqrt(const FieldElement& x) {
  const FiniteField& f = x.field();
  const std::int64_t p = f.characteristic();
  if (x.is_zero()) return x;
  if (f.degree() == 1) {
    auto r = sqrt_mod_p(x.a(), p);
    if (!r) return std::nullopt;
    return FieldElement(f, *r);
  }
  if (x.b() == 0) {
    if (auto r = sqrt_mod_p(x.a(), p)) return FieldElement(f, *r);
    // a = nu * c^2 for some c, so sqrt(a) = c w.
    auto c = sqrt_mod_p(x.a() * mod_inv(f.nu(), p), p);
    return FieldElement(f, 0, *c);
  }
  // Norm equation: (u + v w)^2 = a + b w with u^2 + nu v^2 = a, 2uv = b.
  // u^2 = (a + n)/2 where n^2 = N(a + b w); the norm is always a square in F_p.
  auto n = sqrt_mod_p(x.norm(), p);
  if (!n) return std::nullopt;
  const std::int64_t half = mod_inv(2, p);
  for (std::int64_t sign : {1, -1}) {
    std::int64_t u2 = mod((x.a() + sign * *n) * half, p);
    auto u = sqrt_mod_p(u2, p);
    if (!u || *u == 0) continue;
    std::int64_t v = mod(x.b() * mod_inv(2 * *u, p), p);
    FieldElement r(f, *u, v);
    if (r * r == x) return r;
  }
  return std::nullopt;
}

FieldElement sqrt_or_extend(const FiniteField& field, std::int64_t value) {
  FieldElement x(field, value);
  if (auto r = sqrt(x)) return *r;
  FieldElement y = x.lift(field.extension());
  return *sqrt(y);
}

}  // namespace ilab
