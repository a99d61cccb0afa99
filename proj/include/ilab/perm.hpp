#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ilab {

// Multiset of cycle lengths, non-increasing, fixed points included as 1s.
struct CycleType {
  std::vector<int> parts;

  int degree() const;
  std::int64_t order() const;
  bool is_even() const;
  int fixed_points() const;
  // Parts greater than one.
  std::vector<int> nontrivial() const;
  std::string to_string() const;  // "(5,3,1,1)"
  auto operator<=>(const CycleType&) const = default;
};

// Points are 0-based in the API (operator()), 1-based in cycle notation.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);
  explicit Perm(std::vector<int> images);

  // Cycles given with 1-based points.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
  // Consecutive cycles with the given lengths starting at 1-based `first_point`.
  static Perm from_cycle_type(int degree, const std::vector<int>& parts, int first_point = 1);
  // "(1 2 3)(4 5)", "()" for the identity.
  static Perm parse(const std::string& text, int degree);
  // Degree taken as the largest point mentioned.
  static Perm parse(const std::string& text);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(std::int64_t e) const;
  std::int64_t order() const;
  bool is_even() const;
  CycleType cycle_type() const;
  // Nontrivial cycles, 1-based, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<int>> cycles() const;
  int first_moved_point() const;  // -1 for the identity
  std::vector<int> support() const;  // 0-based
  // Same action, more fixed points.
  Perm extended(int new_degree) const;

  std::string to_string() const;

  // (a * b)(x) = a(b(x)): apply b, then a.
  friend Perm operator*(const Perm& a, const Perm& b);
  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> images_;
};

Perm compose(const Perm& a, const Perm& b);
// b a b^-1
Perm conjugate(const Perm& a, const Perm& b);
Perm commutator(const Perm& a, const Perm& b);

// x with x a x^-1 = b when the cycle types agree.
std::optional<Perm> conjugator(const Perm& a, const Perm& b);

// The p-cycle (1 ... p) in S_d.
Perm make_tau(int p, int d);
// x -> g(x-1)+1 on 1..p, g the smallest primitive root; identity on p+1..d.
Perm make_theta(int p, int d);

}  // namespace ilab
