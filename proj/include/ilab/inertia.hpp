#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ilab/group.hpp"
#include "ilab/perm.hpp"

namespace ilab {

struct RamificationProfile {
  std::vector<int> indices;  // non-increasing

  static RamificationProfile from(std::vector<int> indices);
  int sum() const;
  std::string to_string() const;  // "(5,3,1,1)"
  bool operator==(const RamificationProfile&) const = default;
};

enum class ShapeKind { Wild, Tame };

// Comparison key: wild shapes up to <theta^i omega> with i | p-1 and omega up to cycle type.
struct ShapeKey {
  ShapeKind kind;
  int theta_gcd;        // gcd(i, p-1), 0 when theta^i is trivial; unused for tame
  CycleType tail_type;  // omega on {p+1..d}, or gamma on {1..d}
  auto operator<=>(const ShapeKey&) const = default;
};

// Wild: I = <tau> x| <theta^i omega>. Tame: I = <gamma>.
class InertiaShape {
 public:
  static InertiaShape wild(int p, int d, int theta_exp, Perm omega);
  // omega with the given cycle type on consecutive points p+1.. (parts summing to d-p).
  static InertiaShape wild(int p, int d, int theta_exp, const std::vector<int>& omega_type);
  static InertiaShape tame(int p, Perm gamma);

  ShapeKind kind() const { return kind_; }
  int p() const { return p_; }
  int d() const { return d_; }
  int theta_exp() const { return theta_exp_; }
  const Perm& omega() const { return omega_; }
  const Perm& gamma() const { return gamma_; }

  // theta^i omega for wild shapes, gamma for tame ones.
  Perm tame_generator() const;
  std::int64_t tame_order() const;
  std::int64_t theta_order() const;
  BigInt expected_order() const;
  ShapeKey key() const;
  // Points of {1..d} fixed by the realized group.
  int fixed_points() const;
  bool is_even() const;

  std::string to_string() const;
  static InertiaShape parse(const std::string& text);
  bool operator==(const InertiaShape&) const = default;

 private:
  InertiaShape() = default;
  ShapeKind kind_ = ShapeKind::Wild;
  int p_ = 0;
  int d_ = 0;
  int theta_exp_ = 0;
  Perm omega_;
  Perm gamma_;
};

PermGroup realize(const InertiaShape& shape);
InertiaShape canonicalize(const InertiaShape& shape);
RamificationProfile fibre_profile(const InertiaShape& shape);
InertiaShape embed_shape(const InertiaShape& shape, int new_degree);
// Generator raised to the k-th power (theta^{ik} omega^k for wild shapes).
InertiaShape power_shape(const InertiaShape& s, std::int64_t k);

enum class GroupClaim { Alternating, Symmetric };
std::string to_string(GroupClaim c);

struct KummerResult {
  InertiaShape over0;
  InertiaShape over_inf;
  GroupClaim claim;
  bool over0_etale = false;
  // For alternating claims: <p(I)^{A_d}> = A_d, checked on the new wild shape.
  bool needs_quasi_p_check = false;
  bool quasi_p_check_holds = false;
};

// Pullback along the [n]-Kummer cover. Over 0 the tame generator gamma becomes gamma^gcd(n, ord gamma),
// over infinity sigma = theta^i omega becomes sigma^gcd(n, ord sigma).
KummerResult kummer_pullback(const InertiaShape& over0, const InertiaShape& over_inf, std::int64_t n,
                             GroupClaim claim);

// Shapes reachable from `shape` by some Kummer pullback, by key.
std::set<ShapeKey> kummer_reachable(const InertiaShape& shape);

enum class TargetStatus { MustRealize, Reducible, Deferred };
std::string to_string(TargetStatus s);

struct IcTarget {
  InertiaShape shape;
  TargetStatus status;
  std::optional<InertiaShape> reducible_from;
  int deferred_degree = 0;  // lower degree whose conjecture is used
};

enum class Parity { Even, Odd };

// Shapes <tau> x| <theta^i omega> in S_d with i | p-1 and omega up to cycle type, of the given parity.
// Even lists get Kummer reductions; a maximal shape fixing f >= 2 points is deferred to degree d-f+1
// when that degree is in `lower_degree_available`.
std::vector<IcTarget> enumerate_ic_targets(int d, int p, Parity parity = Parity::Even,
                                           const std::set<int>& lower_degree_available = {});

}  // namespace ilab
