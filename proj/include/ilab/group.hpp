#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ilab/number.hpp"
#include "ilab/perm.hpp"

namespace ilab {

inline constexpr int kDegreeBudget = 64;

// Base and strong generating set built by deterministic incremental Schreier-Sims.
class Bsgs {
 public:
  // Base points start with `base_prefix` (0-based), then the first moved point of each new residue.
  Bsgs(int degree, const std::vector<Perm>& generators, const std::vector<int>& base_prefix = {});

  int degree() const { return degree_; }
  std::vector<int> base() const;
  BigInt order() const;
  bool contains(const Perm& g) const;
  // Adds g; returns false when g was already a member.
  bool extend(const Perm& g);

  std::size_t levels() const { return levels_.size(); }
  std::size_t orbit_size(std::size_t level) const { return levels_[level].orbit.size(); }
  // Generators of the pointwise stabilizer of the first `level` base points.
  std::vector<Perm> stabilizer_generators(std::size_t level) const;
  std::vector<Perm> strong_generators() const { return strong_; }

  Perm random_element(std::mt19937_64& rng) const;
  // Calls f on every element; only sensible for small groups.
  template <class F>
  void for_each_element(F&& f) const {
    Perm g(degree_);
    for_each_rec(0, g, f);
  }

 private:
  struct Level {
    int point = 0;
    std::vector<int> gens;              // indices into strong_
    std::vector<int> orbit;             // points
    std::vector<int> orbit_index;       // point -> position or -1
    std::vector<Perm> transversal;      // u with u(point) = orbit[k]
    std::vector<Perm> transversal_inv;
    std::vector<std::vector<char>> done;  // [orbit position][generator slot]
  };

  template <class F>
  void for_each_rec(std::size_t level, const Perm& prefix, F& f) const {
    if (level == levels_.size()) {
      f(prefix);
      return;
    }
    for (const auto& u : levels_[level].transversal) for_each_rec(level + 1, prefix * u, f);
  }

  void add_level(int point);
  void add_strong_generator(const Perm& g, std::size_t up_to_level);
  void grow_orbit(std::size_t level);
  // Residue and the level where sifting stopped.
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t start) const;
  void complete(std::size_t start_level);

  int degree_;
  std::vector<Perm> strong_;
  std::vector<Level> levels_;
};

class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> generators);

  static PermGroup trivial(int degree);
  static PermGroup symmetric(int degree);
  static PermGroup alternating(int degree);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  // Computed on first use, then shared by copies.
  const Bsgs& bsgs() const;
  BigInt order() const;
  bool contains(const Perm& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool same_group(const PermGroup& other) const;
  bool is_trivial() const;

  // 0-based orbits ordered by smallest point.
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;
  // Minimal block containing points 0 and b (0-based).
  std::vector<int> minimal_block(int b) const;
  bool is_primitive() const;

  // Pointwise stabilizer of the given 0-based points.
  PermGroup pointwise_stabilizer(const std::vector<int>& points) const;

  std::string to_string() const;

 private:
  struct Cache;
  int degree_;
  std::vector<Perm> generators_;
  std::shared_ptr<Cache> cache_;
};

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds);
// Subgroup generated by the union of generator lists.
PermGroup join(int degree, const std::vector<PermGroup>& groups, const std::vector<Perm>& extra = {});

enum class AltSym { Alternating, Symmetric, Other };
std::string to_string(AltSym c);
AltSym classify_alt_sym(const PermGroup& g);

struct JonesResult {
  bool contains_alt = false;
  std::string clause;  // which clause fired, or why none did
};
// gamma in S_d, t = d - p.
JonesResult jones_criterion(int d, int p, const Perm& gamma, int t);

struct FrattiniResult {
  BigInt group_order;
  BigInt frattini_order;
  int rank = 0;                    // |G/Phi| = p^rank
  std::vector<int> image_ranks;    // rank of each P_i's image
  bool normal_closure_generates = false;  // <P_i^G> = G
  bool ps_generate = false;                // <P_1..P_r> = G
  bool lemma_holds = false;                // first implies second
};
FrattiniResult frattini_quotient(const PermGroup& g, int p, const std::vector<PermGroup>& ps);

// Direct product acting on the disjoint union of domains.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

struct GoursatResult {
  PermGroup pi1;
  PermGroup pi2;
  PermGroup n1;  // P intersect (G1 x 1), on the first domain
  PermGroup n2;
  BigInt quotient_order;
  // Images (pi1(g), pi2(g)) of the generators of P; they induce pi1/N1 ~ pi2/N2.
  std::vector<std::pair<Perm, Perm>> graph;
  bool reconstructs = false;
};
GoursatResult goursat_decompose(const PermGroup& g1, const PermGroup& g2, const PermGroup& p);

enum class Certainty { Proved, Sampled };
std::string to_string(Certainty c);
struct PPartResult {
  PermGroup subgroup;
  Certainty certainty;
  std::uint64_t seed;
};
inline constexpr std::uint64_t kDefaultSeed = 0x1a2b3c4dULL;
inline constexpr int kPPartSamples = 64;
PPartResult p_part_subgroup(const PermGroup& g, int p, std::uint64_t seed = kDefaultSeed);

// Largest power of p dividing n.
int p_valuation(const BigInt& n, int p);

}  // namespace ilab
