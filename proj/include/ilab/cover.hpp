#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ilab/ff.hpp"
#include "ilab/inertia.hpp"
#include "ilab/number.hpp"
#include "ilab/poly.hpp"

namespace ilab {

// f(x, y) = prod (y - alpha_i)^{n_i} - x prod (y - beta_l)^{m_l}.
// t = 0, r = 0 is the degree-p family f = prod (y - alpha_i)^{n_i} - x.
struct CoverSpec {
  FiniteField field;
  int p = 0;
  int t = 0;
  std::vector<int> n;
  std::vector<int> m;
  std::vector<FieldElement> alpha;
  std::vector<FieldElement> beta;

  int s() const { return static_cast<int>(n.size()); }
  int r() const { return static_cast<int>(m.size()); }
  int d() const { return p + t; }

  // "p=7 t=2 s=2 r=1 n=8,1 m=2 alpha=1,6 beta=0 field=Fp", preceded by "w^2=nu" over F_p^2.
  std::string to_string() const;
  static CoverSpec parse(const std::string& text);
  bool operator==(const CoverSpec&) const = default;
};

// Empty when the spec is well formed.
std::vector<std::string> validate_spec(const CoverSpec& spec);

struct CoverPolys {
  Polynomial A;        // prod (y - alpha_i)^{n_i}
  Polynomial B;        // prod (y - beta_l)^{m_l}
  Polynomial A_minus;  // prod (y - alpha_i)^{n_i - 1}
  Polynomial B_minus;  // prod (y - beta_l)^{m_l - 1}
  Polynomial g;
};
// Throws InvariantViolation on an invalid spec.
CoverPolys expand_cover_polys(const CoverSpec& spec);
XLinearPoly cover_equation(const CoverSpec& spec);

struct AssumptionResult {
  bool holds = false;
  std::optional<FieldElement> g_constant;
};
AssumptionResult check_assumption(const CoverSpec& spec);

// r = 1, beta_1 = 0: for each 1 <= k <= s-1, sum over k-subsets S of n(S) * prod_{i in S} alpha_i = 0,
// and every alpha_i nonzero. Computed without expanding g.
bool r1_coefficient_conditions(const CoverSpec& spec);

// (alpha, beta) -> (c alpha + e, c beta + e).
CoverSpec affine_image(const CoverSpec& spec, const FieldElement& c, const FieldElement& e);
// beta_1 -> 0 and alpha_1 -> 1 (degree-p family: alpha_1 -> 0, alpha_2 -> 1).
CoverSpec normalize_spec(const CoverSpec& spec);

enum class GaloisVerdict { Alternating, Symmetric, ContainsAltUndecidedParity, Undecided };
std::string to_string(GaloisVerdict v);

struct GaloisDecision {
  GaloisVerdict verdict = GaloisVerdict::Undecided;
  bool primitive = false;
  std::string primitivity;  // criterion used
  std::string alt_clause;   // which clause gave A_d inside G, or why none did
  std::string parity;       // parity of gamma
  std::string basis = "criterion-based";
};
// gamma is the tame generator over 0, t = d - p.
GaloisDecision decide_galois_group(int p, int d, const Perm& gamma);

// A - x B with A monic of degree p + t and B monic of degree t.
struct ExplicitCover {
  int p = 0;
  int t = 0;
  Polynomial A;
  Polynomial B;
};
ExplicitCover explicit_cover(const CoverSpec& spec);
// y^p - y^2 - x.
ExplicitCover degree_p_trinomial(int p, int k = 2);

struct RamificationReport {
  int p;
  int d;
  int t;
  int s;
  int r;
  RamificationProfile over0;
  RamificationProfile over_inf;
  bool etale_away = false;           // Res_y(f, f_y) = c x^e
  int resultant_x_exponent = 0;
  int genus = 0;
  std::string genus_reason;
  Rational jump;
  std::int64_t ord_theta;
  int theta_exp;                     // gcd(p-1, r+s-1), reduced mod p-1
  InertiaShape inertia0;
  InertiaShape inertia_inf;
  GaloisDecision decision;
};
// Throws AssumptionFails when the cover branches outside {0, infinity}.
RamificationReport ramification_report(const ExplicitCover& cover);
// Also requires the assumption on g.
RamificationReport ramification_report(const CoverSpec& spec);
GaloisDecision galois_decision(const CoverSpec& spec, const RamificationReport& report);

enum class WitnessFamily {
  OneOne,       // s = r = 1
  TwoOne,       // s = 2, r = 1
  OneTwo,       // s = 1, r = 2
  ThreeOne,     // s = 3, r = 1, n = (p-2, 2, t)
  TwoTwo,       // s = r = 2, n_i = m_i mod p
  DegreePPair,  // t = 0, s = 2
  PPlusOne,     // three-one at t = 1
  PPlusFourSqrt3,
  PPlusFourSqrt2,
  PPlusFiveI4,
  PPlusFiveI5,
  PPlusFiveI6,
  PPlusThreeCycle,
};
std::string to_string(WitnessFamily f);
WitnessFamily parse_witness_family(const std::string& name);
std::vector<WitnessFamily> all_witness_families();

// Unused fields take the family's defaults.
struct WitnessParams {
  int t = 0;
  std::vector<int> n;
  std::vector<int> m;
};
// Throws SideConditionViolated when the family does not apply at p.
CoverSpec known_witness(WitnessFamily family, int p, const WitnessParams& params = {});

// Normalized exhaustive search: beta_1 = 0 and alpha_1 = 1 (degree-p family: alpha_1 = 0, alpha_2 = 1).
// Results sorted by coordinate indices. Throws BudgetExceeded when the space exceeds `budget` tuples.
std::vector<CoverSpec> witness_search(int p, int t, const std::vector<int>& n, const std::vector<int>& m,
                                      int field_degree, std::uint64_t budget, int threads = 0);

// Constructive search. Assumption holds exactly when the weights n_i at alpha_i and -m_l at beta_l are
// lambda / R'(gamma) for R the product of (y - gamma) over all N = r + s points. Tries point sets in F_p
// containing 0 and 1, then Frobenius-stable sets in F_p^2 with up to `max_pairs` conjugate pairs.
// `accept` sees n aligned with alpha.
struct PointSetSearch {
  std::optional<CoverSpec> witness;
  std::uint64_t sets_examined = 0;
  bool budget_hit = false;
};
PointSetSearch point_set_witness(int p, int t, const std::vector<int>& m, int s,
                                 const std::function<bool(const std::vector<int>&)>& accept, int max_pairs,
                                 std::uint64_t budget);

}  // namespace ilab
