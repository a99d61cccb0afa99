#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "ilab/cover.hpp"
#include "ilab/group.hpp"
#include "ilab/inertia.hpp"

namespace ilab {

enum class StepKind {
  AssumptionCheck,
  CoverReport,
  GaloisVerdict,
  KummerStep,
  AbhyankarStep,
  PatchHypothesis,
  AxiomCitation,
  GroupComputation,
  Reduction,
};
std::string to_string(StepKind k);

enum class StepStatus { Pass, Fail, Axiom };
std::string to_string(StepStatus s);

struct CertificateStep {
  StepKind kind = StepKind::GroupComputation;
  std::string claim;
  std::string ref;        // citation key, empty when the step cites nothing
  std::string statement;  // statement of the cited result; axiom steps only
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  StepStatus status = StepStatus::Pass;
  std::optional<ShapeKey> discharges;  // target settled by this step
};

struct Certificate {
  std::string theorem;
  int p = 0;
  std::vector<CertificateStep> steps;

  bool pass() const;
  std::optional<std::size_t> first_failure() const;
  std::set<ShapeKey> discharged() const;
};

// Citation keys usable by axiom steps, with the statement recorded for each.
const std::vector<std::pair<std::string, std::string>>& citation_table();
// Problems found: unknown keys, statement mismatches, axiom steps without a key, checked steps without inputs.
std::vector<std::string> lint_certificate(const Certificate& c);

enum class CertificateFormat { Json, Text };
std::string emit_certificate(const Certificate& c, CertificateFormat format = CertificateFormat::Json);
nlohmann::ordered_json certificate_json(const Certificate& c);

// ---- reduction series ----

struct ReductionSeries {
  std::vector<PermGroup> h;  // H_0 = G, H_{j+1} = <P_i^{H_j}>, up to and including H_l
  int l = 0;                 // least index with H_l = H_{l+1}
  bool gic_hypothesis = false;  // G = H_1
  bool normality_checked = false;
};
// Throws NotASubgroup when some P_i is not inside G.
ReductionSeries compute_h_series(const PermGroup& g, const std::vector<PermGroup>& ps);

// ---- patching hypotheses ----

struct PatchPart {
  PermGroup group;
  PermGroup inertia;
};
struct PatchCheck {
  bool generation = false;
  std::vector<std::int64_t> tame_orders;  // |I_i| / |p(I_i)|
  bool tame_match = false;
  bool shared_element_ok = true;
  bool pass = false;
  std::string detail;
};
// G = <G_1, ..., G_n, I>, |I_i / p(I_i)| = m, and when `shared` is given it lies in every G_i with order prime to p.
PatchCheck check_patch_hypotheses(int p, const PermGroup& g, const std::vector<PatchPart>& parts, const PermGroup& inertia,
                                  std::int64_t m, const std::optional<Perm>& shared = std::nullopt);

// Subgroups Alt(Supp(I) u S) over all S of the right size, for I realized in degree `lower` and lifted to `degree`.
std::vector<PatchPart> alt_fixed_point_parts(const PermGroup& inertia, int lower, int degree);

// ---- theorem replay ----

std::vector<std::string> ic_theorem_ids();   // A_p .. A_p+5
std::vector<std::string> sym_theorem_ids();  // S_p .. S_p+3, S_d-same-inertia, semidirect
std::vector<std::string> gpwic_ids();

// Throw SideConditionViolated when p is outside the theorem's hypotheses.
Certificate verify_ic_theorem(const std::string& id, int p);
Certificate verify_sym_theorem(const std::string& id, int p);
// `mutate` rewrites every witness before its assumption check.
Certificate verify_ic_theorem(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>& mutate);
Certificate verify_sym_theorem(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>& mutate);
// Dispatches on the id.
Certificate verify_theorem(const std::string& id, int p);

// Degree and parity of the targets an IC or S theorem must cover; nullopt for other ids.
struct TheoremScope {
  int d;
  Parity parity;
  std::set<int> lower_available;
};
std::optional<TheoremScope> theorem_scope(const std::string& id, int p);

struct CoverageReport {
  std::vector<ShapeKey> missing;  // targets without a discharging step
  std::vector<ShapeKey> orphan;   // discharging steps for shapes that are not targets
  bool ok() const { return missing.empty() && orphan.empty(); }
};
CoverageReport check_coverage(const Certificate& c);

// A constructive route to a wild target: a cover spec and a Kummer degree landing on the key with group A_d.
struct TargetRoute {
  CoverSpec spec;
  std::int64_t kummer = 1;
};
std::optional<TargetRoute> find_target_route(int d, int p, const ShapeKey& target, std::uint64_t budget = 2'000'000);

// ---- GPWIC instances ----

struct GpwicInstance {
  std::string id;
  int p = 0;
  PermGroup group = PermGroup::trivial(1);
  std::vector<PermGroup> ps;
  std::vector<PermGroup> factors;      // direct-product ids: group is the product of these, in order
  std::vector<std::pair<int, Perm>> conjugates;  // weaker-branch-locus: (i, g) adds g P_i g^-1
  int a = 0;                           // alt-product-cycle: d = a p
};
GpwicInstance default_gpwic_instance(const std::string& id, int p);
// Throws ScopeExceeded for Sylow computations outside the cyclic-Sylow range.
Certificate check_gpwic(const GpwicInstance& instance);

}  // namespace ilab
