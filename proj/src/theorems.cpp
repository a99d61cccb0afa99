#include "ilab/theorems.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ilab/errors.hpp"
#include "ilab/number.hpp"

namespace ilab {

using json = nlohmann::ordered_json;

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::AssumptionCheck: return "AssumptionCheck";
    case StepKind::CoverReport: return "CoverReport";
    case StepKind::GaloisVerdict: return "GaloisVerdict";
    case StepKind::KummerStep: return "KummerStep";
    case StepKind::AbhyankarStep: return "AbhyankarStep";
    case StepKind::PatchHypothesis: return "PatchHypothesis";
    case StepKind::AxiomCitation: return "AxiomCitation";
    case StepKind::GroupComputation: return "GroupComputation";
    case StepKind::Reduction: return "Reduction";
  }
  return "unknown";
}

std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Pass: return "pass";
    case StepStatus::Fail: return "fail";
    case StepStatus::Axiom: return "axiom";
  }
  return "unknown";
}

bool Certificate::pass() const { return !first_failure().has_value(); }

std::optional<std::size_t> Certificate::first_failure() const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].status == StepStatus::Fail) return i;
  }
  return std::nullopt;
}

std::set<ShapeKey> Certificate::discharged() const {
  std::set<ShapeKey> out;
  for (const auto& s : steps) {
    if (s.discharges && s.status != StepStatus::Fail) out.insert(*s.discharges);
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>>& citation_table() {
  static const std::vector<std::pair<std::string, std::string>> table{
      {"ic-alt-p", "For every odd prime p the Inertia Conjecture holds for A_p."},
      {"ic-alt-p+2", "For primes p = 2 mod 3 the Inertia Conjecture holds for A_{p+2}."},
      {"inertia-structure",
       "For a cover of P^1 with the given fibres over 0 and infinity, the inertia over 0 is cyclic generated by a "
       "permutation with the fibre's cycle type, and over infinity it is <tau> x| <theta^i omega> with i = gcd(p-1, "
       "r+s-1) and omega of type m; the upper jump is (r+s-1)/(p-1)."},
      {"primitive-transposition", "A primitive permutation group containing a transposition is symmetric."},
      {"primitive-3-cycle", "A primitive permutation group containing a 3-cycle contains the alternating group."},
      {"jones",
       "A primitive group of degree d containing a cycle that fixes at least 3 points contains A_d; a transitive group "
       "containing a p-cycle fixing t < d/2 points is primitive."},
      {"kummer-pullback",
       "Pulling a G-Galois cover branched over {0, infinity} back along the [n]-Kummer cover, n prime to p, gives a "
       "cover whose inertia generators are the gcd(n, order) powers of the old ones; the Galois group is the subgroup "
       "generated by the conjugates of the new inertia groups when that subgroup is normal with cyclic quotient."},
      {"abhyankar", "A tame branch point whose ramification index divides the Kummer degree becomes unramified."},
      {"patching-generalized",
       "If G = <G_1, ..., G_n, I> where G_1 carries I_1 over x, each (G_i, I_i) is realizable and all I_i lie in I "
       "with the same tame quotient order m, then some G-Galois cover has I as inertia over x and keeps the other "
       "branch data."},
      {"patching-two-covers",
       "Given a G_1-cover and a G_2-cover of P^1 sharing a prime-to-p inertia element a, there is a <G_1, G_2>-cover "
       "combining their branch data."},
      {"raynaud-sylow-p", "For a quasi-p group G with Sylow p-subgroup P of order p, the pair (G, P) is realizable."},
      {"purely-wild-products",
       "For a product of simple quasi-p groups of order strictly divisible by p and simple alternating groups of "
       "degree prime to p or equal to p, each nontrivial p-subgroup whose conjugates generate is realizable."},
      {"enlarge-inertia", "A realizable inertia group may be enlarged to any p-subgroup containing it within a quasi-p group."},
      {"common-local-cover",
       "Two covers with inertia P_{x,1}, P_{x,2} can be chosen with isomorphic Q_x-subextensions at a point over x."},
      {"product-fibre",
       "The fibre product of a G_1-cover and a G_2-cover with no common nontrivial quotient is a connected "
       "G_1 x G_2-cover with compositum inertia."},
      {"embedding",
       "A smooth connected G-cover embeds into a Gamma-cover for Gamma = <G, H> with H quasi-p, when G normalizes a "
       "p-subgroup P of H with (H, P) realizable; the inertia over x_0 grows from I_0 to I_0 P."},
      {"hkg-covers", "For P a p-group and n prime to p, P x| Z/n occurs as the Galois group of an HKG cover of P^1."},
      {"embedding-tame-base",
       "A P_1 x| Z/n HKG cover extends to a (P x| Z/n)-cover with P_2 as extra inertia when P = <P_1, P_2>."},
      {"riemann-hurwitz", "2g_Y - 2 = n (2g_X - 2) + sum over branch points of (n/e)(e - 1) for tame ramification."},
  };
  return table;
}

namespace {

const std::string* statement_for(const std::string& key) {
  for (const auto& [k, v] : citation_table()) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string frac(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

std::string key_string(const ShapeKey& k) {
  if (k.kind == ShapeKind::Tame) return "tame " + k.tail_type.to_string();
  return "(" + std::to_string(k.theta_gcd) + "," + k.tail_type.to_string() + ")";
}

std::string vec_string(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::string big(const BigInt& n) { return n.str(); }

ShapeKey wild_key(int p, int d, int i, const std::vector<int>& tail) { return InertiaShape::wild(p, d, i, tail).key(); }

CertificateStep make_step(StepKind kind, std::string claim, bool ok, json inputs, std::string ref = {}) {
  CertificateStep s;
  s.kind = kind;
  s.claim = std::move(claim);
  s.ref = std::move(ref);
  s.inputs = std::move(inputs);
  s.status = ok ? StepStatus::Pass : StepStatus::Fail;
  return s;
}

CertificateStep axiom_step(const std::string& key, std::string claim, json inputs = json::object()) {
  const std::string* st = statement_for(key);
  if (!st) throw Error(ErrorKind::InvariantViolation, "unknown citation key " + key);
  CertificateStep s;
  s.kind = StepKind::AxiomCitation;
  s.claim = std::move(claim);
  s.ref = key;
  s.statement = *st;
  s.inputs = std::move(inputs);
  s.status = StepStatus::Axiom;
  return s;
}

std::vector<std::int64_t> odd_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto x : divisors(n)) {
    if (x % 2 == 1) out.push_back(x);
  }
  return out;
}

std::vector<std::int64_t> even_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto x : divisors(n)) {
    if (x % 2 == 0) out.push_back(x);
  }
  return out;
}

std::int64_t lcm_of(const std::vector<int>& v) {
  std::int64_t l = 1;
  for (int x : v) l = lcm(l, x);
  return l;
}

// State of a cover after some pullbacks.
struct Chain {
  InertiaShape over0;
  InertiaShape over_inf;
  GroupClaim claim;
};

struct ReplayContext {
  Certificate& cert;
  const std::function<CoverSpec(const CoverSpec&)>* mutate = nullptr;
};

std::string ref_for_clause(const std::string& clause) {
  if (clause.find("transposition") != std::string::npos) return "primitive-transposition";
  if (clause.find("3-cycle") != std::string::npos && clause.find("gamma^") == 0 &&
      clause.find("fixing") == std::string::npos) {
    return "primitive-3-cycle";
  }
  return "jones";
}

// Report and verdict steps shared by spec-based and explicit covers.
std::optional<Chain> report_steps(ReplayContext& ctx, const RamificationReport& rep, const GaloisDecision& dec,
                                  const std::vector<int>& expected_over0, const std::vector<int>& m,
                                  std::optional<GaloisVerdict> expected, const std::string& label) {
  std::vector<int> inf_parts{rep.p};
  inf_parts.insert(inf_parts.end(), m.begin(), m.end());
  const RamificationProfile expected_inf = RamificationProfile::from(inf_parts);
  const Rational expected_jump(rep.r + rep.s - 1, rep.p - 1);
  const bool over0_ok = rep.over0.sum() == rep.d &&
                        (expected_over0.empty() || rep.over0 == RamificationProfile::from(expected_over0));
  const bool ok = rep.etale_away && over0_ok && rep.over_inf == expected_inf && rep.jump == expected_jump;
  json in;
  in["cover"] = label;
  in["d"] = rep.d;
  in["over0"] = rep.over0.to_string();
  in["over0_sum"] = rep.over0.sum();
  in["over_inf"] = rep.over_inf.to_string();
  in["expected_over_inf"] = expected_inf.to_string();
  in["jump"] = frac(rep.jump);
  in["expected_jump"] = frac(expected_jump);
  in["etale_away"] = rep.etale_away;
  in["resultant_x_exponent"] = rep.resultant_x_exponent;
  in["theta_exp"] = rep.theta_exp;
  in["ord_theta"] = rep.ord_theta;
  in["genus"] = rep.genus;
  in["inertia0"] = rep.inertia0.to_string();
  in["inertia_inf"] = rep.inertia_inf.to_string();
  ctx.cert.steps.push_back(make_step(StepKind::CoverReport,
                                     "cover is etale away from {0, infinity} with inertia " + rep.inertia0.to_string() +
                                         " over 0 and " + rep.inertia_inf.to_string() + " over infinity",
                                     ok, in, "inertia-structure"));
  if (!ok) return std::nullopt;

  const bool decided = dec.verdict == GaloisVerdict::Alternating || dec.verdict == GaloisVerdict::Symmetric;
  const bool verdict_ok = decided && (!expected || *expected == dec.verdict);
  json vin;
  vin["verdict"] = to_string(dec.verdict);
  if (expected) vin["expected"] = to_string(*expected);
  vin["primitivity"] = dec.primitivity;
  vin["clause"] = dec.alt_clause;
  vin["parity"] = dec.parity;
  vin["basis"] = dec.basis;
  const std::string group = dec.verdict == GaloisVerdict::Alternating ? "A_" : "S_";
  ctx.cert.steps.push_back(make_step(StepKind::GaloisVerdict,
                                     "Galois group is " + (decided ? group + std::to_string(rep.d) : to_string(dec.verdict)),
                                     verdict_ok, vin, ref_for_clause(dec.alt_clause)));
  if (!verdict_ok) return std::nullopt;
  return Chain{rep.inertia0, rep.inertia_inf,
               dec.verdict == GaloisVerdict::Alternating ? GroupClaim::Alternating : GroupClaim::Symmetric};
}

std::optional<Chain> replay_spec(ReplayContext& ctx, CoverSpec spec, const std::string& label,
                                 std::optional<GaloisVerdict> expected) {
  if (ctx.mutate && *ctx.mutate) spec = (*ctx.mutate)(spec);
  json in;
  in["cover"] = label;
  in["spec"] = spec.to_string();
  const auto problems = validate_spec(spec);
  bool holds = false;
  if (problems.empty()) {
    const auto a = check_assumption(spec);
    holds = a.holds;
    in["g"] = a.g_constant ? a.g_constant->to_string() : std::string("nonconstant");
  } else {
    in["invalid"] = problems.front();
  }
  ctx.cert.steps.push_back(make_step(StepKind::AssumptionCheck,
                                     "g(y) is a nonzero constant for " + label, holds, in));
  if (!holds) return std::nullopt;
  const RamificationReport rep = ramification_report(spec);
  return report_steps(ctx, rep, galois_decision(spec, rep), spec.n, spec.m, expected, label);
}

std::optional<Chain> kummer_step(ReplayContext& ctx, const Chain& c, std::int64_t n, const std::string& why) {
  json in;
  in["n"] = n;
  in["reason"] = why;
  in["over0_before"] = c.over0.to_string();
  in["over_inf_before"] = c.over_inf.to_string();
  in["claim_before"] = to_string(c.claim);
  try {
    const KummerResult k = kummer_pullback(c.over0, c.over_inf, n, c.claim);
    in["over0_after"] = k.over0.to_string();
    in["over_inf_after"] = k.over_inf.to_string();
    in["claim_after"] = to_string(k.claim);
    in["over0_etale"] = k.over0_etale;
    if (k.needs_quasi_p_check) in["tau_normal_closure_is_A_d"] = k.quasi_p_check_holds;
    const bool ok = !k.needs_quasi_p_check || k.quasi_p_check_holds;
    ctx.cert.steps.push_back(
        make_step(StepKind::KummerStep, "[" + std::to_string(n) + "]-Kummer pullback", ok, in, "kummer-pullback"));
    if (!ok) return std::nullopt;
    return Chain{k.over0, k.over_inf, k.claim};
  } catch (const Error& e) {
    in["error"] = std::string(to_string(e.kind())) + ": " + e.detail();
    ctx.cert.steps.push_back(
        make_step(StepKind::KummerStep, "[" + std::to_string(n) + "]-Kummer pullback", false, in, "kummer-pullback"));
    return std::nullopt;
  }
}

// IC ending: over 0 unramified, group A_d, key on target.
void ic_final(ReplayContext& ctx, const Chain& c, const ShapeKey& target) {
  const bool ok = c.over0.gamma().is_identity() && c.claim == GroupClaim::Alternating && c.over_inf.key() == target;
  json in;
  in["target"] = key_string(target);
  in["over_inf"] = c.over_inf.to_string();
  in["over_inf_key"] = key_string(c.over_inf.key());
  in["over0_etale"] = c.over0.gamma().is_identity();
  in["claim"] = to_string(c.claim);
  auto s = make_step(StepKind::AbhyankarStep,
                     "A_" + std::to_string(c.over_inf.d()) + "-cover of the affine line with inertia " + key_string(target),
                     ok, in, "abhyankar");
  s.discharges = target;
  ctx.cert.steps.push_back(std::move(s));
}

// Sym ending: group S_d, common gamma over 0, key on target.
void sym_final(ReplayContext& ctx, const Chain& c, const ShapeKey& target, const CycleType& gamma_type) {
  const CycleType got = c.over0.gamma().cycle_type();
  const bool ok = c.claim == GroupClaim::Symmetric && got == gamma_type && c.over_inf.key() == target &&
                  !c.over0.gamma().is_even();
  json in;
  in["target"] = key_string(target);
  in["over_inf"] = c.over_inf.to_string();
  in["over_inf_key"] = key_string(c.over_inf.key());
  in["gamma"] = got.to_string();
  in["expected_gamma"] = gamma_type.to_string();
  in["claim"] = to_string(c.claim);
  auto s = make_step(StepKind::AbhyankarStep,
                     "S_" + std::to_string(c.over_inf.d()) + "-cover with gamma of type " + got.to_string() +
                         " over 0 and inertia " + key_string(target) + " over infinity",
                     ok, in);
  s.discharges = target;
  ctx.cert.steps.push_back(std::move(s));
}

// Cover then a chain of pullbacks then the IC ending.
void ic_route(ReplayContext& ctx, const CoverSpec& spec, const std::string& label, std::optional<GaloisVerdict> expected,
              const std::vector<std::int64_t>& kummers, const ShapeKey& target) {
  auto c = replay_spec(ctx, spec, label, expected);
  for (auto n : kummers) {
    if (!c) return;
    c = kummer_step(ctx, *c, n, "pull back toward " + key_string(target));
  }
  if (c) ic_final(ctx, *c, target);
}

CoverSpec witness(WitnessFamily f, int p, const WitnessParams& wp = {}) { return known_witness(f, p, wp); }

int k_of(const std::string& id, const std::string& prefix) {
  if (id == prefix) return 0;
  if (id.rfind(prefix + "+", 0) == 0) {
    const std::string rest = id.substr(prefix.size() + 1);
    if (rest.size() == 1 && rest[0] >= '1' && rest[0] <= '9') return rest[0] - '0';
  }
  return -1;
}

void require_side(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::SideConditionViolated, what);
}

void side_step(Certificate& c, const json& conditions) {
  c.steps.push_back(make_step(StepKind::GroupComputation, "side conditions on p hold", true, conditions));
}

PermGroup alt_on(int degree, const std::vector<int>& pts) {
  std::vector<Perm> gens;
  for (std::size_t j = 2; j < pts.size(); ++j) {
    gens.push_back(Perm::from_cycles(degree, {{pts[0] + 1, pts[1] + 1, pts[j] + 1}}));
  }
  return PermGroup(degree, gens);
}

std::vector<int> support_of(const PermGroup& g) {
  std::set<int> s;
  for (const auto& x : g.generators()) {
    for (int v : x.support()) s.insert(v);
  }
  return {s.begin(), s.end()};
}

std::int64_t tame_quotient(const PermGroup& i, int p) {
  const PPartResult pp = p_part_subgroup(i, p);
  return static_cast<std::int64_t>(i.order() / pp.subgroup.order());
}

// Lem Alt_FP route for a target fixing f >= 2 points.
void deferred_route(ReplayContext& ctx, const IcTarget& t, int p) {
  const int d = t.shape.d();
  const int lower = t.deferred_degree;
  const PermGroup inertia = realize(t.shape);
  const auto parts = alt_fixed_point_parts(inertia, lower, d);
  const std::int64_t m = tame_quotient(inertia, p);
  const PatchCheck pc = check_patch_hypotheses(p, PermGroup::alternating(d), parts, inertia, m);
  json in;
  in["target"] = key_string(t.shape.key());
  in["lower_degree"] = lower;
  in["support"] = static_cast<int>(support_of(inertia).size());
  in["parts"] = static_cast<int>(parts.size());
  in["generation"] = pc.generation;
  in["tame_orders"] = pc.tame_orders;
  in["m"] = m;
  ctx.cert.steps.push_back(make_step(StepKind::PatchHypothesis,
                                     "A_" + std::to_string(d) + " = <Alt(Supp(I) u S_i), I> with matching tame orders",
                                     pc.pass, in, "patching-generalized"));

  // Same generator in degree `lower`: drop fixed tail points.
  std::vector<int> tail = t.shape.key().tail_type.parts;
  int drop = d - lower;
  for (auto it = tail.end(); it != tail.begin() && drop > 0;) {
    --it;
    if (*it == 1) {
      it = tail.erase(it);
      --drop;
    }
  }
  const InertiaShape small = InertiaShape::wild(p, lower, t.shape.theta_exp(), tail);
  const std::string lower_id = lower == p ? "A_p" : "A_p+" + std::to_string(lower - p);
  const Certificate nested = verify_ic_theorem(lower_id, p);
  std::set<ShapeKey> lower_targets;
  for (const auto& lt : enumerate_ic_targets(lower, p, Parity::Even)) lower_targets.insert(lt.shape.key());
  const bool covered = nested.pass() && lower_targets.count(small.key()) > 0;
  json rin;
  rin["lower_theorem"] = lower_id;
  rin["lower_shape"] = small.to_string();
  rin["lower_certificate"] = nested.pass() ? "pass" : "fail";
  rin["is_lower_target"] = lower_targets.count(small.key()) > 0;
  ctx.cert.steps.push_back(make_step(StepKind::Reduction,
                                     "(A_" + std::to_string(lower) + ", " + small.to_string() + ") is realizable",
                                     covered, rin));
  auto ax = axiom_step("patching-generalized",
                       "(A_" + std::to_string(d) + ", " + t.shape.to_string() + ") is realizable",
                       json{{"target", key_string(t.shape.key())}});
  ax.discharges = t.shape.key();
  ctx.cert.steps.push_back(std::move(ax));
}

struct IcPlan {
  CoverSpec spec;
  std::string label;
  std::optional<GaloisVerdict> expected;
  std::vector<std::int64_t> kummers;
};

std::optional<IcPlan> paper_ic_plan(int k, int p, const ShapeKey& key) {
  const int d = p + k;
  using WF = WitnessFamily;
  const auto A = GaloisVerdict::Alternating;
  const auto S = GaloisVerdict::Symmetric;
  if (k == 1 && key == wild_key(p, d, 2, {1})) {
    return IcPlan{witness(WF::PPlusOne, p), "p+1", S, {2LL * (p - 2)}};
  }
  if (k == 3 && key == wild_key(p, d, 1, {2, 1})) {
    return IcPlan{witness(WF::TwoTwo, p, {3, {p + 2, 1}, {2, 1}}), "two-two", A, {p + 2}};
  }
  if (k == 3 && key == wild_key(p, d, 2, {3})) {
    return IcPlan{witness(WF::TwoOne, p, {3, {p + 2, 1}, {}}), "two-one", A, {p + 2}};
  }
  if (k == 4 && key == wild_key(p, d, 1, {4})) {
    auto s = witness(WF::PPlusFourSqrt2, p);
    return IcPlan{s, "p+4-sqrt2", A, {lcm_of(s.n)}};
  }
  if (k == 4 && key == wild_key(p, d, 2, {3, 1})) {
    return IcPlan{witness(WF::PPlusFourSqrt3, p), "p+4-sqrt3", S, {2LL * (p + 2)}};
  }
  if (k == 5 && key == wild_key(p, d, 1, {4, 1})) {
    auto s = witness(WF::PPlusFiveI4, p);
    return IcPlan{s, "p+5-i4", A, {lcm_of(s.n)}};
  }
  if (k == 5 && key == wild_key(p, d, 1, {3, 2})) {
    return IcPlan{witness(WF::PPlusFiveI6, p), "p+5-i6", A, {(p + 5) / 2}};
  }
  if (k == 5 && key == wild_key(p, d, 2, {5})) {
    if ((p - 1) % 5 != 0) return IcPlan{witness(WF::TwoOne, p, {5, {p + 4, 1}, {}}), "two-one", A, {p + 4}};
    return IcPlan{witness(WF::PPlusFiveI5, p), "p+5-i5", S, {6LL * (p - 2)}};
  }
  return std::nullopt;
}

void targets_step(Certificate& c, const std::vector<IcTarget>& targets, int d, Parity parity) {
  json list = json::array();
  for (const auto& t : targets) {
    json e;
    e["shape"] = t.shape.to_string();
    e["key"] = key_string(t.shape.key());
    e["status"] = to_string(t.status);
    if (t.reducible_from) e["from"] = t.reducible_from->to_string();
    if (t.deferred_degree) e["deferred_degree"] = t.deferred_degree;
    list.push_back(e);
  }
  c.steps.push_back(make_step(StepKind::GroupComputation,
                              std::string(parity == Parity::Even ? "even" : "odd") + " maximal inertia targets in S_" +
                                  std::to_string(d),
                              true, json{{"d", d}, {"targets", list}}));
}

void reducible_step(Certificate& c, const std::vector<IcTarget>& targets) {
  const auto done = c.discharged();
  bool ok = true;
  json list = json::array();
  for (const auto& t : targets) {
    if (t.status != TargetStatus::Reducible) continue;
    const bool src = t.reducible_from && done.count(t.reducible_from->key()) &&
                     kummer_reachable(*t.reducible_from).count(t.shape.key());
    ok = ok && src;
    list.push_back(json{{"key", key_string(t.shape.key())},
                        {"from", t.reducible_from ? key_string(t.reducible_from->key()) : std::string()},
                        {"ok", src}});
  }
  if (list.empty()) return;
  c.steps.push_back(make_step(StepKind::Reduction, "remaining targets are Kummer pullbacks of discharged ones", ok,
                              json{{"reduced", list}}, "kummer-pullback"));
}

void coverage_step(Certificate& c) {
  const CoverageReport r = check_coverage(c);
  json miss = json::array(), orph = json::array();
  for (const auto& k : r.missing) miss.push_back(key_string(k));
  for (const auto& k : r.orphan) orph.push_back(key_string(k));
  c.steps.push_back(make_step(StepKind::GroupComputation, "every target is discharged by exactly the steps above",
                              r.ok(), json{{"missing", miss}, {"orphan", orph}}));
}

}  // namespace

std::vector<std::string> lint_certificate(const Certificate& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    if (s.status == StepStatus::Axiom) {
      if (s.kind != StepKind::AxiomCitation) out.push_back(at + "axiom status on a checked step");
      const std::string* st = statement_for(s.ref);
      if (!st) {
        out.push_back(at + "unknown citation key '" + s.ref + "'");
      } else if (*st != s.statement) {
        out.push_back(at + "statement differs from the citation table");
      }
    } else {
      if (s.kind == StepKind::AxiomCitation) out.push_back(at + "citation step with checked status");
      if (s.inputs.empty()) out.push_back(at + "checked step without inputs");
      if (!s.ref.empty() && !statement_for(s.ref)) out.push_back(at + "unknown citation key '" + s.ref + "'");
    }
  }
  return out;
}

json certificate_json(const Certificate& c) {
  json j;
  j["theorem"] = c.theorem;
  j["p"] = c.p;
  json steps = json::array();
  for (const auto& s : c.steps) {
    json e;
    e["kind"] = to_string(s.kind);
    e["claim"] = s.claim;
    if (!s.ref.empty()) e["paper_ref"] = s.ref;
    if (!s.statement.empty()) e["quote"] = s.statement;
    e["inputs"] = s.inputs;
    if (s.discharges) e["discharges"] = key_string(*s.discharges);
    e["status"] = to_string(s.status);
    steps.push_back(e);
  }
  j["steps"] = steps;
  j["overall"] = c.pass() ? "pass" : "fail";
  if (auto f = c.first_failure()) j["first_failure"] = *f;
  return j;
}

std::string emit_certificate(const Certificate& c, CertificateFormat format) {
  if (format == CertificateFormat::Json) return certificate_json(c).dump(2) + "\n";
  std::ostringstream os;
  os << "theorem " << c.theorem << " p=" << c.p << " overall=" << (c.pass() ? "pass" : "fail") << "\n";
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    os << "[" << i << "] " << to_string(s.kind) << " " << to_string(s.status) << ": " << s.claim << "\n";
    if (!s.ref.empty()) os << "    cites " << s.ref << "\n";
    for (const auto& [k, v] : s.inputs.items()) {
      std::string text = v.is_string() ? v.get<std::string>() : v.dump();
      for (std::size_t at = text.find('\n'); at != std::string::npos; at = text.find('\n', at + 1)) {
        text.insert(at + 1, "      ");
      }
      os << "    " << k << " = " << text << "\n";
    }
  }
  return os.str();
}

// ---- reduction series ----

ReductionSeries compute_h_series(const PermGroup& g, const std::vector<PermGroup>& ps) {
  std::vector<Perm> seeds;
  for (const auto& p : ps) {
    if (p.degree() != g.degree() || !p.is_subgroup_of(g)) throw Error(ErrorKind::NotASubgroup, "P_i is not inside G");
    for (const auto& x : p.generators()) seeds.push_back(x);
  }
  ReductionSeries r;
  r.h.push_back(g);
  r.normality_checked = true;
  for (;;) {
    const PermGroup& cur = r.h.back();
    PermGroup next = seeds.empty() ? PermGroup::trivial(g.degree()) : normal_closure(cur, seeds);
    for (const auto& x : next.generators()) {
      for (const auto& y : cur.generators()) {
        if (!next.contains(conjugate(x, y))) r.normality_checked = false;
      }
    }
    if (next.same_group(cur)) break;
    r.h.push_back(std::move(next));
  }
  r.l = static_cast<int>(r.h.size()) - 1;
  r.gic_hypothesis = r.h.size() == 1;
  return r;
}

// ---- patching ----

PatchCheck check_patch_hypotheses(int p, const PermGroup& g, const std::vector<PatchPart>& parts, const PermGroup& inertia,
                                  std::int64_t m, const std::optional<Perm>& shared) {
  const int deg = g.degree();
  if (inertia.degree() != deg || !inertia.is_subgroup_of(g)) throw Error(ErrorKind::NotASubgroup, "I is not inside G");
  PatchCheck r;
  std::vector<PermGroup> groups;
  std::ostringstream why;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (part.group.degree() != deg || part.inertia.degree() != deg) {
      throw Error(ErrorKind::DegreeMismatch, "patching groups differ in degree");
    }
    if (!part.group.is_subgroup_of(g)) throw Error(ErrorKind::NotASubgroup, "G_" + std::to_string(i + 1) + " is not inside G");
    if (!part.inertia.is_subgroup_of(inertia)) {
      throw Error(ErrorKind::NotASubgroup, "I_" + std::to_string(i + 1) + " is not inside I");
    }
    groups.push_back(part.group);
    r.tame_orders.push_back(tame_quotient(part.inertia, p));
  }
  r.generation = join(deg, groups, inertia.generators()).same_group(g);
  r.tame_match = std::all_of(r.tame_orders.begin(), r.tame_orders.end(), [&](std::int64_t x) { return x == m; });
  if (shared) {
    r.shared_element_ok = shared->order() % p != 0;
    for (const auto& part : parts) r.shared_element_ok = r.shared_element_ok && part.group.contains(*shared);
  }
  if (!r.generation) why << "G_i and I do not generate G; ";
  if (!r.tame_match) why << "tame quotient orders differ from m = " << m << "; ";
  if (!r.shared_element_ok) why << "shared element condition fails; ";
  r.pass = r.generation && r.tame_match && r.shared_element_ok;
  r.detail = why.str();
  return r;
}

std::vector<PatchPart> alt_fixed_point_parts(const PermGroup& inertia, int lower, int degree) {
  const std::vector<int> supp = support_of(inertia);
  const int k = static_cast<int>(supp.size());
  if (lower < k || lower > degree) throw Error(ErrorKind::BadRange, "lower degree outside [|Supp(I)|, d]");
  std::vector<int> rest;
  for (int x = 0; x < degree; ++x) {
    if (!std::binary_search(supp.begin(), supp.end(), x)) rest.push_back(x);
  }
  std::vector<PatchPart> out;
  const int need = lower - k;
  std::vector<int> pick(static_cast<std::size_t>(need));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == need) {
      std::vector<int> pts = supp;
      for (int i = 0; i < need; ++i) pts.push_back(rest[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
      out.push_back({alt_on(degree, pts), inertia});
      return;
    }
    for (int i = start; i < static_cast<int>(rest.size()); ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

// ---- scope and coverage ----

std::vector<std::string> ic_theorem_ids() { return {"A_p", "A_p+1", "A_p+2", "A_p+3", "A_p+4", "A_p+5"}; }
std::vector<std::string> sym_theorem_ids() { return {"S_p", "S_p+1", "S_p+2", "S_p+3", "S_d-same-inertia", "semidirect"}; }
std::vector<std::string> gpwic_ids() {
  return {"p-group", "strictly-divisible", "product-small-order", "product-arbitrary",
          "weaker-inertia", "weaker-branch-locus", "alt-product-cycle"};
}

std::optional<TheoremScope> theorem_scope(const std::string& id, int p) {
  if (int k = k_of(id, "A_p"); k >= 0 && k <= 5) {
    TheoremScope s{p + k, Parity::Even, {}};
    for (int u = p; u < p + k; ++u) s.lower_available.insert(u);
    return s;
  }
  if (int k = k_of(id, "S_p"); k >= 0 && k <= 3) return TheoremScope{p + k, Parity::Odd, {}};
  return std::nullopt;
}

CoverageReport check_coverage(const Certificate& c) {
  CoverageReport r;
  const auto scope = theorem_scope(c.theorem, c.p);
  const auto done = c.discharged();
  std::set<ShapeKey> needed;
  if (scope && scope->d <= 2 * c.p - 1) {
    for (const auto& t : enumerate_ic_targets(scope->d, c.p, scope->parity, scope->lower_available)) {
      if (t.status != TargetStatus::Reducible) needed.insert(t.shape.key());
    }
  }
  std::set_difference(needed.begin(), needed.end(), done.begin(), done.end(), std::back_inserter(r.missing));
  std::set_difference(done.begin(), done.end(), needed.begin(), needed.end(), std::back_inserter(r.orphan));
  return r;
}

// ---- route search ----

std::optional<TargetRoute> find_target_route(int d, int p, const ShapeKey& target, std::uint64_t budget) {
  const int t = d - p;
  if (t < 1 || t > p - 1) throw Error(ErrorKind::BadRange, "route search needs 1 <= d - p <= p - 1");
  const auto all_d = partitions(d, d);
  for (int s = 1; s <= 8; ++s) {
    for (const auto& m : partitions(t, t)) {
      if (std::any_of(m.begin(), m.end(), [&](int x) { return x % p == 0; })) continue;
      const int r = static_cast<int>(m.size());
      int i0 = std::gcd(p - 1, r + s - 1);
      if (i0 == p - 1) i0 = 0;
      const InertiaShape sigma0 = InertiaShape::wild(p, d, i0, m);
      const std::int64_t ord = sigma0.tame_order();
      std::set<std::int64_t> cands;
      for (auto g : divisors(ord)) {
        if (power_shape(sigma0, g).key() == target) cands.insert(g);
      }
      if (cands.empty()) continue;
      auto accept = [&](const std::vector<int>& n) {
        const std::int64_t e = lcm_of(n);
        if (e % p == 0 || !cands.count(std::gcd(e, ord))) return false;
        std::vector<int> sorted = n;
        std::sort(sorted.rbegin(), sorted.rend());
        const Perm gamma = Perm::from_cycle_type(d, sorted);
        if (e % 2 == 1 && !(gamma.is_even() && sigma0.is_even())) return false;
        const auto v = decide_galois_group(p, d, gamma).verdict;
        return v == GaloisVerdict::Alternating || v == GaloisVerdict::Symmetric;
      };
      bool any = false;
      for (const auto& q : all_d) {
        if (static_cast<int>(q.size()) != s) continue;
        if (std::any_of(q.begin(), q.end(), [&](int x) { return x % p == 0; })) continue;
        if (accept(q)) {
          any = true;
          break;
        }
      }
      if (!any) continue;
      const PointSetSearch found = point_set_witness(p, t, m, s, accept, 2, budget);
      if (found.witness && check_assumption(*found.witness).holds) {
        return TargetRoute{*found.witness, lcm_of(found.witness->n)};
      }
    }
  }
  return std::nullopt;
}

// ---- IC theorems ----

namespace {

Certificate ic_impl(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>* mutate) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, "p must be an odd prime");
  const int k = k_of(id, "A_p");
  if (k < 0 || k > 5) throw Error(ErrorKind::BadRange, "unknown theorem id " + id);
  const int d = p + k;
  require_side(p >= 5, "p >= 5 fails");
  json cond{{"p", p}, {"d", d}};
  if (k >= 1) {
    require_side(p % 3 == 2, "p = 2 mod 3 fails");
    cond["p mod 3"] = p % 3;
  }
  if (k == 5) {
    require_side(p >= 17, "p >= 17 fails");
    require_side((p + 1) % 4 != 0, "4 does not divide p+1 fails");
    cond["(p+1) mod 4"] = (p + 1) % 4;
  }
  require_side(d <= 2 * p - 1, "d <= 2p-1 fails");
  Certificate cert{id, p, {}};
  side_step(cert, cond);
  ReplayContext ctx{cert, mutate};

  const auto scope = *theorem_scope(id, p);
  const auto targets = enumerate_ic_targets(d, p, Parity::Even, scope.lower_available);
  targets_step(cert, targets, d, Parity::Even);

  if (k == 0 || k == 2) {
    for (const auto& t : targets) {
      if (t.status == TargetStatus::Reducible) continue;
      auto ax = axiom_step(k == 0 ? "ic-alt-p" : "ic-alt-p+2",
                           "(A_" + std::to_string(d) + ", " + t.shape.to_string() + ") is realizable",
                           json{{"target", key_string(t.shape.key())}});
      ax.discharges = t.shape.key();
      cert.steps.push_back(std::move(ax));
    }
    reducible_step(cert, targets);
    coverage_step(cert);
    return cert;
  }

  for (const auto& t : targets) {
    if (t.status == TargetStatus::Reducible) continue;
    const ShapeKey key = t.shape.key();
    if (t.status == TargetStatus::Deferred) {
      deferred_route(ctx, t, p);
      continue;
    }
    if (auto plan = paper_ic_plan(k, p, key)) {
      ic_route(ctx, plan->spec, plan->label, plan->expected, plan->kummers, key);
      continue;
    }
    const auto route = find_target_route(d, p, key);
    if (!route) {
      cert.steps.push_back(make_step(StepKind::GroupComputation, "no cover route found for " + key_string(key), false,
                                     json{{"target", key_string(key)}}));
      continue;
    }
    ic_route(ctx, route->spec, "route found by search", std::nullopt, {route->kummer}, key);
  }
  reducible_step(cert, targets);
  coverage_step(cert);
  return cert;
}

bool is_l_plus_one(int p) {
  // p = l + 1 with l a prime >= 5.
  return p - 1 >= 5 && is_prime(p - 1);
}

struct SplitChoice {
  std::vector<int> n;
  CoverSpec spec;
};

Certificate sym_impl(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>* mutate);

}  // namespace

Certificate verify_ic_theorem(const std::string& id, int p) { return ic_impl(id, p, nullptr); }

Certificate verify_ic_theorem(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>& mutate) {
  return ic_impl(id, p, &mutate);
}

Certificate verify_sym_theorem(const std::string& id, int p) { return sym_impl(id, p, nullptr); }

Certificate verify_sym_theorem(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>& mutate) {
  return sym_impl(id, p, &mutate);
}

Certificate verify_theorem(const std::string& id, int p) {
  const auto ic = ic_theorem_ids();
  if (std::find(ic.begin(), ic.end(), id) != ic.end()) return verify_ic_theorem(id, p);
  const auto sym = sym_theorem_ids();
  if (std::find(sym.begin(), sym.end(), id) != sym.end()) return verify_sym_theorem(id, p);
  const auto gp = gpwic_ids();
  if (std::find(gp.begin(), gp.end(), id) != gp.end()) return check_gpwic(default_gpwic_instance(id, p));
  throw Error(ErrorKind::BadRange, "unknown theorem id " + id);
}

// ---- symmetric theorems ----

namespace {

void sym_targets(Certificate& cert, int d, int p, std::vector<IcTarget>& targets) {
  targets = enumerate_ic_targets(d, p, Parity::Odd);
  targets_step(cert, targets, d, Parity::Odd);
}

// Pull back `base` along each n in `degrees` and close with the Sym ending on the matching target.
void sym_fanout(ReplayContext& ctx, const Chain& base, const std::vector<std::int64_t>& degrees, int p, int d,
                const std::function<ShapeKey(std::int64_t)>& target_for, const CycleType& gamma_type) {
  (void)p;
  (void)d;
  for (auto n : degrees) {
    const ShapeKey target = target_for(n);
    std::optional<Chain> c = base;
    if (n != 1) c = kummer_step(ctx, base, n, "pull back toward " + key_string(target));
    if (c) sym_final(ctx, *c, target, gamma_type);
  }
}

void semidirect_steps(Certificate& cert, int p) {
  const int n = p - 1;
  // Z/n-cover of P^1 branched at two points with inertia orders m1, m2 | n.
  json pairs = json::array();
  bool forced = true;
  for (auto m1 : divisors(n)) {
    for (auto m2 : divisors(n)) {
      // 2g - 2 = -2n + (n/m1)(m1-1) + (n/m2)(m2-1) = -(n/m1 + n/m2)
      const std::int64_t twice_g_minus_2 = -(n / m1 + n / m2);
      const bool genus_ok = twice_g_minus_2 >= -2 && (twice_g_minus_2 + 2) % 2 == 0;
      if (genus_ok) {
        pairs.push_back(json::array({m1, m2}));
        forced = forced && m1 == n && m2 == n;
      }
    }
  }
  cert.steps.push_back(make_step(StepKind::GroupComputation,
                                 "a Z/" + std::to_string(n) + "-cover of P^1 branched at two points is totally ramified at both",
                                 forced && pairs.size() == 1, json{{"n", n}, {"admissible (m1, m2)", pairs}},
                                 "riemann-hurwitz"));

  const int d = p;
  const Perm tau = make_tau(p, d);
  const Perm theta = make_theta(p, d);
  const PermGroup big_p(d, {tau});
  const PermGroup g(d, {tau, theta});
  const bool order_ok = g.order() == BigInt(p) * n;
  const bool normalizes = big_p.contains(conjugate(tau, theta));
  cert.steps.push_back(make_step(StepKind::GroupComputation, "G = P x| Z/n with Z/n normalizing P_1", order_ok && normalizes,
                                 json{{"P", "<" + tau.to_string() + ">"},
                                      {"generator", theta.to_string()},
                                      {"|G|", big(g.order())},
                                      {"theta normalizes P_1", normalizes}}));
  const FrattiniResult fr = frattini_quotient(big_p, p, {big_p});
  cert.steps.push_back(make_step(StepKind::GroupComputation, "P = <P_1, P_2> from <P_1^P, P_2^P> = P",
                                 fr.lemma_holds && fr.ps_generate,
                                 json{{"|P|", big(fr.group_order)},
                                      {"|Phi(P)|", big(fr.frattini_order)},
                                      {"rank", fr.rank},
                                      {"normal closure generates", fr.normal_closure_generates},
                                      {"P_i generate", fr.ps_generate}}));
  cert.steps.push_back(axiom_step("hkg-covers", "an HKG cover with group P_1 x| Z/n branched at {0, infinity} exists"));
  cert.steps.push_back(
      axiom_step("embedding-tame-base", "the HKG cover extends to a G-cover with P_2 x| Z/n as inertia over 0"));
  // Genus one base, one branch point with Z/m totally ramified: 2g_Y - 2 = m - 1.
  json ms = json::array();
  bool odd_only = true;
  for (int m = 2; m <= 12; ++m) {
    const bool integral = (m - 1) % 2 == 0;
    if (integral) ms.push_back(m);
    odd_only = odd_only && (integral == (m % 2 == 1));
  }
  cert.steps.push_back(make_step(StepKind::GroupComputation,
                                 "a Z/m-cover of a genus one curve totally ramified at one point needs m odd", odd_only,
                                 json{{"m with integral genus, 2..12", ms}}, "riemann-hurwitz"));
}

void same_inertia_steps(Certificate& cert, int p) {
  const int d = p + 1;
  const Perm tau = make_tau(p, d);
  const Perm gamma = make_theta(p, d);
  const PermGroup alt = PermGroup::alternating(d);
  json cond{{"p", p}, {"d", d}, {"gcd(d, p)", std::gcd(d, p)}};
  side_step(cert, cond);
  cert.steps.push_back(make_step(StepKind::GroupComputation, "gamma is odd", !gamma.is_even(),
                                 json{{"gamma", gamma.to_string()}}));
  std::vector<Perm> gens = alt.generators();
  gens.push_back(gamma);
  const PermGroup sd(d, gens);
  cert.steps.push_back(make_step(StepKind::GroupComputation, "S_d = <A_d, gamma>", sd.order() == factorial(d),
                                 json{{"order", big(sd.order())}, {"d!", big(factorial(d))}}));
  const PermGroup closure = normal_closure(alt, {tau});
  cert.steps.push_back(make_step(StepKind::GroupComputation, "A_d is quasi-p: <tau^{A_d}> = A_d",
                                 closure.order() == alt.order(), json{{"order", big(closure.order())}}));
  const bool normalizes = PermGroup(d, {tau}).contains(conjugate(tau, gamma));
  cert.steps.push_back(make_step(StepKind::GroupComputation, "gamma normalizes P = <tau>", normalizes,
                                 json{{"tau", tau.to_string()}, {"gamma tau gamma^-1", conjugate(tau, gamma).to_string()}}));
  cert.steps.push_back(axiom_step("purely-wild-products", "(A_d, <tau>) is realizable",
                                  json{{"d", d}}));
  cert.steps.push_back(axiom_step("embedding", "the [ord gamma]-Kummer cover embeds into an S_d-cover with I over infinity",
                                  json{{"ord gamma", gamma.order()}}));
}

Certificate sym_impl(const std::string& id, int p, const std::function<CoverSpec(const CoverSpec&)>* mutate) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, "p must be an odd prime");
  Certificate cert{id, p, {}};
  ReplayContext ctx{cert, mutate};
  if (id == "semidirect") {
    side_step(cert, json{{"p", p}});
    semidirect_steps(cert, p);
    return cert;
  }
  if (id == "S_d-same-inertia") {
    same_inertia_steps(cert, p);
    return cert;
  }
  const int k = k_of(id, "S_p");
  if (k < 0 || k > 3) throw Error(ErrorKind::BadRange, "unknown theorem id " + id);
  const int d = p + k;
  require_side(p >= 5, "p >= 5 fails");
  json cond{{"p", p}, {"d", d}};
  if (k >= 1) {
    require_side(p % 3 == 2, "p = 2 mod 3 fails");
    cond["p mod 3"] = p % 3;
  }
  if (k >= 2) {
    require_side(p % 12 == 11, "p = 11 mod 12 fails");
    cond["p mod 12"] = p % 12;
  }
  if (k == 2) {
    require_side(!is_l_plus_one(p), "p = l + 1 for a prime l >= 5");
    cond["p - 1 prime"] = is_prime(p - 1);
  }
  side_step(cert, cond);
  std::vector<IcTarget> targets;
  sym_targets(cert, d, p, targets);
  using WF = WitnessFamily;
  const auto S = GaloisVerdict::Symmetric;
  const auto odd = odd_divisors(p - 1);
  const auto even = even_divisors(p - 1);
  auto theta_key = [&](std::int64_t i, const std::vector<int>& tail) {
    return wild_key(p, d, static_cast<int>(i % (p - 1)), tail);
  };

  if (k == 0) {
    const ExplicitCover cover = degree_p_trinomial(p, 2);
    const RamificationReport rep = ramification_report(cover);
    auto base = report_steps(ctx, rep, rep.decision, {}, {}, S, "y^p - y^2 - x");
    if (base) {
      sym_fanout(ctx, *base, odd, p, d, [&](std::int64_t i) { return theta_key(i, {}); },
                 base->over0.gamma().cycle_type());
    }
  } else if (k == 1) {
    auto base = replay_spec(ctx, witness(WF::PPlusOne, p), "p+1", S);
    if (base) base = kummer_step(ctx, *base, p - 2, "reduce gamma to a transposition");
    if (base) {
      sym_fanout(ctx, *base, odd, p, d, [&](std::int64_t i) { return theta_key(i, {1}); },
                 base->over0.gamma().cycle_type());
    }
  } else if (k == 2) {
    // First split n_1 >= n_2 that has a witness, an odd gamma, A_d inside G, and lcm(n) prime to the odd part of p-1.
    std::optional<SplitChoice> choice;
    for (int n1 = p + 1; n1 >= (p + 3) / 2 && !choice; --n1) {
      const int n2 = p + 2 - n1;
      if (n1 % p == 0 || n2 % p == 0) continue;
      const std::vector<int> n{n1, n2};
      const Perm gamma = Perm::from_cycle_type(d, n);
      const GaloisDecision dec = decide_galois_group(p, d, gamma);
      bool lcm_ok = true;
      for (auto i : odd) lcm_ok = lcm_ok && std::gcd(i, lcm_of(n)) == 1;
      std::vector<CoverSpec> found;
      int field_degree = 0;
      for (int deg : {1, 2}) {
        found = witness_search(p, 2, n, {1, 1}, deg, 4'000'000);
        if (!found.empty()) {
          field_degree = deg;
          break;
        }
      }
      json in{{"n", vec_string(n)},
              {"witnesses", found.size()},
              {"field_degree", field_degree},
              {"gamma_odd", !gamma.is_even()},
              {"verdict", to_string(dec.verdict)},
              {"lcm(n) prime to odd divisors of p-1", lcm_ok}};
      const bool usable = !found.empty() && !gamma.is_even() && dec.verdict == S && lcm_ok;
      cert.steps.push_back(make_step(StepKind::GroupComputation,
                                     usable ? "split " + vec_string(n) + " is usable for gamma"
                                            : "split " + vec_string(n) + " is not usable for gamma",
                                     true, in));
      if (usable) choice = SplitChoice{n, found.front()};
    }
    if (!choice) {
      cert.steps.push_back(make_step(StepKind::GroupComputation, "some split of p+2 is usable", false, json{{"p", p}}));
    } else {
      auto base1 = replay_spec(ctx, choice->spec, "two-two, m = (1,1)", S);
      if (base1) {
        sym_fanout(ctx, *base1, odd, p, d, [&](std::int64_t i) { return theta_key(i, {1, 1}); },
                   base1->over0.gamma().cycle_type());
      }
      auto base2 = replay_spec(ctx, witness(WF::TwoOne, p, {2, choice->n, {}}), "two-one", S);
      if (base2) {
        std::vector<std::int64_t> halves;
        for (auto j : even) halves.push_back(j / 2);
        sym_fanout(ctx, *base2, halves, p, d, [&](std::int64_t h) { return theta_key(2 * h, {2}); },
                   base2->over0.gamma().cycle_type());
      }
    }
  } else {
    auto base1 = replay_spec(ctx, witness(WF::PPlusThreeCycle, p), "p+3-cycle", S);
    if (base1) {
      sym_fanout(ctx, *base1, odd, p, d, [&](std::int64_t i) { return theta_key(i, {1, 1, 1}); },
                 base1->over0.gamma().cycle_type());
    }
    auto base2 = replay_spec(ctx, witness(WF::OneTwo, p, {3, {}, {2, 1}}), "one-two", S);
    if (base2) {
      std::vector<std::int64_t> halves;
      for (auto j : even) halves.push_back(j / 2);
      sym_fanout(ctx, *base2, halves, p, d, [&](std::int64_t h) { return theta_key(2 * h, {2, 1}); },
                 base2->over0.gamma().cycle_type());
    }
    auto base3 = replay_spec(ctx, witness(WF::OneOne, p, {3, {}, {}}), "one-one", S);
    if (base3) {
      sym_fanout(ctx, *base3, odd, p, d, [&](std::int64_t i) { return theta_key(i, {3}); },
                 base3->over0.gamma().cycle_type());
    }
  }
  cert.steps.push_back(axiom_step("patching-two-covers",
                                  "covers with a common gamma over 0 combine to realize any pair of targets over 0 and infinity"));
  coverage_step(cert);
  return cert;
}

}  // namespace

// ---- GPWIC ----

namespace {

Perm restrict_to(const Perm& g, int offset, int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  for (int x = 0; x < degree; ++x) img[static_cast<std::size_t>(x)] = g(offset + x) - offset;
  return Perm(img);
}

PermGroup project(const PermGroup& h, int offset, int degree) {
  std::vector<Perm> gens;
  for (const auto& g : h.generators()) gens.push_back(restrict_to(g, offset, degree));
  return PermGroup(degree, gens);
}

Perm embed_at(const Perm& g, int offset, int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  for (int x = 0; x < g.degree(); ++x) img[static_cast<std::size_t>(offset + x)] = offset + g(x);
  return Perm(img);
}

bool strictly_divisible(const BigInt& order, int p) { return p_valuation(order, p) == 1; }

json orders_json(const std::vector<PermGroup>& gs) {
  json a = json::array();
  for (const auto& g : gs) a.push_back(big(g.order()));
  return a;
}

void hypothesis_generation(Certificate& c, const PermGroup& g, const std::vector<PermGroup>& ps) {
  const ReductionSeries rs = compute_h_series(g, ps);
  c.steps.push_back(make_step(StepKind::GroupComputation, "G = <P_1^G, ..., P_r^G>", rs.gic_hypothesis && rs.normality_checked,
                              json{{"|G|", big(g.order())}, {"|H_1|", big(rs.h.size() > 1 ? rs.h[1].order() : g.order())},
                                   {"l", rs.l}}));
}

}  // namespace

GpwicInstance default_gpwic_instance(const std::string& id, int p) {
  GpwicInstance in;
  in.id = id;
  in.p = p;
  if (id == "p-group") {
    // Z/p x Z/p on 2p points.
    const int d = 2 * p;
    const Perm a = embed_at(make_tau(p, p), 0, d);
    const Perm b = embed_at(make_tau(p, p), p, d);
    in.group = PermGroup(d, {a, b});
    in.ps = {PermGroup(d, {a}), PermGroup(d, {b})};
  } else if (id == "strictly-divisible") {
    const int d = p == 3 ? 5 : p;
    in.group = PermGroup::alternating(d);
    in.ps = {PermGroup(d, {make_tau(p, d)})};
  } else if (id == "product-small-order" || id == "product-arbitrary") {
    const int d1 = p, d2 = p + 1;
    in.factors = {PermGroup::alternating(d1), PermGroup::alternating(d2)};
    in.group = direct_product(in.factors[0], in.factors[1]);
    const int d = d1 + d2;
    const Perm t1 = embed_at(make_tau(p, d1), 0, d);
    const Perm t2 = embed_at(make_tau(p, d2), d1, d);
    in.ps = {PermGroup(d, {t1}), PermGroup(d, {t1 * t2})};
  } else if (id == "weaker-inertia") {
    const int d = p + 2;
    in.group = PermGroup::alternating(d);
    in.ps = {PermGroup(d, {make_tau(p, d)})};
  } else if (id == "weaker-branch-locus") {
    const int d = p;
    in.group = PermGroup::alternating(d);
    in.ps = {PermGroup(d, {make_tau(p, d)})};
    in.conjugates = {{0, Perm::from_cycles(d, {{1, 2, 3}})}};
  } else if (id == "alt-product-cycle") {
    in.a = 2;
    const int d = in.a * p;
    in.group = PermGroup::alternating(d);
    std::vector<std::vector<int>> cyc;
    for (int i = 0; i < in.a; ++i) {
      std::vector<int> c;
      for (int x = 1; x <= p; ++x) c.push_back(i * p + x);
      cyc.push_back(c);
    }
    in.ps = {PermGroup(d, {Perm::from_cycles(d, cyc)})};
  } else {
    throw Error(ErrorKind::BadRange, "unknown GPWIC id " + id);
  }
  return in;
}

Certificate check_gpwic(const GpwicInstance& in) {
  const int p = in.p;
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, "p must be an odd prime");
  Certificate c{in.id, p, {}};
  const PermGroup& g = in.group;
  const int deg = g.degree();
  if (in.id == "p-group") {
    const FrattiniResult fr = frattini_quotient(g, p, in.ps);
    c.steps.push_back(make_step(StepKind::GroupComputation, "G is a p-group", true, json{{"|G|", big(fr.group_order)}}));
    c.steps.push_back(make_step(StepKind::GroupComputation, "<P_i^G> = G implies <P_i> = G via G/Phi(G)",
                                fr.normal_closure_generates && fr.ps_generate && fr.lemma_holds,
                                json{{"|Phi(G)|", big(fr.frattini_order)},
                                     {"rank", fr.rank},
                                     {"image ranks", fr.image_ranks},
                                     {"normal closure generates", fr.normal_closure_generates},
                                     {"P_i generate", fr.ps_generate}}));
    c.steps.push_back(axiom_step("patching-two-covers", "induction on r patches the P_i-covers into a G-cover"));
    return c;
  }
  if (in.id == "strictly-divisible") {
    const BigInt ord = g.order();
    const bool sd = strictly_divisible(ord, p);
    c.steps.push_back(make_step(StepKind::GroupComputation, "p divides |G| exactly once", sd,
                                json{{"|G|", big(ord)}, {"p-valuation", p_valuation(ord, p)}}));
    for (std::size_t i = 0; i < in.ps.size(); ++i) {
      const bool quasi = normal_closure(g, in.ps[i].generators()).same_group(g);
      c.steps.push_back(make_step(StepKind::GroupComputation, "<P_" + std::to_string(i + 1) + "^G> = G", quasi,
                                  json{{"|P_i|", big(in.ps[i].order())}}));
    }
    c.steps.push_back(axiom_step("raynaud-sylow-p", "each (G, P_i) is realizable"));
    c.steps.push_back(axiom_step("patching-two-covers", "induction on r patches the covers"));
    return c;
  }
  if (in.id == "product-small-order" || in.id == "product-arbitrary") {
    if (in.factors.size() < 2) throw Error(ErrorKind::BadRange, "product ids need at least two factors");
    std::vector<int> offsets;
    int off = 0;
    for (const auto& f : in.factors) {
      offsets.push_back(off);
      off += f.degree();
    }
    if (off != deg) throw Error(ErrorKind::DegreeMismatch, "factor degrees do not add up");
    json fin = json::array();
    bool factors_ok = true;
    for (const auto& f : in.factors) {
      const AltSym cls = classify_alt_sym(f);
      const int fd = f.degree();
      const bool simple_alt = cls == AltSym::Alternating && fd >= 5;
      const bool order_ok = strictly_divisible(f.order(), p) || std::gcd(fd, p) == 1 || fd == p;
      factors_ok = factors_ok && simple_alt && order_ok;
      fin.push_back(json{{"degree", fd}, {"class", to_string(cls)}, {"order", big(f.order())}});
    }
    c.steps.push_back(make_step(StepKind::GroupComputation,
                                "each factor is a simple alternating group with the required p-part", factors_ok,
                                json{{"factors", fin}}));
    hypothesis_generation(c, g, in.ps);
    if (in.id == "product-small-order") {
      json alphas = json::array();
      std::set<std::size_t> all;
      bool closures = true;
      for (const auto& pi : in.ps) {
        json a = json::array();
        std::vector<PermGroup> proj;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < in.factors.size(); ++j) {
          const PermGroup pj = project(pi, offsets[j], in.factors[j].degree());
          if (!pj.is_trivial()) {
            a.push_back(j + 1);
            idx.push_back(j);
            all.insert(j);
            proj.push_back(pj);
          }
        }
        // conjugates of pi_alpha(P_i) generate H_alpha: check factorwise, the factors being simple.
        for (std::size_t q = 0; q < idx.size(); ++q) {
          closures = closures && normal_closure(in.factors[idx[q]], proj[q].generators()).same_group(in.factors[idx[q]]);
        }
        alphas.push_back(a);
      }
      const bool cover_all = all.size() == in.factors.size();
      c.steps.push_back(make_step(StepKind::GroupComputation, "conjugates of pi_alpha(P_i) generate H_alpha and the alpha_i cover all factors",
                                  closures && cover_all, json{{"alpha", alphas}}));
      c.steps.push_back(axiom_step("purely-wild-products", "(H_alpha_i, P_i) is realizable for each i"));
      c.steps.push_back(axiom_step("patching-two-covers", "induction on r patches the covers into a G-cover"));
      return c;
    }
    // product-arbitrary
    const auto& g1 = in.factors[0];
    const auto& g2 = in.factors[1];
    const bool distinct_simple = g1.order() != g2.order() && classify_alt_sym(g1) == AltSym::Alternating &&
                                 classify_alt_sym(g2) == AltSym::Alternating && g1.degree() >= 5 && g2.degree() >= 5;
    c.steps.push_back(make_step(StepKind::GroupComputation,
                                "G_1 and G_2 are non-isomorphic simple groups, so they share no nontrivial quotient",
                                distinct_simple, json{{"|G_1|", big(g1.order())}, {"|G_2|", big(g2.order())}}));
    json gs = json::array();
    bool rec = true;
    for (const auto& pi : in.ps) {
      const GoursatResult gr = goursat_decompose(g1, g2, pi);
      rec = rec && gr.reconstructs;
      gs.push_back(json{{"|pi1|", big(gr.pi1.order())},
                        {"|pi2|", big(gr.pi2.order())},
                        {"|N1|", big(gr.n1.order())},
                        {"|N2|", big(gr.n2.order())},
                        {"|Q|", big(gr.quotient_order)},
                        {"reconstructs", gr.reconstructs}});
    }
    c.steps.push_back(make_step(StepKind::GroupComputation, "each P_i is a fibre product over its Goursat quotient", rec,
                                json{{"goursat", gs}}));
    c.steps.push_back(axiom_step("common-local-cover", "the factor covers agree on the Q_i-subextensions"));
    c.steps.push_back(axiom_step("product-fibre", "the fibre product is a connected G_1 x G_2-cover with inertia P_i"));
    return c;
  }
  if (in.id == "weaker-inertia") {
    hypothesis_generation(c, g, in.ps);
    json qs = json::array();
    for (const auto& pi : in.ps) {
      const PermGroup h = normal_closure(g, pi.generators());
      const int v = p_valuation(h.order(), p);
      if (v > 1) throw Error(ErrorKind::ScopeExceeded, "Sylow p-subgroup of <P_i^G> is not cyclic of order p");
      const bool sylow = p_valuation(pi.order(), p) == v && pi.order() == BigInt(p);
      qs.push_back(json{{"|<P_i^G>|", big(h.order())}, {"Q_i = P_i", sylow}});
      c.steps.push_back(make_step(StepKind::GroupComputation, "P_i is a Sylow p-subgroup of <P_i^G>", sylow,
                                  json{{"|<P_i^G>|", big(h.order())}, {"|P_i|", big(pi.order())}}));
    }
    c.steps.push_back(axiom_step("enlarge-inertia", "(<P_i^G>, Q_i) is realizable"));
    c.steps.push_back(axiom_step("patching-two-covers", "induction on r patches the covers"));
    return c;
  }
  if (in.id == "weaker-branch-locus") {
    hypothesis_generation(c, g, in.ps);
    std::vector<PermGroup> chosen = in.ps;
    bool conj_ok = true;
    for (const auto& [i, x] : in.conjugates) {
      if (i < 0 || i >= static_cast<int>(in.ps.size())) throw Error(ErrorKind::BadRange, "conjugate index out of range");
      conj_ok = conj_ok && g.contains(x);
      std::vector<Perm> gens;
      for (const auto& y : in.ps[static_cast<std::size_t>(i)].generators()) gens.push_back(conjugate(y, x));
      chosen.emplace_back(deg, gens);
    }
    const bool gen = join(deg, chosen).same_group(g);
    c.steps.push_back(make_step(StepKind::GroupComputation, "the chosen conjugates generate G", gen && conj_ok,
                                json{{"branch points", chosen.size()}, {"orders", orders_json(chosen)}}));
    c.steps.push_back(axiom_step("patching-two-covers", "induction on the number of chosen conjugates"));
    return c;
  }
  if (in.id == "alt-product-cycle") {
    const int a = in.a;
    const int d = a * p;
    if (a < 2 || deg != d) throw Error(ErrorKind::BadRange, "alt-product-cycle needs a >= 2 and degree a p");
    std::vector<PermGroup> h1, h2;
    std::vector<std::vector<int>> tau_c, sigma_c;
    for (int i = 0; i < a; ++i) {
      std::vector<int> blk1, blk2;
      for (int x = 0; x < p; ++x) blk1.push_back(i * p + x);
      for (int x = 1; x <= p; ++x) blk2.push_back((i * p + x) % d);
      h1.push_back(alt_on(d, blk1));
      h2.push_back(alt_on(d, blk2));
      std::vector<int> t1, s1;
      for (int x : blk1) t1.push_back(x + 1);
      for (int x : blk2) s1.push_back(x + 1);
      tau_c.push_back(t1);
      sigma_c.push_back(s1);
    }
    const Perm tau = Perm::from_cycles(d, tau_c);
    const Perm sigma = Perm::from_cycles(d, sigma_c);
    const PermGroup g1 = join(d, h1);
    const PermGroup g2 = join(d, h2);
    const PermGroup both = join(d, {g1, g2});
    // Each Alt block is generated by p-cycles.
    bool pcycles = true;
    for (const auto& blocks : {tau_c, sigma_c}) {
      for (const auto& b : blocks) {
        std::vector<int> rot = b;
        std::swap(rot[0], rot[1]);
        const PermGroup viap(d, {Perm::from_cycles(d, {b}), Perm::from_cycles(d, {rot})});
        std::vector<int> pts;
        for (int x : b) pts.push_back(x - 1);
        pcycles = pcycles && viap.same_group(alt_on(d, pts));
      }
    }
    const bool three = both.contains(Perm::from_cycles(d, {{1, 2, 3}}));
    const bool full = both.order() == factorial(d) / 2;
    c.steps.push_back(make_step(StepKind::GroupComputation, "<G_1, G_2> = A_d, generated by p-cycles and containing (1,2,3)",
                                pcycles && three && full,
                                json{{"d", d}, {"order", big(both.order())}, {"d!/2", big(factorial(d) / 2)},
                                     {"blocks generated by p-cycles", pcycles}, {"contains (1 2 3)", three}}));
    auto x = conjugator(tau, sigma);
    bool conj = false;
    if (x) {
      Perm y = *x;
      if (!y.is_even()) {
        // Swapping the first two blocks centralizes tau and is odd.
        std::vector<std::vector<int>> swaps;
        for (int t = 1; t <= p; ++t) swaps.push_back({t, p + t});
        y = y * Perm::from_cycles(d, swaps);
      }
      conj = y.is_even() && conjugate(tau, y) == sigma;
    }
    c.steps.push_back(make_step(StepKind::GroupComputation, "sigma is conjugate to tau in A_d", conj,
                                json{{"tau", tau.to_string()}, {"sigma", sigma.to_string()}}));
    c.steps.push_back(axiom_step("purely-wild-products", "(G_1, <tau>) and (G_2, <sigma>) are realizable"));
    c.steps.push_back(axiom_step("patching-two-covers", "patching gives an A_d-cover with <tau> over x_0 and x_1"));
    return c;
  }
  throw Error(ErrorKind::BadRange, "unknown GPWIC id " + in.id);
}

}  // namespace ilab
