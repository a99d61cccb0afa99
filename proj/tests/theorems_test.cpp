#include <gtest/gtest.h>

#include <set>

#include "ilab/errors.hpp"
#include "ilab/number.hpp"
#include "ilab/theorems.hpp"

using namespace ilab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvariantViolation;
}

std::vector<Perm> all_even(int d) {
  std::vector<Perm> out;
  PermGroup::alternating(d).bsgs().for_each_element([&](const Perm& g) { out.push_back(g); });
  return out;
}

}  // namespace

TEST(HSeries, AlternatingWithPCycleIsOneStep) {
  const auto r = compute_h_series(PermGroup::alternating(6), {PermGroup(6, {make_tau(5, 6)})});
  EXPECT_EQ(r.l, 0);
  EXPECT_TRUE(r.gic_hypothesis);
  EXPECT_TRUE(r.normality_checked);
}

TEST(HSeries, SymmetricStopsAtAlternating) {
  const auto r = compute_h_series(PermGroup::symmetric(6), {PermGroup(6, {make_tau(5, 6)})});
  EXPECT_EQ(r.l, 1);
  EXPECT_FALSE(r.gic_hypothesis);
  ASSERT_EQ(r.h.size(), 2u);
  EXPECT_TRUE(r.h[1].same_group(PermGroup::alternating(6)));
}

TEST(HSeries, TrivialPs) {
  const auto r = compute_h_series(PermGroup::alternating(5), {PermGroup::trivial(5)});
  EXPECT_EQ(r.l, 1);
  EXPECT_TRUE(r.h[1].is_trivial());
}

TEST(HSeries, RejectsOutsideSubgroup) {
  EXPECT_EQ(kind_of([] { compute_h_series(PermGroup::alternating(5), {PermGroup(5, {Perm::from_cycles(5, {{1, 2}})})}); }),
            ErrorKind::NotASubgroup);
}

TEST(Patch, AltFixedPointInstance) {
  const InertiaShape s = InertiaShape::wild(5, 8, 2, std::vector<int>{1, 1, 1});
  const PermGroup i = realize(s);
  const auto parts = alt_fixed_point_parts(i, 6, 8);
  ASSERT_EQ(parts.size(), 3u);
  for (const auto& part : parts) EXPECT_EQ(part.group.order(), BigInt(360));
  const auto pc = check_patch_hypotheses(5, PermGroup::alternating(8), parts, i, 2);
  EXPECT_TRUE(pc.generation);
  EXPECT_TRUE(pc.tame_match);
  EXPECT_TRUE(pc.pass);
  EXPECT_EQ(join(8, {parts[0].group, parts[1].group}, i.generators()).order(), BigInt(2520));
  EXPECT_EQ(join(8, {parts[0].group, parts[1].group, parts[2].group}, i.generators()).order(), BigInt(20160));
}

TEST(Patch, TameOrderMismatchFails) {
  const Perm tau = make_tau(5, 5), theta = make_theta(5, 5);
  const PermGroup i(5, {tau, theta});
  std::vector<PatchPart> parts{{PermGroup::alternating(5), PermGroup(5, {tau})},
                               {PermGroup::symmetric(5), PermGroup(5, {tau, theta.pow(2)})}};
  const auto pc = check_patch_hypotheses(5, PermGroup::symmetric(5), parts, i, 2);
  EXPECT_TRUE(pc.generation);
  EXPECT_FALSE(pc.tame_match);
  EXPECT_FALSE(pc.pass);
  EXPECT_EQ(pc.tame_orders, (std::vector<std::int64_t>{1, 2}));
}

TEST(Patch, GenerationIsMonotone) {
  const Perm tau = make_tau(5, 7);
  const PermGroup i(7, {tau});
  std::vector<PatchPart> parts;
  bool prev = false;
  for (int extra = 5; extra < 7; ++extra) {
    std::vector<int> pts{0, 1, 2, 3, 4, extra};
    std::vector<Perm> gens;
    for (std::size_t j = 2; j < pts.size(); ++j) gens.push_back(Perm::from_cycles(7, {{1, 2, pts[j] + 1}}));
    parts.push_back({PermGroup(7, gens), i});
    const bool now = check_patch_hypotheses(5, PermGroup::alternating(7), parts, i, 1).generation;
    EXPECT_TRUE(now || !prev);
    prev = now;
  }
  EXPECT_TRUE(prev);
}

TEST(Patch, SharedElement) {
  const PermGroup a5 = PermGroup::alternating(5);
  const Perm tau = make_tau(5, 5);
  std::vector<PatchPart> parts{{a5, PermGroup(5, {tau})}};
  EXPECT_TRUE(check_patch_hypotheses(5, a5, parts, PermGroup(5, {tau}), 1, Perm::from_cycles(5, {{1, 2, 3}}))
                  .shared_element_ok);
  EXPECT_FALSE(check_patch_hypotheses(5, a5, parts, PermGroup(5, {tau}), 1, tau).shared_element_ok);
}

TEST(Targets, DegreeSixHasTwoViaNormalizer) {
  // Oracle: subgroups <tau, x> for x in N_{A_6}(<tau>), told apart by order.
  const Perm tau = make_tau(5, 6);
  const PermGroup pt(6, {tau});
  std::vector<Perm> norm;
  for (const auto& g : all_even(6)) {
    if (pt.contains(conjugate(tau, g))) norm.push_back(g);
  }
  EXPECT_EQ(norm.size(), 10u);
  std::set<BigInt> orders;
  for (const auto& x : norm) orders.insert(PermGroup(6, {tau, x}).order());
  EXPECT_EQ(orders.size(), 2u);
  EXPECT_EQ(enumerate_ic_targets(6, 5).size(), 2u);
}

TEST(IcTheorems, PPlusOnePassesOnMatrix) {
  for (int p : {5, 11, 17, 23}) {
    const auto c = verify_ic_theorem("A_p+1", p);
    EXPECT_TRUE(c.pass()) << p;
    EXPECT_TRUE(check_coverage(c).ok()) << p;
    EXPECT_TRUE(lint_certificate(c).empty()) << p;
  }
}

TEST(IcTheorems, SmallMatrixWithCoverage) {
  for (const std::string id : {"A_p", "A_p+2", "A_p+3", "A_p+4"}) {
    for (int p : {5, 11}) {
      const auto c = verify_ic_theorem(id, p);
      EXPECT_TRUE(c.pass()) << id << " " << p;
      EXPECT_TRUE(check_coverage(c).ok()) << id << " " << p;
    }
  }
}

TEST(IcTheorems, DeferredTargetUsesLowerDegree) {
  const auto c = verify_ic_theorem("A_p+4", 11);
  bool patch = false, reduction = false;
  for (const auto& s : c.steps) {
    if (s.kind == StepKind::PatchHypothesis) {
      patch = true;
      EXPECT_EQ(s.inputs["lower_degree"].get<int>(), 14);
    }
    if (s.kind == StepKind::Reduction && s.inputs.contains("lower_theorem")) {
      reduction = true;
      EXPECT_EQ(s.inputs["lower_theorem"].get<std::string>(), "A_p+3");
    }
  }
  EXPECT_TRUE(patch);
  EXPECT_TRUE(reduction);
}

TEST(IcTheorems, SideConditions) {
  EXPECT_EQ(kind_of([] { verify_ic_theorem("A_p+5", 23); }), ErrorKind::SideConditionViolated);
  EXPECT_EQ(kind_of([] { verify_ic_theorem("A_p+5", 11); }), ErrorKind::SideConditionViolated);
  EXPECT_EQ(kind_of([] { verify_ic_theorem("A_p+1", 7); }), ErrorKind::SideConditionViolated);
  EXPECT_EQ(kind_of([] { verify_ic_theorem("A_p+1", 9); }), ErrorKind::BadRange);
  EXPECT_EQ(kind_of([] { verify_theorem("A_p+9", 5); }), ErrorKind::BadRange);
}

TEST(IcTheorems, MutationBreaksAssumption) {
  const CoverSpec base = known_witness(WitnessFamily::PPlusOne, 5);
  const std::size_t coords = base.alpha.size() + base.beta.size();
  for (std::size_t k = 0; k < coords; ++k) {
    auto mutate = [k](const CoverSpec& s) {
      CoverSpec out = s;
      auto& v = k < s.alpha.size() ? out.alpha[k] : out.beta[k - s.alpha.size()];
      v = v + FieldElement::one(s.field);
      return out;
    };
    const auto c = verify_ic_theorem("A_p+1", 5, mutate);
    ASSERT_FALSE(c.pass()) << k;
    EXPECT_EQ(c.steps[*c.first_failure()].kind, StepKind::AssumptionCheck) << k;
  }
}

TEST(IcTheorems, RouteSearchLandsOnTarget) {
  const int p = 17, d = 21;
  const ShapeKey key = InertiaShape::wild(p, d, 4, std::vector<int>{2, 2}).key();
  const auto route = find_target_route(d, p, key);
  ASSERT_TRUE(route.has_value());
  EXPECT_TRUE(check_assumption(route->spec).holds);
  const auto rep = ramification_report(route->spec);
  const auto k = kummer_pullback(rep.inertia0, rep.inertia_inf, route->kummer,
                                 rep.decision.verdict == GaloisVerdict::Alternating ? GroupClaim::Alternating
                                                                                     : GroupClaim::Symmetric);
  EXPECT_TRUE(k.over0_etale);
  EXPECT_EQ(k.claim, GroupClaim::Alternating);
  EXPECT_EQ(k.over_inf.key(), key);
}

TEST(SymTheorems, SmallPrimes) {
  for (const std::string id : {"S_p", "S_p+1"}) {
    for (int p : {5, 11}) {
      const auto c = verify_sym_theorem(id, p);
      EXPECT_TRUE(c.pass()) << id << " " << p;
      EXPECT_TRUE(check_coverage(c).ok()) << id << " " << p;
    }
  }
  for (const std::string id : {"S_p+2", "S_p+3"}) {
    const auto c = verify_sym_theorem(id, 11);
    EXPECT_TRUE(c.pass()) << id;
    EXPECT_TRUE(check_coverage(c).ok()) << id;
  }
  EXPECT_EQ(kind_of([] { verify_sym_theorem("S_p+2", 17); }), ErrorKind::SideConditionViolated);
}

TEST(SymTheorems, SameInertiaAndSemidirect) {
  for (int p : {5, 7, 11}) {
    EXPECT_TRUE(verify_sym_theorem("S_d-same-inertia", p).pass()) << p;
    EXPECT_TRUE(verify_sym_theorem("semidirect", p).pass()) << p;
  }
}

TEST(Certificates, Deterministic) {
  const auto a = emit_certificate(verify_theorem("A_p+3", 11));
  const auto b = emit_certificate(verify_theorem("A_p+3", 11));
  EXPECT_EQ(a, b);
  const auto j = nlohmann::ordered_json::parse(a);
  EXPECT_EQ(j["theorem"], "A_p+3");
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_FALSE(j.contains("first_failure"));
}

TEST(Certificates, FailureIsReported) {
  const auto c = verify_ic_theorem("A_p+1", 5, [](const CoverSpec& s) {
    CoverSpec out = s;
    out.alpha[0] = out.alpha[0] + FieldElement::one(s.field);
    return out;
  });
  const auto j = certificate_json(c);
  EXPECT_EQ(j["overall"], "fail");
  EXPECT_EQ(j["first_failure"].get<std::size_t>(), *c.first_failure());
  EXPECT_NE(emit_certificate(c, CertificateFormat::Text).find("overall=fail"), std::string::npos);
}

TEST(Certificates, Linter) {
  auto c = verify_theorem("A_p", 5);
  EXPECT_TRUE(lint_certificate(c).empty());
  for (auto& s : c.steps) {
    if (s.status == StepStatus::Axiom) {
      s.statement += " (edited)";
      break;
    }
  }
  EXPECT_EQ(lint_certificate(c).size(), 1u);
  c.steps.back().ref = "no-such-key";
  EXPECT_EQ(lint_certificate(c).size(), 2u);
  CertificateStep bare;
  bare.inputs = nlohmann::ordered_json::object();
  c.steps.push_back(bare);
  EXPECT_EQ(lint_certificate(c).size(), 3u);
}

TEST(Gpwic, DefaultsPass) {
  for (const auto& id : gpwic_ids()) {
    const auto c = verify_theorem(id, 5);
    EXPECT_TRUE(c.pass()) << id;
    EXPECT_TRUE(lint_certificate(c).empty()) << id;
  }
}

TEST(Gpwic, PGroupNeedsGeneration) {
  auto in = default_gpwic_instance("p-group", 3);
  EXPECT_TRUE(check_gpwic(in).pass());
  in.ps.pop_back();
  EXPECT_FALSE(check_gpwic(in).pass());
}

TEST(Gpwic, WeakerInertiaScope) {
  auto in = default_gpwic_instance("weaker-inertia", 5);
  in.group = PermGroup::alternating(10);
  in.ps = {PermGroup(10, {make_tau(5, 10)})};
  EXPECT_EQ(kind_of([&] { check_gpwic(in); }), ErrorKind::ScopeExceeded);
}

TEST(Gpwic, BranchLocusConjugates) {
  auto in = default_gpwic_instance("weaker-branch-locus", 5);
  EXPECT_TRUE(check_gpwic(in).pass());
  in.conjugates = {{3, Perm(5)}};
  EXPECT_EQ(kind_of([&] { check_gpwic(in); }), ErrorKind::BadRange);
}
