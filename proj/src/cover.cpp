#include "ilab/cover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "ilab/errors.hpp"

namespace ilab {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join_elems(const std::vector<FieldElement>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].to_string();
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
  if (pos != s.size()) throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  return v;
}

Polynomial product_of_powers(const FiniteField& f, const std::vector<FieldElement>& roots, const std::vector<int>& exps,
                             int shift) {
  Polynomial out = Polynomial::constant(FieldElement::one(f));
  for (std::size_t i = 0; i < roots.size(); ++i) out = out * Polynomial::linear_root(roots[i]).pow(exps[i] + shift);
  return out;
}

// sum_i w_i prod_{j != i} (y - roots_j)
Polynomial weighted_log_derivative(const FiniteField& f, const std::vector<FieldElement>& roots,
                                   const std::vector<int>& w) {
  Polynomial out(f);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Polynomial term = Polynomial::constant(FieldElement(f, w[i]));
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j != i) term = term * Polynomial::linear_root(roots[j]);
    }
    out = out + term;
  }
  return out;
}

Polynomial compute_g(const CoverSpec& spec) {
  const FiniteField& f = spec.field;
  if (spec.r() == 0) return weighted_log_derivative(f, spec.alpha, spec.n);
  const Polynomial ones_b = product_of_powers(f, spec.beta, std::vector<int>(spec.beta.size(), 1), 0);
  const Polynomial ones_a = product_of_powers(f, spec.alpha, std::vector<int>(spec.alpha.size(), 1), 0);
  return ones_b * weighted_log_derivative(f, spec.alpha, spec.n) - ones_a * weighted_log_derivative(f, spec.beta, spec.m);
}

RamificationProfile profile_from_counts(const std::vector<int>& counts, int extra = 0) {
  std::vector<int> parts;
  if (extra > 0) parts.push_back(extra);
  for (std::size_t k = 1; k < counts.size(); ++k) {
    for (int c = 0; c < counts[k]; ++c) parts.push_back(static_cast<int>(k));
  }
  return RamificationProfile::from(parts);
}

int distinct_roots(const std::vector<int>& counts) { return std::accumulate(counts.begin(), counts.end(), 0); }

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::SideConditionViolated, what);
}

}  // namespace

std::string CoverSpec::to_string() const {
  std::ostringstream os;
  if (field.degree() == 2) os << "w^2=" << field.nu() << "\n";
  os << "p=" << p << " t=" << t << " s=" << s() << " r=" << r() << " n=" << join_ints(n) << " m=" << join_ints(m)
     << " alpha=" << join_elems(alpha) << " beta=" << join_elems(beta) << " field=" << (field.degree() == 2 ? "Fp2" : "Fp");
  return os.str();
}

CoverSpec CoverSpec::parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (kv.count(key)) throw Error(ErrorKind::ParseError, "duplicate key '" + key + "'");
    kv[key] = tok.substr(eq + 1);
  }
  for (const char* k : {"p", "t", "s", "r", "n", "m", "alpha", "beta", "field"}) {
    if (!kv.count(k)) throw Error(ErrorKind::ParseError, std::string("missing key '") + k + "'");
  }
  for (const auto& [k, v] : kv) {
    static const std::vector<std::string> known{"w^2", "p", "t", "s", "r", "n", "m", "alpha", "beta", "field"};
    if (std::find(known.begin(), known.end(), k) == known.end()) throw Error(ErrorKind::ParseError, "unknown key '" + k + "'");
  }
  const int p = parse_int(kv["p"]);
  if (!is_odd_prime(p)) throw Error(ErrorKind::ParseError, "p must be an odd prime");
  std::optional<FiniteField> field;
  if (kv["field"] == "Fp") {
    if (kv.count("w^2")) throw Error(ErrorKind::ParseError, "w^2 given for a prime field");
    field = FiniteField::prime(p);
  } else if (kv["field"] == "Fp2") {
    field = kv.count("w^2") ? FiniteField::quadratic(p, parse_int(kv["w^2"])) : FiniteField::quadratic(p);
  } else {
    throw Error(ErrorKind::ParseError, "field must be Fp or Fp2");
  }
  CoverSpec spec{*field, p, parse_int(kv["t"]), {}, {}, {}, {}};
  for (const auto& x : split(kv["n"], ',')) spec.n.push_back(parse_int(x));
  for (const auto& x : split(kv["m"], ',')) spec.m.push_back(parse_int(x));
  for (const auto& x : split(kv["alpha"], ',')) spec.alpha.push_back(FieldElement::parse(*field, x));
  for (const auto& x : split(kv["beta"], ',')) spec.beta.push_back(FieldElement::parse(*field, x));
  if (parse_int(kv["s"]) != spec.s() || static_cast<int>(spec.alpha.size()) != spec.s()) {
    throw Error(ErrorKind::ParseError, "s disagrees with n or alpha");
  }
  if (parse_int(kv["r"]) != spec.r() || static_cast<int>(spec.beta.size()) != spec.r()) {
    throw Error(ErrorKind::ParseError, "r disagrees with m or beta");
  }
  return spec;
}

std::vector<std::string> validate_spec(const CoverSpec& spec) {
  std::vector<std::string> v;
  const int p = spec.p;
  if (!is_odd_prime(p)) {
    v.push_back("p is not an odd prime");
    return v;
  }
  if (spec.field.characteristic() != p) v.push_back("field characteristic differs from p");
  if (spec.t < 0) v.push_back("t is negative");
  if (spec.d() < 5) v.push_back("d = p + t is below 5");
  if (spec.t > 0 && spec.t % p == 0) v.push_back("t is divisible by p");
  if (spec.s() < 1) v.push_back("s must be at least 1");
  if (spec.t == 0 && spec.r() != 0) v.push_back("degree-p family needs r = 0");
  if (spec.t > 0 && spec.r() < 1) v.push_back("r = 0 only when t = 0");
  if (spec.alpha.size() != spec.n.size()) v.push_back("alpha and n differ in length");
  if (spec.beta.size() != spec.m.size()) v.push_back("beta and m differ in length");
  for (int x : spec.n) {
    if (x < 1 || x % p == 0) v.push_back("n_i = " + std::to_string(x) + " is not a positive integer coprime to p");
  }
  for (int x : spec.m) {
    if (x < 1 || x % p == 0) v.push_back("m_l = " + std::to_string(x) + " is not a positive integer coprime to p");
  }
  if (std::accumulate(spec.n.begin(), spec.n.end(), 0) != spec.d()) v.push_back("sum of n differs from p + t");
  if (std::accumulate(spec.m.begin(), spec.m.end(), 0) != spec.t) v.push_back("sum of m differs from t");
  std::vector<FieldElement> pts = spec.alpha;
  pts.insert(pts.end(), spec.beta.begin(), spec.beta.end());
  for (const auto& x : pts) {
    if (!(x.field() == spec.field)) {
      v.push_back("element " + x.to_string() + " lies in another field");
      return v;
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) v.push_back("points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
    }
  }
  return v;
}

CoverPolys expand_cover_polys(const CoverSpec& spec) {
  auto v = validate_spec(spec);
  if (!v.empty()) throw Error(ErrorKind::InvariantViolation, "invalid cover spec: " + v.front());
  const FiniteField& f = spec.field;
  return {product_of_powers(f, spec.alpha, spec.n, 0), product_of_powers(f, spec.beta, spec.m, 0),
          product_of_powers(f, spec.alpha, spec.n, -1), product_of_powers(f, spec.beta, spec.m, -1), compute_g(spec)};
}

XLinearPoly cover_equation(const CoverSpec& spec) {
  const CoverPolys polys = expand_cover_polys(spec);
  return {polys.A, -polys.B};
}

AssumptionResult check_assumption(const CoverSpec& spec) {
  auto v = validate_spec(spec);
  if (!v.empty()) throw Error(ErrorKind::InvariantViolation, "invalid cover spec: " + v.front());
  const Polynomial g = compute_g(spec);
  if (g.is_nonzero_constant()) return {true, g.coeff(0)};
  return {false, std::nullopt};
}

bool r1_coefficient_conditions(const CoverSpec& spec) {
  if (spec.r() != 1 || !spec.beta[0].is_zero()) {
    throw Error(ErrorKind::InvariantViolation, "coefficient conditions need r = 1 and beta_1 = 0");
  }
  const FiniteField& f = spec.field;
  const int s = spec.s();
  for (const auto& a : spec.alpha) {
    if (a.is_zero()) return false;
  }
  // e[k] = sum over k-subsets of prod alpha, w[k] = same weighted by n(S).
  std::vector<FieldElement> e(static_cast<std::size_t>(s + 1), FieldElement::zero(f));
  std::vector<FieldElement> w(static_cast<std::size_t>(s + 1), FieldElement::zero(f));
  e[0] = FieldElement::one(f);
  for (int i = 0; i < s; ++i) {
    const FieldElement& a = spec.alpha[static_cast<std::size_t>(i)];
    for (int k = i + 1; k >= 1; --k) {
      const auto ku = static_cast<std::size_t>(k);
      w[ku] += a * (w[ku - 1] + e[ku - 1].scaled(spec.n[static_cast<std::size_t>(i)]));
      e[ku] += a * e[ku - 1];
    }
  }
  for (int k = 1; k <= s - 1; ++k) {
    if (!w[static_cast<std::size_t>(k)].is_zero()) return false;
  }
  return true;
}

CoverSpec affine_image(const CoverSpec& spec, const FieldElement& c, const FieldElement& e) {
  if (c.is_zero()) throw Error(ErrorKind::InvariantViolation, "affine map needs c != 0");
  CoverSpec out = spec;
  for (auto& a : out.alpha) a = c * a + e;
  for (auto& b : out.beta) b = c * b + e;
  return out;
}

CoverSpec normalize_spec(const CoverSpec& spec) {
  FieldElement from0 = spec.r() >= 1 ? spec.beta[0] : spec.alpha[0];
  FieldElement from1 = spec.r() >= 1 ? spec.alpha[0] : spec.alpha[1];
  const FieldElement c = (from1 - from0).inv();
  return affine_image(spec, c, -(from0 * c));
}

std::string to_string(GaloisVerdict v) {
  switch (v) {
    case GaloisVerdict::Alternating: return "A_d";
    case GaloisVerdict::Symmetric: return "S_d";
    case GaloisVerdict::ContainsAltUndecidedParity: return "contains-A_d-parity-undecided";
    case GaloisVerdict::Undecided: return "undecided";
  }
  return "unknown";
}

GaloisDecision decide_galois_group(int p, int d, const Perm& gamma) {
  GaloisDecision dec;
  const int t = d - p;
  if (t == 0) {
    dec.primitive = true;
    dec.primitivity = "transitive of prime degree";
  } else if (2 * t < d) {
    dec.primitive = true;
    dec.primitivity = "transitive, contains a p-cycle fixing t = " + std::to_string(t) + " < d/2 points";
  } else {
    dec.primitivity = "no primitivity criterion applies";
    return dec;
  }
  dec.parity = gamma.is_even() ? "gamma even" : "gamma odd";
  bool contains_alt = false;
  const std::int64_t ord = gamma.order();
  for (std::int64_t j = 1; j < ord && !contains_alt; ++j) {
    const auto nt = gamma.pow(j).cycle_type().nontrivial();
    if (nt.size() == 1 && (nt[0] == 2 || nt[0] == 3)) {
      contains_alt = true;
      dec.alt_clause = "gamma^" + std::to_string(j) + (nt[0] == 2 ? " is a transposition" : " is a 3-cycle");
    }
  }
  if (!contains_alt) {
    const JonesResult jr = jones_criterion(d, p, gamma, t);
    contains_alt = jr.contains_alt;
    dec.alt_clause = jr.clause;
  }
  if (!contains_alt) return dec;
  dec.verdict = gamma.is_even() ? GaloisVerdict::Alternating : GaloisVerdict::Symmetric;
  return dec;
}

ExplicitCover explicit_cover(const CoverSpec& spec) {
  const CoverPolys polys = expand_cover_polys(spec);
  return {spec.p, spec.t, polys.A, polys.B};
}

ExplicitCover degree_p_trinomial(int p, int k) {
  if (!is_odd_prime(p) || k < 1 || k >= p) throw Error(ErrorKind::BadRange, "need an odd prime p and 1 <= k < p");
  const FiniteField f = FiniteField::prime(p);
  Polynomial a = Polynomial::monomial(FieldElement::one(f), p) - Polynomial::monomial(FieldElement::one(f), k);
  return {p, 0, a, Polynomial::constant(FieldElement::one(f))};
}

RamificationReport ramification_report(const ExplicitCover& cover) {
  const int p = cover.p;
  const int d = p + cover.t;
  if (cover.A.degree() != d || !cover.A.leading().is_one() || cover.B.degree() != cover.t || !cover.B.leading().is_one()) {
    throw Error(ErrorKind::InvariantViolation, "cover needs monic A of degree p + t and monic B of degree t");
  }
  if (!gcd(cover.A, cover.B).is_nonzero_constant()) {
    throw Error(ErrorKind::InvariantViolation, "A and B share a root");
  }
  const std::vector<int> c0 = root_multiplicities(cover.A);
  const std::vector<int> cinf = root_multiplicities(cover.B);
  const int s = distinct_roots(c0);
  const int r = distinct_roots(cinf);
  const XLinearPoly f{cover.A, -cover.B};
  const auto e = unit_times_power_of_x(resultant_y(f, f.derivative_y()));
  if (!e) throw Error(ErrorKind::AssumptionFails, "Res_y(f, f_y) has a root other than x = 0");
  const RamificationProfile over0 = profile_from_counts(c0);
  const RamificationProfile over_inf = profile_from_counts(cinf, p);
  std::vector<int> omega_parts(over_inf.indices.begin() + 1, over_inf.indices.end());
  const int k = r + s - 1;
  int i0 = std::gcd(p - 1, k);
  if (i0 == p - 1) i0 = 0;
  const Perm gamma = Perm::from_cycle_type(d, over0.indices);
  return RamificationReport{p,
                            d,
                            cover.t,
                            s,
                            r,
                            over0,
                            over_inf,
                            true,
                            *e,
                            0,
                            "rational: y is a coordinate on Y and x = A(y)/B(y)",
                            Rational(k, p - 1),
                            (p - 1) / std::gcd(p - 1, k),
                            i0,
                            InertiaShape::tame(p, gamma),
                            InertiaShape::wild(p, d, i0, omega_parts),
                            decide_galois_group(p, d, gamma)};
}

RamificationReport ramification_report(const CoverSpec& spec) {
  if (!check_assumption(spec).holds) throw Error(ErrorKind::AssumptionFails, "g is not a nonzero constant");
  RamificationReport rep = ramification_report(explicit_cover(spec));
  if (!(rep.over0 == RamificationProfile::from(spec.n))) {
    throw Error(ErrorKind::InvariantViolation, "profile over 0 differs from n");
  }
  std::vector<int> inf = spec.m;
  inf.push_back(spec.p);
  if (!(rep.over_inf == RamificationProfile::from(inf))) {
    throw Error(ErrorKind::InvariantViolation, "profile over infinity differs from (p) and m");
  }
  return rep;
}

GaloisDecision galois_decision(const CoverSpec& spec, const RamificationReport& report) {
  return decide_galois_group(spec.p, spec.d(), report.inertia0.gamma());
}

// ---- known witnesses ----

namespace {

const std::vector<std::pair<WitnessFamily, std::string>>& family_names() {
  static const std::vector<std::pair<WitnessFamily, std::string>> names{
      {WitnessFamily::OneOne, "one-one"},
      {WitnessFamily::TwoOne, "two-one"},
      {WitnessFamily::OneTwo, "one-two"},
      {WitnessFamily::ThreeOne, "three-one"},
      {WitnessFamily::TwoTwo, "two-two"},
      {WitnessFamily::DegreePPair, "degree-p-pair"},
      {WitnessFamily::PPlusOne, "p+1"},
      {WitnessFamily::PPlusFourSqrt3, "p+4-sqrt3"},
      {WitnessFamily::PPlusFourSqrt2, "p+4-sqrt2"},
      {WitnessFamily::PPlusFiveI4, "p+5-i4"},
      {WitnessFamily::PPlusFiveI5, "p+5-i5"},
      {WitnessFamily::PPlusFiveI6, "p+5-i6"},
      {WitnessFamily::PPlusThreeCycle, "p+3-cycle"},
  };
  return names;
}

// Builds the spec over F_p when every coordinate is rational, else over F_p^2.
struct Coords {
  int p;
  FiniteField ext;
  explicit Coords(int p_) : p(p_), ext(FiniteField::quadratic(p_)) {}
  FieldElement num(std::int64_t a) const { return FieldElement(ext, a); }
  FieldElement root(std::int64_t v) const { return sqrt_or_extend(FiniteField::prime(p), v).lift(ext); }
  FieldElement frac(std::int64_t a, std::int64_t b) const { return num(a) / num(b); }
};

CoverSpec finish(int p, int t, std::vector<int> n, std::vector<int> m, std::vector<FieldElement> alpha,
                 std::vector<FieldElement> beta) {
  bool rational = true;
  for (const auto& x : alpha) rational = rational && x.in_prime_field();
  for (const auto& x : beta) rational = rational && x.in_prime_field();
  const FiniteField target = rational ? FiniteField::prime(p) : alpha.empty() ? beta[0].field() : alpha[0].field();
  auto down = [&](std::vector<FieldElement>& v) {
    for (auto& x : v) x = rational ? FieldElement(target, x.a()) : x;
  };
  down(alpha);
  down(beta);
  CoverSpec spec{target, p, t, std::move(n), std::move(m), std::move(alpha), std::move(beta)};
  auto v = validate_spec(spec);
  if (!v.empty()) throw Error(ErrorKind::SideConditionViolated, v.front());
  return spec;
}

bool coprime_p(int x, int p) { return x % p != 0; }

}  // namespace

std::string to_string(WitnessFamily f) {
  for (const auto& [k, v] : family_names()) {
    if (k == f) return v;
  }
  return "unknown";
}

WitnessFamily parse_witness_family(const std::string& name) {
  for (const auto& [k, v] : family_names()) {
    if (v == name) return k;
  }
  throw Error(ErrorKind::ParseError, "unknown witness family '" + name + "'");
}

std::vector<WitnessFamily> all_witness_families() {
  std::vector<WitnessFamily> out;
  for (const auto& kv : family_names()) out.push_back(kv.first);
  return out;
}

CoverSpec known_witness(WitnessFamily family, int p, const WitnessParams& params) {
  require(is_odd_prime(p), "p must be an odd prime");
  const Coords c(p);
  const int t = params.t;
  auto need_t = [&] {
    require(t >= 1, "t must be positive");
    require(coprime_p(t, p), "t must be coprime to p");
    require(p + t >= 5, "d = p + t must be at least 5");
  };
  switch (family) {
    case WitnessFamily::OneOne:
      need_t();
      return finish(p, t, {p + t}, {t}, {c.num(1)}, {c.num(0)});
    case WitnessFamily::TwoOne: {
      need_t();
      std::vector<int> n = params.n.empty() ? std::vector<int>{p + t - 1, 1} : params.n;
      require(n.size() == 2, "two-one needs n = (n_1, n_2)");
      require(coprime_p(n[0], p) && coprime_p(n[1], p), "n_i must be coprime to p");
      return finish(p, t, n, {t}, {c.num(1), -c.frac(n[0], n[1])}, {c.num(0)});
    }
    case WitnessFamily::OneTwo: {
      need_t();
      std::vector<int> m = params.m.empty() ? std::vector<int>{t - 1, 1} : params.m;
      require(m.size() == 2, "one-two needs m = (m_1, m_2)");
      require(m[0] >= 1 && m[1] >= 1 && coprime_p(m[0], p) && coprime_p(m[1], p), "m_l must be positive and coprime to p");
      return finish(p, t, {p + t}, m, {c.num(0)}, {c.num(1), -c.frac(m[0], m[1])});
    }
    case WitnessFamily::ThreeOne:
    case WitnessFamily::PPlusOne: {
      const int tt = family == WitnessFamily::PPlusOne ? 1 : t;
      if (family == WitnessFamily::ThreeOne) need_t();
      require(coprime_p(tt + 2, p) && coprime_p(tt - 2, p), "(p, t+2) = 1 = (p, t-2) fails");
      require(p > 2, "p must be odd");
      return finish(p, tt, {p - 2, 2, tt}, {tt}, {c.frac(tt + 2, 4), -c.frac(tt - 2, 4), c.num(1)}, {c.num(0)});
    }
    case WitnessFamily::TwoTwo: {
      need_t();
      std::vector<int> n = params.n.empty() ? std::vector<int>{p + t - 1, 1} : params.n;
      std::vector<int> m = params.m.empty() ? std::vector<int>{t - 1, 1} : params.m;
      require(n.size() == 2 && m.size() == 2, "two-two needs two n's and two m's");
      require((n[0] - m[0]) % p == 0 && (n[1] - m[1]) % p == 0, "n_i = m_i mod p fails");
      require((n[0] - n[1]) % p != 0, "n_1 = n_2 in k");
      require(coprime_p(n[1], p), "n_2 must be coprime to p");
      return finish(p, t, n, m, {c.num(1), c.frac(n[1] - n[0], 2 * n[1])}, {c.num(0), c.frac(t, 2 * n[1])});
    }
    case WitnessFamily::DegreePPair: {
      std::vector<int> n = params.n.empty() ? std::vector<int>{p - 2, 2} : params.n;
      require(n.size() == 2, "degree-p pair needs n = (n_1, n_2)");
      require(p >= 5, "degree-p family needs p >= 5");
      return finish(p, 0, n, {}, {c.num(0), c.num(1)}, {});
    }
    case WitnessFamily::PPlusFourSqrt3: {
      require(p >= 5, "needs p >= 5");
      const FieldElement w = c.root(3);
      return finish(p, 4, {p + 2, 2}, {3, 1}, {(c.num(1) + w) / c.num(4), (c.num(1) - w) / c.num(4)},
                    {c.num(0), c.num(1)});
    }
    case WitnessFamily::PPlusFourSqrt2: {
      require(p >= 5, "needs p >= 5");
      const FieldElement w = c.root(2);
      return finish(p, 4, {p - 2, 3, 3}, {4}, {c.num(1), (c.num(1) + w) / c.num(3), (c.num(1) - w) / c.num(3)},
                    {c.num(0)});
    }
    case WitnessFamily::PPlusFiveI4: {
      require(p >= 7, "needs p >= 7");
      const FieldElement w = c.root(c.frac(2, 3).a());
      return finish(p, 5, {p + 2, 3}, {4, 1},
                    {(c.num(1) - c.num(3) * w) / c.num(5), (c.num(1) + c.num(2) * w) / c.num(5)}, {c.num(0), c.num(1)});
    }
    case WitnessFamily::PPlusFiveI5: {
      require(p >= 7, "needs p >= 7");
      const FieldElement w = c.root(15);
      return finish(p, 5, {p - 2, 6, 1}, {5}, {(w - c.num(1)) / c.num(2), (w - c.num(3)) / c.num(6), c.num(2)},
                    {c.num(0)});
    }
    case WitnessFamily::PPlusFiveI6: {
      require(p >= 7, "needs p >= 7");
      const FieldElement w = c.root(6);
      return finish(p, 5, {(p + 5) / 2, (p + 5) / 2}, {2, 3}, {(c.num(3) + w) / c.num(5), (c.num(3) - w) / c.num(5)},
                    {c.num(0), c.num(1)});
    }
    case WitnessFamily::PPlusThreeCycle: {
      require(p >= 5, "needs p >= 5");
      const FieldElement w = c.root(p - 3);
      return finish(p, 3, {p + 3}, {1, 1, 1}, {c.num(0)},
                    {c.num(1), (w - c.num(1)) / c.num(2), -((w + c.num(1)) / c.num(2))});
    }
  }
  throw Error(ErrorKind::InvariantViolation, "unhandled witness family");
}

// ---- exhaustive search ----

std::vector<CoverSpec> witness_search(int p, int t, const std::vector<int>& n, const std::vector<int>& m,
                                      int field_degree, std::uint64_t budget, int threads) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, "p must be an odd prime");
  if (field_degree != 1 && field_degree != 2) throw Error(ErrorKind::BadRange, "field degree must be 1 or 2");
  const FiniteField field = field_degree == 1 ? FiniteField::prime(p) : FiniteField::quadratic(p);
  const int s = static_cast<int>(n.size());
  const int r = static_cast<int>(m.size());
  const int free_coords = s + r - 2;
  if (free_coords < 0) throw Error(ErrorKind::BadRange, "need at least two points");
  const std::uint64_t q = static_cast<std::uint64_t>(field.size());
  std::uint64_t total = 1;
  for (int i = 0; i < free_coords; ++i) {
    if (total > budget / q + 1) throw Error(ErrorKind::BudgetExceeded, "search space exceeds budget");
    total *= q;
  }
  if (total > budget) throw Error(ErrorKind::BudgetExceeded, "search space of " + std::to_string(total) + " exceeds budget");
  {
    CoverSpec probe{field, p, t, n, m, {}, {}};
    for (int i = 0; i < s; ++i) probe.alpha.push_back(FieldElement::from_index(field, i));
    for (int l = 0; l < r; ++l) probe.beta.push_back(FieldElement::from_index(field, s + l));
    auto v = validate_spec(probe);
    v.erase(std::remove_if(v.begin(), v.end(), [](const std::string& x) { return x.find("coincide") != std::string::npos; }),
            v.end());
    if (!v.empty()) throw Error(ErrorKind::InvariantViolation, "invalid search parameters: " + v.front());
  }
  auto build = [&](std::uint64_t idx) {
    CoverSpec spec{field, p, t, n, m, {}, {}};
    std::vector<FieldElement> coords;
    for (int i = 0; i < free_coords; ++i) {
      coords.push_back(FieldElement::from_index(field, static_cast<std::int64_t>(idx % q)));
      idx /= q;
    }
    std::reverse(coords.begin(), coords.end());  // most significant first
    std::size_t k = 0;
    if (r >= 1) {
      spec.alpha.push_back(FieldElement::one(field));
      for (int i = 1; i < s; ++i) spec.alpha.push_back(coords[k++]);
      spec.beta.push_back(FieldElement::zero(field));
      for (int l = 1; l < r; ++l) spec.beta.push_back(coords[k++]);
    } else {
      spec.alpha.push_back(FieldElement::zero(field));
      spec.alpha.push_back(FieldElement::one(field));
      for (int i = 2; i < s; ++i) spec.alpha.push_back(coords[k++]);
    }
    return spec;
  };
  auto distinct = [](const CoverSpec& spec) {
    std::vector<FieldElement> pts = spec.alpha;
    pts.insert(pts.end(), spec.beta.begin(), spec.beta.end());
    std::sort(pts.begin(), pts.end());
    return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
  };
  int nthreads = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(nthreads), total));
  std::vector<std::vector<CoverSpec>> shards(static_cast<std::size_t>(std::max(nthreads, 1)));
  auto work = [&](int shard) {
    const std::uint64_t lo = total * static_cast<std::uint64_t>(shard) / static_cast<std::uint64_t>(nthreads);
    const std::uint64_t hi = total * static_cast<std::uint64_t>(shard + 1) / static_cast<std::uint64_t>(nthreads);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      CoverSpec spec = build(idx);
      if (!distinct(spec)) continue;
      if (compute_g(spec).is_nonzero_constant()) shards[static_cast<std::size_t>(shard)].push_back(std::move(spec));
    }
  };
  if (nthreads <= 1) {
    if (total > 0) work(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work, i);
    for (auto& th : pool) th.join();
  }
  std::vector<CoverSpec> out;
  for (auto& sh : shards) {
    for (auto& x : sh) out.push_back(std::move(x));
  }
  return out;
}

// ---- constructive search ----

namespace {

// Minimal F_p^2 arithmetic on (a, b) = a + b w, w^2 = nu.
struct Fq {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

struct FqOps {
  std::int64_t p;
  std::int64_t nu;
  Fq sub(Fq x, Fq y) const { return {mod(x.a - y.a, p), mod(x.b - y.b, p)}; }
  Fq mul(Fq x, Fq y) const {
    return {mod(x.a * y.a + nu * mod(x.b * y.b, p), p), mod(x.a * y.b + x.b * y.a, p)};
  }
};

void combinations(int n, int k, int start, std::vector<int>& cur, const std::function<bool(const std::vector<int>&)>& f,
                  bool& stop) {
  if (stop) return;
  if (static_cast<int>(cur.size()) == k) {
    if (!f(cur)) stop = true;
    return;
  }
  for (int i = start; i < n && !stop; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, f, stop);
    cur.pop_back();
  }
}

// Visits every way to write extra as an ordered sum of `parts` nonnegative integers.
bool compositions(int extra, int parts, std::vector<int>& cur, const std::function<bool(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(extra);
    const bool go = f(cur);
    cur.pop_back();
    return go;
  }
  for (int k = extra; k >= 0; --k) {
    cur.push_back(k);
    const bool go = compositions(extra - k, parts, cur, f);
    cur.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

PointSetSearch point_set_witness(int p, int t, const std::vector<int>& m, int s,
                                 const std::function<bool(const std::vector<int>&)>& accept, int max_pairs,
                                 std::uint64_t budget) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::BadRange, "p must be an odd prime");
  const int r = static_cast<int>(m.size());
  const int N = r + s;
  const int d = p + t;
  if (r < 1 || s < 1) throw Error(ErrorKind::BadRange, "constructive search needs r, s >= 1");
  const FiniteField ext = FiniteField::quadratic(p);
  const FqOps ops{p, ext.nu()};
  PointSetSearch result;

  std::vector<std::pair<int, int>> pair_list;  // (u, v): u +- v w
  for (int v = 1; v <= (p - 1) / 2; ++v) {
    for (int u = 0; u < p; ++u) pair_list.emplace_back(u, v);
  }

  // Returns false to stop the enumeration.
  auto examine = [&](const std::vector<Fq>& pts) -> bool {
    if (++result.sets_examined > budget) {
      result.budget_hit = true;
      return false;
    }
    std::vector<std::int64_t> w(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      Fq prod{1, 0};
      for (int j = 0; j < N; ++j) {
        if (j != i) prod = ops.mul(prod, ops.sub(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]));
      }
      if (prod.b != 0) return true;  // weight not in F_p
      w[static_cast<std::size_t>(i)] = mod_inv(prod.a, p);
    }
    std::vector<int> role(static_cast<std::size_t>(N), -1);  // beta index or -1
    bool found = false;
    std::function<void(int, std::int64_t)> assign = [&](int l, std::int64_t lambda) {
      if (found) return;
      if (l == r) {
        std::vector<int> resid;
        std::vector<int> alpha_idx;
        int base = 0;
        for (int i = 0; i < N; ++i) {
          if (role[static_cast<std::size_t>(i)] >= 0) continue;
          const int rho = static_cast<int>(mod(lambda * w[static_cast<std::size_t>(i)], p));
          resid.push_back(rho);
          alpha_idx.push_back(i);
          base += rho;
        }
        if (base > d || (d - base) % p != 0) return;
        std::vector<int> cur;
        compositions((d - base) / p, s, cur, [&](const std::vector<int>& extra) {
          std::vector<int> n(resid.size());
          for (std::size_t i = 0; i < n.size(); ++i) n[i] = resid[i] + p * extra[i];
          if (!accept(n)) return true;
          std::vector<FieldElement> alpha, beta(static_cast<std::size_t>(r), FieldElement::zero(ext));
          for (int i : alpha_idx) {
            alpha.emplace_back(ext, pts[static_cast<std::size_t>(i)].a, pts[static_cast<std::size_t>(i)].b);
          }
          for (int i = 0; i < N; ++i) {
            const int l2 = role[static_cast<std::size_t>(i)];
            if (l2 >= 0) beta[static_cast<std::size_t>(l2)] = FieldElement(ext, pts[static_cast<std::size_t>(i)].a, pts[static_cast<std::size_t>(i)].b);
          }
          bool rational = true;
          for (const auto& x : alpha) rational = rational && x.in_prime_field();
          for (const auto& x : beta) rational = rational && x.in_prime_field();
          const FiniteField f = rational ? FiniteField::prime(p) : ext;
          auto conv = [&](std::vector<FieldElement>& v) {
            for (auto& x : v) x = rational ? FieldElement(f, x.a()) : x;
          };
          conv(alpha);
          conv(beta);
          result.witness = CoverSpec{f, p, t, n, m, alpha, beta};
          found = true;
          return false;
        });
        return;
      }
      for (int i = 0; i < N && !found; ++i) {
        if (role[static_cast<std::size_t>(i)] >= 0) continue;
        const std::int64_t target = mod(-m[static_cast<std::size_t>(l)], p);
        std::int64_t lam = lambda;
        if (l == 0) {
          lam = mod(target * mod_inv(w[static_cast<std::size_t>(i)], p), p);
        } else if (mod(lam * w[static_cast<std::size_t>(i)], p) != target) {
          continue;
        }
        role[static_cast<std::size_t>(i)] = l;
        assign(l + 1, lam);
        role[static_cast<std::size_t>(i)] = -1;
      }
    };
    assign(0, 0);
    return !found;
  };

  for (int b = 0; b <= max_pairs && 2 * b <= N; ++b) {
    const int a = N - 2 * b;
    std::vector<Fq> rational_prefix;
    int rational_free = 0;
    if (a >= 2) {
      rational_prefix = {{0, 0}, {1, 0}};
      rational_free = a - 2;
    } else if (a == 1) {
      rational_prefix = {{0, 0}};
    }
    bool stop = false;
    std::vector<int> rc;
    combinations(p - 2, rational_free, 0, rc, [&](const std::vector<int>& rsel) {
      std::vector<Fq> base = rational_prefix;
      for (int x : rsel) base.push_back({x + 2, 0});
      if (b == 0) return examine(base);
      bool inner_stop = false;
      std::vector<int> pc;
      combinations(static_cast<int>(pair_list.size()), b, 0, pc, [&](const std::vector<int>& psel) {
        std::vector<Fq> pts = base;
        for (int k : psel) {
          const auto [u, v] = pair_list[static_cast<std::size_t>(k)];
          pts.push_back({u, v});
          pts.push_back({u, p - v});
        }
        return examine(pts);
      }, inner_stop);
      return !inner_stop;
    }, stop);
    if (result.witness || result.budget_hit) break;
  }
  return result;
}

}  // namespace ilab
