#include "ilab/inertia.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ilab/errors.hpp"

namespace ilab {

RamificationProfile RamificationProfile::from(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end(), std::greater<>());
  return {std::move(indices)};
}

int RamificationProfile::sum() const { return std::accumulate(indices.begin(), indices.end(), 0); }

std::string RamificationProfile::to_string() const { return CycleType{indices}.to_string(); }

namespace {

int normalize_exp(int i, int p) {
  return static_cast<int>(mod(i, p - 1));
}

int theta_gcd(int i, int p) {
  const int g = std::gcd(normalize_exp(i, p), p - 1);
  return g == p - 1 ? 0 : g;
}

// Cycle type of omega restricted to {p+1..d}.
CycleType omega_type(const Perm& omega, int p) {
  CycleType full = omega.cycle_type();
  // omega fixes 1..p; remove p of the fixed points.
  int to_remove = p;
  std::vector<int> parts;
  for (auto it = full.parts.rbegin(); it != full.parts.rend(); ++it) {
    if (*it == 1 && to_remove > 0) {
      --to_remove;
      continue;
    }
    parts.push_back(*it);
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return {parts};
}

}  // namespace

InertiaShape InertiaShape::wild(int p, int d, int theta_exp, Perm omega) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::InvariantViolation, "p must be an odd prime");
  if (d < p) throw Error(ErrorKind::BadDegree, "wild shape needs d >= p");
  if (omega.degree() != d) throw Error(ErrorKind::DegreeMismatch, "omega has the wrong degree");
  for (int x = 0; x < p; ++x) {
    if (omega(x) != x) throw Error(ErrorKind::InvariantViolation, "omega must fix 1..p");
  }
  if (omega.order() % p == 0) throw Error(ErrorKind::InvariantViolation, "omega order divisible by p");
  InertiaShape s;
  s.kind_ = ShapeKind::Wild;
  s.p_ = p;
  s.d_ = d;
  s.theta_exp_ = normalize_exp(theta_exp, p);
  s.omega_ = std::move(omega);
  return s;
}

InertiaShape InertiaShape::wild(int p, int d, int theta_exp, const std::vector<int>& omega_parts) {
  if (std::accumulate(omega_parts.begin(), omega_parts.end(), 0) != d - p) {
    throw Error(ErrorKind::BadDegree, "omega cycle type must sum to d - p");
  }
  return wild(p, d, theta_exp, Perm::from_cycle_type(d, omega_parts, p + 1));
}

InertiaShape InertiaShape::tame(int p, Perm gamma) {
  if (p != 0 && gamma.order() % p == 0) throw Error(ErrorKind::InvariantViolation, "tame generator has order divisible by p");
  InertiaShape s;
  s.kind_ = ShapeKind::Tame;
  s.p_ = p;
  s.d_ = gamma.degree();
  s.gamma_ = std::move(gamma);
  return s;
}

Perm InertiaShape::tame_generator() const {
  if (kind_ == ShapeKind::Tame) return gamma_;
  return make_theta(p_, d_).pow(theta_exp_) * omega_;
}

std::int64_t InertiaShape::theta_order() const {
  if (kind_ == ShapeKind::Tame) return 1;
  return (p_ - 1) / std::gcd(theta_exp_, p_ - 1);
}

std::int64_t InertiaShape::tame_order() const {
  if (kind_ == ShapeKind::Tame) return gamma_.order();
  return lcm(theta_order(), omega_.order());
}

BigInt InertiaShape::expected_order() const {
  if (kind_ == ShapeKind::Tame) return gamma_.order();
  return BigInt(p_) * tame_order();
}

ShapeKey InertiaShape::key() const {
  if (kind_ == ShapeKind::Tame) return {ShapeKind::Tame, 0, gamma_.cycle_type()};
  return {ShapeKind::Wild, theta_gcd(theta_exp_, p_), omega_type(omega_, p_)};
}

int InertiaShape::fixed_points() const {
  if (kind_ == ShapeKind::Tame) return gamma_.cycle_type().fixed_points();
  return omega_type(omega_, p_).fixed_points();
}

bool InertiaShape::is_even() const { return tame_generator().is_even(); }

std::string InertiaShape::to_string() const {
  std::ostringstream out;
  if (kind_ == ShapeKind::Wild) {
    out << "wild p=" << p_ << " d=" << d_ << " i=" << theta_exp_ << " omega=" << omega_.to_string();
    return out.str();
  }
  const auto cycles = gamma_.cycles();
  int max_point = 0;
  for (const auto& c : cycles) {
    for (int x : c) max_point = std::max(max_point, x);
  }
  out << "tame";
  if (p_ != 0 || d_ != max_point) out << " p=" << p_ << " d=" << d_;
  out << " gamma=" << gamma_.to_string();
  return out.str();
}

InertiaShape InertiaShape::parse(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  std::map<std::string, std::string> fields;
  std::string token;
  std::string pending_key;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq != std::string::npos) {
      pending_key = token.substr(0, eq);
      if (fields.count(pending_key)) throw Error(ErrorKind::ParseError, "duplicate field " + pending_key);
      fields[pending_key] = token.substr(eq + 1);
    } else if (!pending_key.empty() && (pending_key == "omega" || pending_key == "gamma")) {
      fields[pending_key] += " " + token;  // cycles may contain spaces
    } else {
      throw Error(ErrorKind::ParseError, "unexpected token '" + token + "'");
    }
  }
  auto get_int = [&](const std::string& k) -> int {
    auto it = fields.find(k);
    if (it == fields.end()) throw Error(ErrorKind::ParseError, "missing field " + k);
    try {
      std::size_t pos = 0;
      int v = std::stoi(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(k);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad integer for " + k);
    }
  };
  if (kind == "wild") {
    for (const auto& [k, v] : fields) {
      if (k != "p" && k != "d" && k != "i" && k != "omega") throw Error(ErrorKind::ParseError, "unknown field " + k);
    }
    const int p = get_int("p"), d = get_int("d"), i = get_int("i");
    if (!fields.count("omega")) throw Error(ErrorKind::ParseError, "missing field omega");
    return wild(p, d, i, Perm::parse(fields["omega"], d));
  }
  if (kind == "tame") {
    for (const auto& [k, v] : fields) {
      if (k != "p" && k != "d" && k != "gamma") throw Error(ErrorKind::ParseError, "unknown field " + k);
    }
    if (!fields.count("gamma")) throw Error(ErrorKind::ParseError, "missing field gamma");
    const int p = fields.count("p") ? get_int("p") : 0;
    if (fields.count("d")) return tame(p, Perm::parse(fields["gamma"], get_int("d")));
    return tame(p, Perm::parse(fields["gamma"]));
  }
  throw Error(ErrorKind::ParseError, "shape must start with 'wild' or 'tame'");
}

PermGroup realize(const InertiaShape& shape) {
  if (shape.kind() == ShapeKind::Tame) return PermGroup(shape.d(), {shape.gamma()});
  PermGroup g(shape.d(), {make_tau(shape.p(), shape.d()), shape.tame_generator()});
  if (g.order() != shape.expected_order()) {
    throw Error(ErrorKind::InvariantViolation, "realized order differs from p * lcm(ord theta^i, ord omega)");
  }
  return g;
}

InertiaShape canonicalize(const InertiaShape& shape) {
  if (shape.kind() != ShapeKind::Wild) throw Error(ErrorKind::InvariantViolation, "canonicalize needs a wild shape");
  const int p = shape.p();
  const int i = shape.theta_exp();
  const int g = i == 0 ? p - 1 : std::gcd(i, p - 1);
  const std::int64_t a = (p - 1) / g;  // ord theta^i
  const std::int64_t m = shape.tame_order();
  const std::int64_t u = a == 1 ? 0 : mod_inv(i / g, a);
  std::int64_t k = u;
  while (k < 1 || std::gcd(k, m) != 1) k += a;
  InertiaShape out = InertiaShape::wild(p, shape.d(), g == p - 1 ? 0 : g, shape.omega().pow(k));
  if (!(shape.tame_generator().pow(k) == out.tame_generator())) {
    throw Error(ErrorKind::InvariantViolation, "canonical generator is not a power of the original");
  }
  if (!realize(out).same_group(realize(shape))) {
    throw Error(ErrorKind::InvariantViolation, "canonical shape realizes a different group");
  }
  return out;
}

RamificationProfile fibre_profile(const InertiaShape& shape) {
  std::vector<int> lengths;
  for (const auto& orbit : realize(shape).orbits()) lengths.push_back(static_cast<int>(orbit.size()));
  return RamificationProfile::from(std::move(lengths));
}

InertiaShape embed_shape(const InertiaShape& shape, int new_degree) {
  if (new_degree < shape.d() || new_degree > kDegreeBudget) throw Error(ErrorKind::BadRange, "bad embedding degree");
  if (shape.kind() == ShapeKind::Tame) return InertiaShape::tame(shape.p(), shape.gamma().extended(new_degree));
  return InertiaShape::wild(shape.p(), new_degree, shape.theta_exp(), shape.omega().extended(new_degree));
}

std::string to_string(GroupClaim c) { return c == GroupClaim::Alternating ? "A_d" : "S_d"; }

InertiaShape power_shape(const InertiaShape& s, std::int64_t k) {
  if (s.kind() == ShapeKind::Tame) return InertiaShape::tame(s.p(), s.gamma().pow(k));
  return InertiaShape::wild(s.p(), s.d(), static_cast<int>(mod(static_cast<std::int64_t>(s.theta_exp()) * k, s.p() - 1)),
                            s.omega().pow(k));
}

KummerResult kummer_pullback(const InertiaShape& over0, const InertiaShape& over_inf, std::int64_t n,
                             GroupClaim claim) {
  if (over0.kind() != ShapeKind::Tame || over_inf.kind() != ShapeKind::Wild) {
    throw Error(ErrorKind::InvariantViolation, "pullback needs a tame shape over 0 and a wild one over infinity");
  }
  const int p = over_inf.p();
  if (n < 1 || std::gcd(n, static_cast<std::int64_t>(p)) != 1) {
    throw Error(ErrorKind::NotCoprime, "Kummer degree " + std::to_string(n) + " is not coprime to p");
  }
  const std::int64_t e = over0.tame_order();
  const std::int64_t m = over_inf.tame_order();
  InertiaShape new0 = power_shape(over0, std::gcd(n, e));
  InertiaShape new_inf = power_shape(over_inf, std::gcd(n, m));
  KummerResult r{new0, new_inf, claim, new0.gamma().is_identity(), false, false};
  if (claim == GroupClaim::Symmetric) {
    if (n % 2 == 1) return r;  // S_d has no nontrivial odd cyclic quotient
    if (!new0.is_even() || !new_inf.is_even()) {
      throw Error(ErrorKind::Unsupported, "even Kummer degree with an odd inertia generator");
    }
    r.claim = GroupClaim::Alternating;
  }
  r.needs_quasi_p_check = true;
  const int d = over_inf.d();
  const PermGroup alt = PermGroup::alternating(d);
  r.quasi_p_check_holds = normal_closure(alt, {make_tau(p, d)}).order() == alt.order();
  return r;
}

std::set<ShapeKey> kummer_reachable(const InertiaShape& shape) {
  std::set<ShapeKey> out;
  const std::int64_t m = shape.tame_order();
  for (std::int64_t g : divisors(m)) {
    if (g == 1) continue;
    out.insert(power_shape(shape, g).key());
  }
  out.erase(shape.key());
  return out;
}

std::string to_string(TargetStatus s) {
  switch (s) {
    case TargetStatus::MustRealize: return "must-realize";
    case TargetStatus::Reducible: return "reducible";
    case TargetStatus::Deferred: return "deferred-to-lower-degree";
  }
  return "unknown";
}

std::vector<IcTarget> enumerate_ic_targets(int d, int p, Parity parity, const std::set<int>& lower_degree_available) {
  if (!is_odd_prime(p) || d < p || d > 2 * p - 1) {
    throw Error(ErrorKind::BadRange, "need an odd prime p with p <= d <= 2p-1");
  }
  std::vector<InertiaShape> shapes;
  std::vector<int> exps;
  for (auto i : divisors(p - 1)) exps.push_back(i == p - 1 ? 0 : static_cast<int>(i));
  for (int i : exps) {
    for (const auto& part : partitions(d - p, d - p)) {
      InertiaShape s = InertiaShape::wild(p, d, i, part);
      if (s.is_even() == (parity == Parity::Even)) shapes.push_back(s);
    }
  }
  std::vector<IcTarget> out;
  std::vector<std::set<ShapeKey>> reach;
  for (const auto& s : shapes) reach.push_back(kummer_reachable(s));
  for (std::size_t t = 0; t < shapes.size(); ++t) {
    IcTarget target{shapes[t], TargetStatus::MustRealize, std::nullopt, 0};
    if (parity == Parity::Even) {
      for (std::size_t s = 0; s < shapes.size(); ++s) {
        if (s == t || !reach[s].count(shapes[t].key())) continue;
        // Prefer a maximal source; reachability is transitive so one exists.
        bool source_maximal = true;
        for (std::size_t u = 0; u < shapes.size(); ++u) {
          if (u != s && reach[u].count(shapes[s].key())) source_maximal = false;
        }
        if (!source_maximal) continue;
        target.status = TargetStatus::Reducible;
        target.reducible_from = shapes[s];
        break;
      }
      const int f = shapes[t].fixed_points();
      if (target.status == TargetStatus::MustRealize && f >= 2 && lower_degree_available.count(d - f + 1)) {
        target.status = TargetStatus::Deferred;
        target.deferred_degree = d - f + 1;
      }
    }
    out.push_back(std::move(target));
  }
  return out;
}

}  // namespace ilab
