#include "ilab/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>

#include "ilab/errors.hpp"

namespace ilab {

Bsgs::Bsgs(int degree, const std::vector<Perm>& generators, const std::vector<int>& base_prefix)
    : degree_(degree) {
  if (degree > kDegreeBudget) {
    throw Error(ErrorKind::DegreeBudgetExceeded,
                "degree " + std::to_string(degree) + " exceeds budget " + std::to_string(kDegreeBudget));
  }
  for (int point : base_prefix) {
    if (point < 0 || point >= degree) throw Error(ErrorKind::BadDegree, "base point out of range");
    add_level(point);
  }
  for (const auto& g : generators) extend(g);
}

std::vector<int> Bsgs::base() const {
  std::vector<int> out;
  for (const auto& l : levels_) out.push_back(l.point);
  return out;
}

BigInt Bsgs::order() const {
  BigInt n = 1;
  for (const auto& l : levels_) n *= l.orbit.size();
  return n;
}

bool Bsgs::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [res, lvl] = strip(g, 0);
  return lvl == levels_.size() && res.is_identity();
}

bool Bsgs::extend(const Perm& g) {
  if (g.degree() != degree_) throw Error(ErrorKind::DegreeMismatch, "generator degree differs from group degree");
  auto [res, lvl] = strip(g, 0);
  if (lvl == levels_.size() && res.is_identity()) return false;
  if (lvl == levels_.size()) add_level(res.first_moved_point());
  add_strong_generator(res, lvl);
  for (std::size_t l = 0; l < lvl; ++l) {
    levels_[l].gens.push_back(static_cast<int>(strong_.size()) - 1);
    grow_orbit(l);
  }
  complete(lvl);
  return true;
}

std::vector<Perm> Bsgs::stabilizer_generators(std::size_t level) const {
  std::vector<Perm> out;
  if (level >= levels_.size()) return out;
  for (int idx : levels_[level].gens) out.push_back(strong_[static_cast<std::size_t>(idx)]);
  return out;
}

Perm Bsgs::random_element(std::mt19937_64& rng) const {
  Perm g(degree_);
  for (const auto& l : levels_) {
    std::uniform_int_distribution<std::size_t> pick(0, l.transversal.size() - 1);
    g = g * l.transversal[pick(rng)];
  }
  return g;
}

void Bsgs::add_level(int point) {
  Level l;
  l.point = point;
  l.orbit = {point};
  l.orbit_index.assign(static_cast<std::size_t>(degree_), -1);
  l.orbit_index[static_cast<std::size_t>(point)] = 0;
  l.transversal = {Perm(degree_)};
  l.transversal_inv = {Perm(degree_)};
  l.done.emplace_back();
  levels_.push_back(std::move(l));
}

// Adds g as a strong generator of the given level only; callers add it to shallower levels.
void Bsgs::add_strong_generator(const Perm& g, std::size_t level) {
  strong_.push_back(g);
  levels_[level].gens.push_back(static_cast<int>(strong_.size()) - 1);
  grow_orbit(level);
}

void Bsgs::grow_orbit(std::size_t level) {
  Level& l = levels_[level];
  for (std::size_t pos = 0; pos < l.orbit.size(); ++pos) {
    for (int idx : l.gens) {
      const Perm& s = strong_[static_cast<std::size_t>(idx)];
      const int y = s(l.orbit[pos]);
      if (l.orbit_index[static_cast<std::size_t>(y)] >= 0) continue;
      l.orbit_index[static_cast<std::size_t>(y)] = static_cast<int>(l.orbit.size());
      l.orbit.push_back(y);
      Perm u = s * l.transversal[pos];
      l.transversal_inv.push_back(u.inverse());
      l.transversal.push_back(std::move(u));
      l.done.emplace_back();
    }
  }
}

std::pair<Perm, std::size_t> Bsgs::strip(Perm g, std::size_t start) const {
  for (std::size_t l = start; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const int idx = lv.orbit_index[static_cast<std::size_t>(g(lv.point))];
    if (idx < 0) return {std::move(g), l};
    g = lv.transversal_inv[static_cast<std::size_t>(idx)] * g;
  }
  return {std::move(g), levels_.size()};
}

void Bsgs::complete(std::size_t start_level) {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start_level);
  while (i >= 0) {
    const std::size_t li = static_cast<std::size_t>(i);
    bool jumped = false;
    for (std::size_t pos = 0; pos < levels_[li].orbit.size() && !jumped; ++pos) {
      for (std::size_t slot = 0; slot < levels_[li].gens.size(); ++slot) {
        Level& l = levels_[li];
        if (l.done[pos].size() < l.gens.size()) l.done[pos].resize(l.gens.size(), 0);
        if (l.done[pos][slot]) continue;
        l.done[pos][slot] = 1;
        const Perm& s = strong_[static_cast<std::size_t>(l.gens[slot])];
        const int image = s(l.orbit[pos]);
        const Perm h = l.transversal_inv[static_cast<std::size_t>(l.orbit_index[static_cast<std::size_t>(image)])] * s *
                       l.transversal[pos];
        auto [res, lvl] = strip(h, li + 1);
        if (lvl == levels_.size() && res.is_identity()) continue;
        if (lvl == levels_.size()) add_level(res.first_moved_point());
        add_strong_generator(res, lvl);
        for (std::size_t k = li + 1; k < lvl; ++k) {
          levels_[k].gens.push_back(static_cast<int>(strong_.size()) - 1);
          grow_orbit(k);
        }
        i = static_cast<std::ptrdiff_t>(lvl);
        jumped = true;
        break;
      }
    }
    if (!jumped) --i;
  }
}

struct PermGroup::Cache {
  std::once_flag once;
  std::unique_ptr<Bsgs> bsgs;
};

PermGroup::PermGroup(int degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) throw Error(ErrorKind::DegreeMismatch, "generator degree differs from group degree");
  }
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(int degree) {
  if (degree < 2) return trivial(degree);
  std::vector<int> cyc(static_cast<std::size_t>(degree));
  std::iota(cyc.begin(), cyc.end(), 1);
  return PermGroup(degree, {Perm::from_cycles(degree, {{1, 2}}), Perm::from_cycles(degree, {cyc})});
}

PermGroup PermGroup::alternating(int degree) {
  std::vector<Perm> gens;
  for (int k = 3; k <= degree; ++k) gens.push_back(Perm::from_cycles(degree, {{1, 2, k}}));
  return PermGroup(degree, std::move(gens));
}

const Bsgs& PermGroup::bsgs() const {
  std::call_once(cache_->once, [this] { cache_->bsgs = std::make_unique<Bsgs>(degree_, generators_); });
  return *cache_->bsgs;
}

BigInt PermGroup::order() const { return bsgs().order(); }

bool PermGroup::contains(const Perm& g) const { return bsgs().contains(g); }

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree_ != other.degree_) return false;
  return std::all_of(generators_.begin(), generators_.end(), [&](const Perm& g) { return other.contains(g); });
}

bool PermGroup::same_group(const PermGroup& other) const {
  return is_subgroup_of(other) && order() == other.order();
}

bool PermGroup::is_trivial() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Perm& g) { return g.is_identity(); });
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(static_cast<std::size_t>(degree_), 0);
  for (int start = 0; start < degree_; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> orbit{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& g : generators_) {
        const int y = g(orbit[k]);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool PermGroup::is_transitive() const { return orbits().size() == 1; }

std::vector<int> PermGroup::minimal_block(int b) const {
  std::vector<int> parent(static_cast<std::size_t>(degree_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::deque<std::pair<int, int>> queue;
  parent[static_cast<std::size_t>(find(b))] = find(0);
  queue.emplace_back(0, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const auto& g : generators_) {
      const int a = find(g(x));
      const int c = find(g(y));
      if (a != c) {
        parent[static_cast<std::size_t>(c)] = a;
        queue.emplace_back(a, c);
      }
    }
  }
  std::vector<int> block;
  const int root = find(0);
  for (int x = 0; x < degree_; ++x) {
    if (find(x) == root) block.push_back(x);
  }
  return block;
}

bool PermGroup::is_primitive() const {
  if (!is_transitive()) return false;
  for (int b = 1; b < degree_; ++b) {
    if (static_cast<int>(minimal_block(b).size()) != degree_) return false;
  }
  return true;
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
  Bsgs b(degree_, generators_, points);
  return PermGroup(degree_, b.stabilizer_generators(points.size()));
}

std::string PermGroup::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i].to_string();
  }
  return out + ">";
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  for (const auto& s : seeds) {
    if (!g.contains(s)) throw Error(ErrorKind::NotASubset, s.to_string() + " is not in the ambient group");
  }
  Bsgs n(g.degree(), {});
  std::vector<Perm> gens;
  std::deque<Perm> queue;
  for (const auto& s : seeds) {
    if (n.extend(s)) {
      gens.push_back(s);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const auto& h : g.generators()) {
      Perm c = conjugate(x, h);
      if (n.extend(c)) {
        gens.push_back(c);
        queue.push_back(c);
      }
    }
  }
  return PermGroup(g.degree(), std::move(gens));
}

PermGroup join(int degree, const std::vector<PermGroup>& groups, const std::vector<Perm>& extra) {
  std::vector<Perm> gens;
  for (const auto& h : groups) gens.insert(gens.end(), h.generators().begin(), h.generators().end());
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(degree, std::move(gens));
}

std::string to_string(AltSym c) {
  switch (c) {
    case AltSym::Alternating: return "Alternating";
    case AltSym::Symmetric: return "Symmetric";
    case AltSym::Other: return "Other";
  }
  return "Other";
}

AltSym classify_alt_sym(const PermGroup& g) {
  const BigInt n = g.order();
  const BigInt full = factorial(g.degree());
  if (n == full) return AltSym::Symmetric;
  if (n * 2 == full) return AltSym::Alternating;
  return AltSym::Other;
}

JonesResult jones_criterion(int d, int p, const Perm& gamma, int t) {
  const std::int64_t ord = gamma.order();
  for (std::int64_t j = 1; j < ord; ++j) {
    const CycleType ct = gamma.pow(j).cycle_type();
    if (ct.nontrivial().size() == 1 && ct.fixed_points() >= 3) {
      return {true, "gamma^" + std::to_string(j) + " is a single " + std::to_string(ct.nontrivial()[0]) +
                        "-cycle fixing " + std::to_string(ct.fixed_points()) + " points"};
    }
  }
  if (d > p && t >= 3 && t <= p - 1) return {true, "3 <= t <= p-1 with t = " + std::to_string(t)};
  if (d == p) {
    if (p == 11 || p == 23) return {false, "p in {11, 23}"};
    if (is_projective_prime(p)) return {false, "p is of the form (q^n-1)/(q-1)"};
    const Perm theta = make_theta(p, d);
    const CycleType gt = gamma.cycle_type();
    for (int i = 1; i <= p - 1; ++i) {
      if (theta.pow(i).cycle_type() == gt) {
        return {false, "gamma is conjugate to theta^" + std::to_string(i)};
      }
    }
    return {true, "prime degree, p not exceptional, gamma not conjugate to a power of theta"};
  }
  return {false, "no clause applies"};
}

int p_valuation(const BigInt& n, int p) {
  if (n == 0) return 0;
  int v = 0;
  BigInt m = n;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

FrattiniResult frattini_quotient(const PermGroup& g, int p, const std::vector<PermGroup>& ps) {
  FrattiniResult r;
  r.group_order = g.order();
  {
    BigInt m = r.group_order;
    while (m % p == 0) m /= p;
    if (m != 1) throw Error(ErrorKind::NotAPGroup, "group order is not a power of " + std::to_string(p));
  }
  std::vector<Perm> seeds;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    seeds.push_back(gens[i].pow(p));
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(commutator(gens[i], gens[j]));
  }
  const PermGroup phi = normal_closure(g, seeds);
  r.frattini_order = phi.order();
  r.rank = p_valuation(r.group_order / r.frattini_order, p);
  std::vector<Perm> all_p;
  for (const auto& pi : ps) {
    const PermGroup with_phi = join(g.degree(), {phi, pi});
    r.image_ranks.push_back(p_valuation(with_phi.order() / r.frattini_order, p));
    all_p.insert(all_p.end(), pi.generators().begin(), pi.generators().end());
  }
  r.normal_closure_generates = normal_closure(g, all_p).order() == r.group_order;
  r.ps_generate = PermGroup(g.degree(), all_p).order() == r.group_order;
  r.lemma_holds = !r.normal_closure_generates || r.ps_generate;
  return r;
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  const int d = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (const auto& g : a.generators()) gens.push_back(g.extended(d));
  for (const auto& h : b.generators()) {
    std::vector<int> images(static_cast<std::size_t>(d));
    std::iota(images.begin(), images.end(), 0);
    for (int x = 0; x < b.degree(); ++x) images[static_cast<std::size_t>(a.degree() + x)] = a.degree() + h(x);
    gens.emplace_back(std::move(images));
  }
  return PermGroup(d, std::move(gens));
}

namespace {

Perm restrict_to(const Perm& g, int offset, int size) {
  std::vector<int> images(static_cast<std::size_t>(size));
  for (int x = 0; x < size; ++x) {
    const int y = g(offset + x) - offset;
    if (y < 0 || y >= size) throw Error(ErrorKind::NotASubgroupOfProduct, "generator mixes the two domains");
    images[static_cast<std::size_t>(x)] = y;
  }
  return Perm(std::move(images));
}

Perm place(const Perm& g, int offset, int total) {
  std::vector<int> images(static_cast<std::size_t>(total));
  std::iota(images.begin(), images.end(), 0);
  for (int x = 0; x < g.degree(); ++x) images[static_cast<std::size_t>(offset + x)] = offset + g(x);
  return Perm(std::move(images));
}

}  // namespace

GoursatResult goursat_decompose(const PermGroup& g1, const PermGroup& g2, const PermGroup& p) {
  const int d1 = g1.degree(), d2 = g2.degree();
  if (p.degree() != d1 + d2) throw Error(ErrorKind::NotASubgroupOfProduct, "degree is not d1 + d2");
  std::vector<Perm> r1, r2;
  std::vector<std::pair<Perm, Perm>> graph;
  for (const auto& g : p.generators()) {
    Perm a = restrict_to(g, 0, d1);
    Perm b = restrict_to(g, d1, d2);
    if (!g1.contains(a) || !g2.contains(b)) {
      throw Error(ErrorKind::NotASubgroupOfProduct, "projection leaves a factor group");
    }
    r1.push_back(a);
    r2.push_back(b);
    graph.emplace_back(a, b);
  }
  std::vector<int> block1(static_cast<std::size_t>(d1)), block2(static_cast<std::size_t>(d2));
  std::iota(block1.begin(), block1.end(), 0);
  std::iota(block2.begin(), block2.end(), d1);
  std::vector<Perm> n1, n2;
  const PermGroup k1 = p.pointwise_stabilizer(block2);
  const PermGroup k2 = p.pointwise_stabilizer(block1);
  for (const auto& g : k1.generators()) n1.push_back(restrict_to(g, 0, d1));
  for (const auto& g : k2.generators()) n2.push_back(restrict_to(g, d1, d2));
  GoursatResult out{PermGroup(d1, r1), PermGroup(d2, r2), PermGroup(d1, n1), PermGroup(d2, n2), 0, graph, false};
  out.quotient_order = out.pi1.order() / out.n1.order();
  if (out.quotient_order != out.pi2.order() / out.n2.order()) {
    throw Error(ErrorKind::InvariantViolation, "Goursat quotients differ in order");
  }
  std::vector<Perm> rebuilt;
  for (const auto& x : n1) rebuilt.push_back(place(x, 0, d1 + d2));
  for (const auto& x : n2) rebuilt.push_back(place(x, d1, d1 + d2));
  for (const auto& [a, b] : graph) rebuilt.push_back(place(a, 0, d1 + d2) * place(b, d1, d1 + d2));
  const PermGroup r(d1 + d2, rebuilt);
  out.reconstructs = r.same_group(p) && out.pi1.order() * out.n2.order() == p.order();
  return out;
}

std::string to_string(Certainty c) { return c == Certainty::Proved ? "proved" : "sampled"; }

PPartResult p_part_subgroup(const PermGroup& g, int p, std::uint64_t seed) {
  const BigInt order = g.order();
  const int v = p_valuation(order, p);
  if (v == 0) return {PermGroup::trivial(g.degree()), Certainty::Proved, seed};
  std::mt19937_64 rng(seed);
  std::vector<Perm> p_elements;
  auto p_power = [p](const Perm& x) {
    std::int64_t m = x.order();
    while (m % p == 0) m /= p;
    return x.pow(m);
  };
  for (int k = 0; k < kPPartSamples; ++k) {
    Perm x = p_power(g.bsgs().random_element(rng));
    if (!x.is_identity()) p_elements.push_back(std::move(x));
  }
  if (v == 1 && p_elements.empty() && order <= 2000000) {
    g.bsgs().for_each_element([&](const Perm& x) {
      if (p_elements.empty() && x.order() % p == 0) p_elements.push_back(p_power(x));
    });
  }
  PermGroup closure = normal_closure(g, p_elements);
  // Cyclic Sylow of order p: every p-element generates a Sylow subgroup, all conjugate.
  const bool proved = closure.order() == order || (v == 1 && !p_elements.empty());
  return {std::move(closure), proved ? Certainty::Proved : Certainty::Sampled, seed};
}

}  // namespace ilab
