#include "ilab/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "ilab/errors.hpp"
#include "ilab/number.hpp"

namespace ilab {

int CycleType::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::int64_t CycleType::order() const {
  std::int64_t o = 1;
  for (int k : parts) o = lcm(o, k);
  return o;
}

bool CycleType::is_even() const {
  int transpositions = 0;
  for (int k : parts) transpositions += k - 1;
  return transpositions % 2 == 0;
}

int CycleType::fixed_points() const {
  return static_cast<int>(std::count(parts.begin(), parts.end(), 1));
}

std::vector<int> CycleType::nontrivial() const {
  std::vector<int> out;
  for (int k : parts) {
    if (k > 1) out.push_back(k);
  }
  return out;
}

std::string CycleType::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

Perm::Perm(int degree) : images_(static_cast<std::size_t>(degree)) {
  std::iota(images_.begin(), images_.end(), 0);
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= degree() || seen[static_cast<std::size_t>(x)]) {
      throw Error(ErrorKind::InvariantViolation, "image list is not a bijection");
    }
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i] - 1;
      int to = cyc[(i + 1) % cyc.size()] - 1;
      if (from < 0 || from >= degree || to < 0 || to >= degree) {
        throw Error(ErrorKind::BadDegree, "cycle point outside 1.." + std::to_string(degree));
      }
      if (used[static_cast<std::size_t>(from)]) throw Error(ErrorKind::ParseError, "cycles are not disjoint");
      used[static_cast<std::size_t>(from)] = 1;
      images[static_cast<std::size_t>(from)] = to;
    }
  }
  return Perm(std::move(images));
}

Perm Perm::from_cycle_type(int degree, const std::vector<int>& parts, int first_point) {
  std::vector<std::vector<int>> cycles;
  int next = first_point;
  for (int k : parts) {
    std::vector<int> cyc;
    for (int j = 0; j < k; ++j) cyc.push_back(next++);
    if (k > 1) cycles.push_back(cyc);
  }
  if (next - 1 > degree) throw Error(ErrorKind::BadDegree, "cycle type does not fit in degree");
  return from_cycles(degree, cycles);
}

namespace {

std::vector<std::vector<int>> parse_cycles(const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw Error(ErrorKind::ParseError, "empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::ParseError, "expected '(' in '" + text + "'");
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip();
      if (i >= text.size()) throw Error(ErrorKind::ParseError, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw Error(ErrorKind::ParseError, "bad point in '" + text + "'");
      cyc.push_back(std::stoi(text.substr(i, j - i)));
      if (cyc.back() < 1) throw Error(ErrorKind::ParseError, "points are 1-based");
      i = j;
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (!cyc.empty()) cycles.push_back(cyc);
    skip();
  }
  return cycles;
}

}  // namespace

Perm Perm::parse(const std::string& text, int degree) { return from_cycles(degree, parse_cycles(text)); }

Perm Perm::parse(const std::string& text) {
  auto cycles = parse_cycles(text);
  int d = 0;
  for (const auto& c : cycles) {
    for (int x : c) d = std::max(d, x);
  }
  return from_cycles(d, cycles);
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  Perm r;
  r.images_ = std::move(inv);
  return r;
}

Perm Perm::pow(std::int64_t e) const {
  const std::int64_t o = order();
  e = mod(e, o);
  Perm result(degree());
  Perm base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::int64_t Perm::order() const { return cycle_type().order(); }

bool Perm::is_even() const { return cycle_type().is_even(); }

CycleType Perm::cycle_type() const {
  CycleType ct;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int x = i; !seen[static_cast<std::size_t>(x)]; x = images_[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      ++len;
    }
    ct.parts.push_back(len);
  }
  std::sort(ct.parts.begin(), ct.parts.end(), std::greater<>());
  return ct;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || images_[static_cast<std::size_t>(i)] == i) continue;
    std::vector<int> cyc;
    for (int x = i; !seen[static_cast<std::size_t>(x)]; x = images_[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      cyc.push_back(x + 1);
    }
    out.push_back(cyc);
  }
  return out;
}

int Perm::first_moved_point() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[static_cast<std::size_t>(i)] != i) return i;
  }
  return -1;
}

std::vector<int> Perm::support() const {
  std::vector<int> out;
  for (int i = 0; i < degree(); ++i) {
    if (images_[static_cast<std::size_t>(i)] != i) out.push_back(i);
  }
  return out;
}

Perm Perm::extended(int new_degree) const {
  if (new_degree < degree()) throw Error(ErrorKind::BadDegree, "cannot shrink a permutation");
  std::vector<int> images = images_;
  for (int i = degree(); i < new_degree; ++i) images.push_back(i);
  Perm r;
  r.images_ = std::move(images);
  return r;
}

std::string Perm::to_string() const {
  auto cyc = cycles();
  if (cyc.empty()) return "()";
  std::ostringstream out;
  for (const auto& c : cyc) {
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << ')';
  }
  return out.str();
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "composing permutations of different degrees");
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (int i = 0; i < a.degree(); ++i) images[static_cast<std::size_t>(i)] = a(b(i));
  Perm r;
  r.images_ = std::move(images);
  return r;
}

Perm compose(const Perm& a, const Perm& b) { return a * b; }

Perm conjugate(const Perm& a, const Perm& b) { return b * a * b.inverse(); }

Perm commutator(const Perm& a, const Perm& b) { return a.inverse() * b.inverse() * a * b; }

std::optional<Perm> conjugator(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "conjugator of different degrees");
  if (a.cycle_type() != b.cycle_type()) return std::nullopt;
  // Full cycle lists including fixed points, sorted by length, then match positionally.
  auto full_cycles = [](const Perm& x) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(static_cast<std::size_t>(x.degree()), 0);
    for (int i = 0; i < x.degree(); ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      std::vector<int> c;
      for (int y = i; !seen[static_cast<std::size_t>(y)]; y = x(y)) {
        seen[static_cast<std::size_t>(y)] = 1;
        c.push_back(y);
      }
      out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& u, const auto& v) { return u.size() > v.size(); });
    return out;
  };
  auto ca = full_cycles(a);
  auto cb = full_cycles(b);
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (std::size_t k = 0; k < ca.size(); ++k) {
    for (std::size_t j = 0; j < ca[k].size(); ++j) images[static_cast<std::size_t>(ca[k][j])] = cb[k][j];
  }
  return Perm(std::move(images));
}

Perm make_tau(int p, int d) {
  if (p < 1 || p > d) throw Error(ErrorKind::BadDegree, "tau needs p <= d");
  std::vector<int> cyc(static_cast<std::size_t>(p));
  std::iota(cyc.begin(), cyc.end(), 1);
  return Perm::from_cycles(d, {cyc});
}

Perm make_theta(int p, int d) {
  if (p < 1 || p > d) throw Error(ErrorKind::BadDegree, "theta needs p <= d");
  const std::int64_t g = smallest_primitive_root(p);
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 0);
  for (int x = 0; x < p; ++x) images[static_cast<std::size_t>(x)] = static_cast<int>(g * x % p);
  return Perm(std::move(images));
}

}  // namespace ilab
