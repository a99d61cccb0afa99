#include "ilab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "ilab/cover.hpp"
#include "ilab/errors.hpp"
#include "ilab/inertia.hpp"
#include "ilab/number.hpp"
#include "ilab/theorems.hpp"

namespace ilab {

using json = nlohmann::ordered_json;

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(ErrorKind::ParseError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::ParseError, "cannot rename onto " + path + ": " + ec.message());
  }
}

namespace {

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + item + "'");
    }
    if (used != item.size() || v < 1) throw UsageError("not a positive integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string frac(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

void emit(const Invocation& inv, std::ostream& out, const std::string& text, const json& j) {
  if (inv.json_path) write_file_atomic(*inv.json_path, j.dump(2) + "\n");
  if (inv.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

int run_analyze(const Invocation& inv, std::ostream& out) {
  const CoverSpec spec = CoverSpec::parse(read_file(*inv.spec_path));
  const auto problems = validate_spec(spec);
  if (!problems.empty()) throw Error(ErrorKind::ParseError, "invalid spec: " + problems.front());
  const AssumptionResult a = check_assumption(spec);
  json j;
  j["spec"] = spec.to_string();
  j["assumption_holds"] = a.holds;
  std::ostringstream os;
  os << "spec: " << spec.to_string() << "\n";
  if (!a.holds) {
    os << "assumption: fails, g is not a nonzero constant\n";
    emit(inv, out, os.str(), j);
    return kExitFail;
  }
  const RamificationReport rep = ramification_report(spec);
  const GaloisDecision dec = galois_decision(spec, rep);
  j["g"] = a.g_constant->to_string();
  j["d"] = rep.d;
  j["over0"] = rep.over0.to_string();
  j["over_inf"] = rep.over_inf.to_string();
  j["jump"] = frac(rep.jump);
  j["etale_away"] = rep.etale_away;
  j["resultant_x_exponent"] = rep.resultant_x_exponent;
  j["genus"] = rep.genus;
  j["inertia0"] = rep.inertia0.to_string();
  j["inertia_inf"] = rep.inertia_inf.to_string();
  j["verdict"] = to_string(dec.verdict);
  j["primitivity"] = dec.primitivity;
  j["clause"] = dec.alt_clause;
  j["parity"] = dec.parity;
  os << "assumption: holds, g = " << a.g_constant->to_string() << "\n"
     << "degree: " << rep.d << "\n"
     << "over 0: " << rep.over0.to_string() << "\n"
     << "over infinity: " << rep.over_inf.to_string() << "\n"
     << "upper jump: " << frac(rep.jump) << "\n"
     << "etale away from {0, infinity}: " << (rep.etale_away ? "yes" : "no") << " (resultant c x^"
     << rep.resultant_x_exponent << ")\n"
     << "genus: " << rep.genus << "\n"
     << "inertia over 0: " << rep.inertia0.to_string() << "\n"
     << "inertia over infinity: " << rep.inertia_inf.to_string() << "\n"
     << "galois group: " << to_string(dec.verdict) << " (" << dec.primitivity << "; " << dec.alt_clause << "; "
     << dec.parity << ")\n";
  emit(inv, out, os.str(), j);
  return kExitOk;
}

int run_search(const Invocation& inv, std::ostream& out) {
  const int p = inv.primes.front();
  const int t = *inv.t;
  const int d = p + t;
  std::vector<std::vector<int>> ns;
  if (!inv.n.empty()) {
    ns.push_back(inv.n);
  } else {
    for (const auto& q : partitions(d, d)) {
      if (static_cast<int>(q.size()) != *inv.s) continue;
      if (std::any_of(q.begin(), q.end(), [&](int x) { return x % p == 0; })) continue;
      ns.push_back(q);
    }
  }
  json list = json::array();
  std::ostringstream os;
  for (const auto& n : ns) {
    for (const auto& w : witness_search(p, t, n, inv.m, inv.field_degree, inv.budget)) {
      list.push_back(w.to_string());
      os << w.to_string() << "\n";
    }
  }
  if (list.empty()) os << "no witnesses found\n";
  json j;
  j["p"] = p;
  j["t"] = t;
  j["m"] = inv.m;
  j["field"] = inv.field_degree == 1 ? "Fp" : "Fp2";
  j["witnesses"] = list;
  emit(inv, out, os.str(), j);
  return kExitOk;
}

int run_verify(const Invocation& inv, std::ostream& out) {
  std::vector<std::string> ids = inv.ids;
  std::vector<int> ps = inv.primes;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<Certificate> certs;
  for (const auto& id : ids) {
    for (int p : ps) certs.push_back(verify_theorem(id, p));
  }
  bool all = true;
  std::string text;
  json arr = json::array();
  for (const auto& c : certs) {
    all = all && c.pass();
    text += emit_certificate(c, CertificateFormat::Text);
    arr.push_back(certificate_json(c));
  }
  emit(inv, out, text, certs.size() == 1 ? arr.front() : arr);
  return all ? kExitOk : kExitFail;
}

int run_targets(const Invocation& inv, std::ostream& out) {
  const int p = inv.primes.front();
  const int d = *inv.d;
  std::set<int> lower;
  const auto targets =
      enumerate_ic_targets(d, p, inv.parity == "odd" ? Parity::Odd : Parity::Even, lower);
  json arr = json::array();
  std::ostringstream os;
  for (const auto& t : targets) {
    json e;
    e["shape"] = t.shape.to_string();
    e["status"] = to_string(t.status);
    if (t.reducible_from) e["from"] = t.reducible_from->to_string();
    arr.push_back(e);
    os << t.shape.to_string() << "  " << to_string(t.status);
    if (t.reducible_from) os << " from " << t.reducible_from->to_string();
    os << "\n";
  }
  emit(inv, out, os.str(), json{{"d", d}, {"p", p}, {"parity", inv.parity}, {"targets", arr}});
  return kExitOk;
}

int run_group(const Invocation& inv, std::ostream& out) {
  const int d = *inv.d;
  std::vector<Perm> gens;
  for (const auto& g : inv.gens) gens.push_back(Perm::parse(g, d));
  const PermGroup g(d, gens);
  json j;
  j["degree"] = d;
  j["order"] = g.order().str();
  j["transitive"] = g.is_transitive();
  j["primitive"] = g.is_transitive() && g.is_primitive();
  j["class"] = to_string(classify_alt_sym(g));
  json orbs = json::array();
  for (const auto& o : g.orbits()) {
    json a = json::array();
    for (int x : o) a.push_back(x + 1);
    orbs.push_back(a);
  }
  j["orbits"] = orbs;
  std::ostringstream os;
  os << "degree: " << d << "\n"
     << "order: " << g.order().str() << "\n"
     << "transitive: " << (j["transitive"].get<bool>() ? "yes" : "no") << "\n"
     << "primitive: " << (j["primitive"].get<bool>() ? "yes" : "no") << "\n"
     << "class: " << j["class"].get<std::string>() << "\n";
  if (!inv.primes.empty()) {
    const int p = inv.primes.front();
    const auto pp = p_part_subgroup(g, p);
    j["p"] = p;
    j["p_generated_order"] = pp.subgroup.order().str();
    j["p_generated_certainty"] = to_string(pp.certainty);
    os << "order of the subgroup generated by " << p << "-elements: " << pp.subgroup.order().str() << " [" << to_string(pp.certainty) << "]\n";
  }
  emit(inv, out, os.str(), j);
  return kExitOk;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SideConditionViolated:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::ScopeExceeded:
    case ErrorKind::DegreeBudgetExceeded:
      return kExitScope;
    case ErrorKind::AssumptionFails:
    case ErrorKind::InvariantViolation:
      return kExitFail;
    default:
      return kExitUsage;
  }
}

}  // namespace

Invocation parse_args(int argc, const char* const* argv) {
  Invocation inv;
  CLI::App app{"Inertia computations for covers of the projective line in characteristic p", "ilab"};
  app.require_subcommand(1, 1);
  app.allow_extras(false);

  auto odd_prime = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          std::size_t used = 0;
          const long v = std::stol(s, &used);
          if (used == s.size() && v > 2 && v < (1L << 20) && is_prime(v)) return {};
        } catch (const std::exception&) {
        }
        return "not an odd prime: " + s;
      },
      "ODD_PRIME");
  std::string n_text, m_text, field = "Fp";
  std::optional<int> r_count;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--json", inv.json_path, "write JSON to FILE (atomic)");
    sub->add_option("--format", inv.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* analyze = app.add_subcommand("analyze-cover", "ramification and Galois analysis of a cover spec");
  analyze->add_option("--spec", inv.spec_path, "cover spec file")->required()->check(CLI::ExistingFile);
  add_output(analyze);

  auto* search = app.add_subcommand("search-witness", "exhaustive normalized witness search");
  search->add_option("--p", inv.primes, "characteristic")->required()->check(odd_prime)->expected(1);
  search->add_option("--t", inv.t, "d - p")->required()->check(CLI::PositiveNumber);
  search->add_option("--s", inv.s, "number of points over 0, when --n is omitted")->check(CLI::PositiveNumber);
  search->add_option("--r", r_count, "number of points over infinity (must match --m)")->check(CLI::PositiveNumber);
  search->add_option("--n", n_text, "multiplicities over 0, comma separated");
  search->add_option("--m", m_text, "multiplicities over infinity, comma separated")->required();
  search->add_option("--field", field, "coordinate field")->check(CLI::IsMember({"Fp", "Fp2"}));
  search->add_option("--budget", inv.budget, "maximum tuples examined")->check(CLI::PositiveNumber);
  add_output(search);

  auto* verify = app.add_subcommand("verify-theorem", "replay a theorem and emit its certificate");
  verify->add_option("--id", inv.ids, "theorem id (repeatable)")->required();
  verify->add_option("--p", inv.primes, "characteristic (repeatable)")->required()->check(odd_prime);
  add_output(verify);

  auto* targets = app.add_subcommand("enumerate-targets", "inertia shapes up to the Kummer and cycle-type equivalence");
  targets->add_option("--d", inv.d, "degree")->required()->check(CLI::Range(2, 128));
  targets->add_option("--p", inv.primes, "characteristic")->required()->check(odd_prime)->expected(1);
  targets->add_option("--parity", inv.parity, "even or odd shapes")->check(CLI::IsMember({"even", "odd"}));
  add_output(targets);

  auto* group = app.add_subcommand("group", "order, transitivity, primitivity and Alt/Sym class");
  group->add_option("--d", inv.d, "degree")->required()->check(CLI::Range(1, 128));
  group->add_option("--gen", inv.gens, "generator in cycle notation, 1-based (repeatable)")->required();
  group->add_option("--p", inv.primes, "also compute the subgroup generated by p-elements")->check(odd_prime)->expected(1);
  add_output(group);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    inv.help = true;
    inv.help_text = app.help();
    return inv;
  } catch (const CLI::CallForAllHelp&) {
    inv.help = true;
    inv.help_text = app.help("", CLI::AppFormatMode::All);
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  inv.subcommand = app.get_subcommands().front()->get_name();
  inv.field_degree = field == "Fp2" ? 2 : 1;
  if (!n_text.empty()) inv.n = parse_list(n_text);
  if (!m_text.empty()) inv.m = parse_list(m_text);
  if (inv.subcommand == "search-witness") {
    if (inv.n.empty() && !inv.s) throw UsageError("search-witness needs --n or --s");
    if (!inv.n.empty() && inv.s && *inv.s != static_cast<int>(inv.n.size())) throw UsageError("--s disagrees with --n");
    if (r_count && *r_count != static_cast<int>(inv.m.size())) throw UsageError("--r disagrees with --m");
    const int p = inv.primes.front();
    int msum = 0, nsum = 0;
    for (int x : inv.m) msum += x;
    for (int x : inv.n) nsum += x;
    for (int x : inv.n) {
      if (x % p == 0) throw UsageError("--n entries must be prime to p");
    }
    for (int x : inv.m) {
      if (x % p == 0) throw UsageError("--m entries must be prime to p");
    }
    if (msum != *inv.t) throw UsageError("--m must sum to --t");
    if (!inv.n.empty() && nsum != p + *inv.t) throw UsageError("--n must sum to p + t");
  }
  return inv;
}

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  if (inv.help) {
    out << inv.help_text;
    return kExitOk;
  }
  try {
    if (inv.subcommand == "analyze-cover") return run_analyze(inv, out);
    if (inv.subcommand == "search-witness") return run_search(inv, out);
    if (inv.subcommand == "verify-theorem") return run_verify(inv, out);
    if (inv.subcommand == "enumerate-targets") return run_targets(inv, out);
    if (inv.subcommand == "group") return run_group(inv, out);
    err << "unknown subcommand\n";
    return kExitUsage;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    err << json{{"error", to_string(e.kind())}, {"detail", e.detail()}, {"exit", code}}.dump() << "\n";
    return code;
  } catch (const UsageError& e) {
    err << json{{"error", "UsageError"}, {"detail", e.what()}, {"exit", kExitUsage}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << json{{"error", "Internal"}, {"detail", e.what()}, {"exit", kExitFail}}.dump() << "\n";
    return kExitFail;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_args(argc, argv);
  } catch (const UsageError& e) {
    err << json{{"error", "UsageError"}, {"detail", e.what()}, {"exit", kExitUsage}}.dump() << "\n";
    err << "run with --help for the grammar\n";
    return kExitUsage;
  }
  return run(inv, out, err);
}

}  // namespace ilab
