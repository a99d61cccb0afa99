#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ilab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitScope = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Invocation {
  std::string subcommand;
  std::vector<std::string> ids;  // verify-theorem
  std::vector<int> primes;       // --p, possibly repeated
  std::optional<int> d;
  std::optional<int> t;
  std::optional<int> s;
  std::vector<int> n;
  std::vector<int> m;
  std::optional<std::string> spec_path;
  std::optional<std::string> json_path;
  std::uint64_t budget = 50'000'000;
  int field_degree = 1;
  std::string format = "text";
  std::string parity = "even";
  std::vector<std::string> gens;  // group: cycle notation
  bool help = false;
  std::string help_text;
};

// Throws UsageError on anything malformed.
Invocation parse_args(int argc, const char* const* argv);
int run(const Invocation& inv, std::ostream& out, std::ostream& err);
// parse_args then run, with every failure mapped to an exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ilab
