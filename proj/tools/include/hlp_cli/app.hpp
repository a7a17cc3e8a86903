#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hlp::cli {

using Report = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitRefused = 2;

enum class Format { Human, Machine };

/// Flags of one invocation. Exponent flags stay textual so they parse
/// exactly; unset ones fall back to the spec file's exponents section.
struct Options {
  std::string command;
  std::string spec_path;
  std::optional<std::string> p;
  std::optional<std::string> q;
  std::optional<std::string> r;
  int restarts = 16;
  std::uint64_t seed = 0;
  int samples = 20;
  std::vector<double> t{0.0, 0.5, 1.0};
  std::optional<std::string> out;
  Format format = Format::Human;
};

struct Outcome {
  int exit_code = kExitOk;
  Report report;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-jordan",      "norm",      "classify",
                                              "change-of-weights", "classical", "modular"};
  return names;
}

/// Runs a command on the given spec text. Never throws for bad input: parse
/// and validation failures become exit code 1, refused mathematics exit code 2.
Outcome run(const Options& options, const std::string& spec_text);

/// The report as printed: indented JSON (machine) or labelled lines (human).
std::string render(const Report& report, Format format);

/// A copy of the report without the wall-time field.
Report without_wall_time(const Report& report);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

/// Full command-line entry point (argument parsing, file IO, output).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hlp::cli
