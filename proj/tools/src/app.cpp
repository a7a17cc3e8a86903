#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "hlp_cli/app.hpp"
#include "hlp_cli/spec_file.hpp"

namespace hlp::cli {

namespace {

struct Flags {
  bool p = false, q = false, r = false, restarts = false, samples = false, t = false;
};

Flags flags_for(const std::string& command) {
  if (command == "check-jordan") return {.samples = true};
  if (command == "norm" || command == "classical") return {.p = true, .q = true, .restarts = true};
  if (command == "classify") return {.p = true, .q = true};
  if (command == "change-of-weights") return {.p = true, .q = true, .r = true, .restarts = true};
  return {.t = true};
}

const char* describe(const std::string& command) {
  if (command == "check-jordan") return "verify that the morphism section is a Jordan *-morphism";
  if (command == "norm") return "estimate the L^p -> L^q norm of the composition operator";
  if (command == "classify") return "decide whether a superoperator matrix is a composition operator";
  if (command == "change-of-weights") return "bound and measure the change of weights weight1 -> weight2";
  if (command == "classical") return "composition operator between finite measure spaces";
  return "modular group, centralizer and weight commutation";
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composition operators on finite-dimensional Haagerup L^p spaces", "hlp"};
  app.require_subcommand(1);
  Options options;
  std::string format = "human";
  std::optional<std::string> p, q, r, out_path;

  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("spec", options.spec_path, "spec file (JSON)")->required();
    const Flags f = flags_for(name);
    if (f.p) sub->add_option("--p", p, "source exponent: decimal or inf");
    if (f.q) sub->add_option("--q", q, "target exponent: decimal or inf");
    if (f.r) sub->add_option("--r", r, "also sweep exponent pairs with p/q equal to this ratio");
    if (f.restarts) sub->add_option("--restarts", options.restarts, "norm estimator restarts")->capture_default_str();
    if (f.samples) sub->add_option("--samples", options.samples, "random probes")->capture_default_str();
    if (f.t) {
      sub->add_option("--t", options.t, "modular times, comma separated")->delimiter(',')->capture_default_str();
    }
    sub->add_option("--seed", options.seed, "random seed")->capture_default_str();
    sub->add_option("--out", out_path, "write the report to this file");
    sub->add_option("--format", format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  options.command = app.get_subcommands().front()->get_name();
  options.p = p;
  options.q = q;
  options.r = r;
  options.out = out_path;
  options.format = format == "machine" ? Format::Machine : Format::Human;

  std::string text;
  try {
    text = read_file(options.spec_path);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const Outcome outcome = run(options, text);
  for (const auto& w : outcome.report["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
  if (outcome.report.contains("error")) err << "error: " << outcome.report["error"]["message"].get<std::string>() << '\n';

  const std::string rendered = render(outcome.report, options.format);
  if (options.out) {
    std::ofstream file(*options.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *options.out << '\n';
      return kExitInput;
    }
    file << rendered;
  } else {
    out << rendered;
  }
  return outcome.exit_code;
}

}  // namespace hlp::cli
