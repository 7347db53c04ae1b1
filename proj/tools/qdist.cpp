// qdist: command-line front end for the quadratic distance toolkit.

#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdist/runner.hpp"

namespace {

using qdist::RunConfig;

struct Binding {
  CLI::Option* option;
  std::function<void(RunConfig&)> apply;
};

/// Flags are parsed into a scratch config; after parsing, the effective config is the --config
/// file (or defaults) with every flag that was actually given laid on top.
class Flags {
 public:
  void attach(CLI::App& sub, const std::string& command) {
    auto add = [&](const std::string& name, auto member, const std::string& help) {
      auto* opt = sub.add_option(name, scratch_.*member, help);
      bindings_[command].push_back({opt, [this, member](RunConfig& c) { c.*member = scratch_.*member; }});
      return opt;
    };
    add("--field", &RunConfig::field, "field: p, p^l or p^l:c0,..,cl (verify default: q in {3,5,7,9})");
    add("--form", &RunConfig::form, "euclidean | standard[:eps=k] | matrix:a,b;c,d | form file");
    add("--dim", &RunConfig::dim, "dimension d (verify: largest n)");
    add("--set", &RunConfig::set, "point-set file | random:<size>[..<max>] | sharpness:<kind>[:delta=x]");
    add("--seed", &RunConfig::seed, "master seed");
    add("--out", &RunConfig::out, "report path (default: stdout)");
    add("--format", &RunConfig::format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    add("--threads", &RunConfig::threads, "worker threads");
    add("--budget", &RunConfig::budget, "max character evaluations (q^{2n})");
    add("--r", &RunConfig::r, "ratios: all | comma-separated element indices");
    add("--trials", &RunConfig::trials, "random sets per sweep");
    add("--variety", &RunConfig::variety, "sphere:t | H:a1,..,an | VQr:r | full");
    add("--samples", &RunConfig::samples, "coefficient vectors per (q, n) in verify");
    add("--gcl-sets", &RunConfig::gcl_sets, "random sets per (q, n) for the counting-lemma suite");
    auto* inject = sub.add_flag("--inject-sign-error", scratch_.inject_sign_error, "test mode: negate closed forms");
    inject->group("");
    bindings_[command].push_back({inject, [this](RunConfig& c) { c.inject_sign_error = scratch_.inject_sign_error; }});
    sub.add_option("--config", config_path_, "JSON config, or a report to re-run");
  }

  RunConfig resolve(const std::string& command) const {
    RunConfig cfg;
    if (!config_path_.empty()) cfg = RunConfig::from_text(qdist::detail::read_file(config_path_));
    if (!cfg.command.empty() && cfg.command != command)
      throw qdist::InvalidParameter("config is for '" + cfg.command + "', not '" + command + "'");
    cfg.command = command;
    for (const auto& b : bindings_.at(command))
      if (b.option->count() > 0) b.apply(cfg);
    return cfg;
  }

 private:
  RunConfig scratch_;
  std::string config_path_;
  std::map<std::string, std::vector<Binding>> bindings_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification toolkit for quotient sets of quadratic distance sets over F_q"};
  app.set_version_flag("--version", std::string(qdist::kVersion));
  app.require_subcommand(1);

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "run the exact identity suites"},
      {"count", "W(r), M(r) and w(0) for a point set"},
      {"bounds", "theorem and case-inequality sweep"},
      {"sharpness", "build and check a sharpness construction"},
      {"fourier", "dump the scaled Fourier table of a set or variety"}};
  for (const auto& [name, help] : commands) flags.attach(*app.add_subcommand(name, help), name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qdist::kExitUsage;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    const RunConfig cfg = flags.resolve(command);
    const auto result = qdist::run_command(cfg);
    if (command == "verify") {
      std::cout << result.summary;
      if (!cfg.out.empty()) {
        std::ofstream(cfg.out) << result.report;
      }
    } else {
      std::cerr << result.summary;
      if (cfg.out.empty()) {
        std::cout << result.report;
      } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw qdist::InvalidParameter("cannot write '" + cfg.out + "'");
        file << result.report;
      }
    }
    return result.exit_code;
  } catch (const qdist::ResourceError& e) {
    std::cerr << "error: resource budget exceeded: " << e.what() << '\n';
    return qdist::kExitUsage;
  } catch (const qdist::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return qdist::kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qdist::kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qdist::kExitUsage;
  }
}
