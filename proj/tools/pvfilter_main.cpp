// pvfilter command-line tool.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pvfilter/commands.hpp"
#include "pvfilter/errors.hpp"

namespace {

const char* const kCommands[][2] = {
    {"decompose", "partial-fraction residues and sum rules of the mass ladder"},
    {"prop", "time-domain propagator table on the tau grid (CSV)"},
    {"respond", "oscillator response function against the Kubo commutator (CSV)"},
    {"born", "Born series of the vacuum amplitude against the exact evolution (CSV)"},
    {"count", "superficial degree of divergence and minimal regulator counts"},
    {"dirac-verify", "Dirac algebra checks of the regularised fermion filter"},
    {"verify", "full invariant suite"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regulator-ladder propagators, toy filter and power counting"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::vector<std::string> settings;
  pvfilter::CommandOptions options;
  double tol = 0.0;

  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--out", out_path, "write data here instead of stdout");
    sub->add_option("--set", settings, "override one config key, KEY=VALUE");
    sub->add_option("--tol", tol, "tolerance override");
    if (std::string(name) == "prop") {
      sub->add_flag("--oracle", options.oracle, "cross-check against contour quadrature");
    }
    if (std::string(name) == "verify") {
      sub->add_option("--only", options.only, "run a single module");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pvfilter::kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--tol") > 0) options.tol = tol;

  pvfilter::RunConfig config;
  try {
    if (!config_path.empty()) config = pvfilter::load_config(config_path);
    for (const std::string& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw pvfilter::ConfigError("--set expects KEY=VALUE");
      pvfilter::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
  } catch (const pvfilter::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pvfilter::kExitInputError;
  }

  std::ostringstream buffer;
  const int code = pvfilter::run_command(command, config, options, buffer, std::cerr);
  if (out_path.empty()) {
    std::cout << buffer.str() << std::flush;
    return code;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file || !(file << buffer.str())) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return pvfilter::kExitInputError;
  }
  return code;
}
