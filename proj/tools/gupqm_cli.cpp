// gupqm: spectra, sweep data and momentum eigenfunctions for minimal-length
// quantum mechanics, plus the self-verification suite.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gupqm/cli_io.hpp"
#include "gupqm/error.hpp"
#include "json.hpp"

namespace {

using gupqm::cli::Command;

struct Flags {
  std::optional<std::string> config_path;
  std::map<std::string, std::optional<std::string>> values;
  bool numeric = false;
  bool quick = false;
};

void add_value(CLI::App* app, Flags& flags, const std::string& key, const std::string& help) {
  app->add_option("--" + key, flags.values[key], help);
}

void add_shared(CLI::App* app, Flags& flags) {
  app->add_option("--config", flags.config_path, "JSON config file (flags override it)");
  add_value(app, flags, "beta", "deformation parameter(s), comma separated");
  add_value(app, flags, "hbar", "reduced Planck constant (si-like units only)");
  add_value(app, flags, "mass", "particle mass (si-like units only)");
  add_value(app, flags, "width", "box width a (si-like units only)");
  add_value(app, flags, "alpha", "GUP coefficient alpha");
  add_value(app, flags, "planck-length", "Planck length l_P");
  add_value(app, flags, "units", "natural | si-like");
  add_value(app, flags, "out", "output path (default: stdout)");
  add_value(app, flags, "format", "csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-length quantum mechanics: box spectrum and momentum eigenfunctions"};
  app.require_subcommand(1);

  Flags flags;
  std::map<CLI::App*, Command> commands;

  auto* spectrum = app.add_subcommand("spectrum", "energy levels E_n = e0 + shift for integer n");
  add_shared(spectrum, flags);
  add_value(spectrum, flags, "n", "quantum numbers: 3, 1:5 or 1,2,7");
  add_value(spectrum, flags, "grid-points", "interior grid points for --numeric");
  spectrum->add_flag("--numeric", flags.numeric, "append finite-difference eigenvalues");
  commands[spectrum] = Command::Spectrum;

  auto* sweep = app.add_subcommand("sweep", "E(n, beta) over a continuous n grid, one curve per beta");
  add_shared(sweep, flags);
  add_value(sweep, flags, "n-grid", "lo:hi:step (default 0:5:0.05)");
  commands[sweep] = Command::Sweep;

  auto* momentum = app.add_subcommand("momentum", "samples of the first-order momentum eigenfunction");
  add_shared(momentum, flags);
  add_value(momentum, flags, "p", "momentum eigenvalue(s), comma separated");
  add_value(momentum, flags, "x-grid", "lo:hi:count (default -5:5:101)");
  commands[momentum] = Command::Momentum;

  auto* verify = app.add_subcommand("verify", "run the self-verification suite");
  add_shared(verify, flags);
  verify->add_flag("--quick", flags.quick, "small finite-difference grids");
  add_value(verify, flags, "perturb-eq13", "test hook: relative error injected into E_n");
  commands[verify] = Command::Verify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gupqm::cli::kExitUsage;
  }

  Command command = Command::Spectrum;
  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) command = cmd;
  }

  try {
    nlohmann::json settings = nlohmann::json::object();
    if (flags.config_path) settings = gupqm::cli::load_config_file(*flags.config_path);
    nlohmann::json overrides = nlohmann::json::object();
    for (const auto& [key, value] : flags.values) {
      if (value) overrides[key] = *value;
    }
    if (flags.numeric) overrides["numeric"] = true;
    if (flags.quick) overrides["quick"] = true;
    settings = gupqm::cli::merge_settings(std::move(settings), overrides);

    const auto config = gupqm::cli::build_config(command, settings);
    return gupqm::cli::run_command(config, std::cout, std::cerr);
  } catch (const gupqm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gupqm::cli::kExitUsage;
  }
}
