#pragma once

// Configuration, data generation and emission behind the `gupqm` CLI.
//
// Configuration is a flat JSON object whose keys match the long flag names
// (`beta`, `hbar`, `grid-points`, ...). Flag values are merged on top of a
// config file before build_config sees them, so both routes go through the
// same parser. Unknown keys are rejected.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "gupqm/units.hpp"

namespace gupqm::cli {

enum class Command { Spectrum, Sweep, Momentum, Verify };
enum class OutputFormat { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct ContinuousGrid {
  double lo = 0.0;
  double hi = 5.0;
  double step = 0.05;

  std::vector<double> points() const;
};

struct SampleGrid {
  double lo = -5.0;
  double hi = 5.0;
  int count = 101;

  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::Spectrum;
  ModelParams params;  // params.beta is unused; see betas
  std::vector<double> betas;
  std::vector<int> levels;
  ContinuousGrid n_grid;
  std::vector<double> momenta;
  SampleGrid x_grid;
  bool numeric = false;
  int grid_points = 1999;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;
  bool quick = false;
  double perturb_eq13 = 0.0;
};

// All keys accepted in a config file or as flags.
const std::vector<std::string>& known_keys();

// Parses the merged key/value object. Values may be JSON numbers, booleans,
// arrays, or the string syntax used on the command line (e.g. "0,0.5",
// "1:3", "0:5:0.05"). Throws Error(ConfigError) naming the offending key.
RunConfig build_config(Command command, const nlohmann::json& settings);

// Reads a JSON config file; the top level must be an object.
nlohmann::json load_config_file(const std::string& path);

// Overlays `overrides` on `base` key by key.
nlohmann::json merge_settings(nlohmann::json base, const nlohmann::json& overrides);

struct SpectrumRow {
  double n = 0.0;
  double beta = 0.0;
  double e0 = 0.0;
  double shift = 0.0;
  double e_total = 0.0;
  // Present only for `spectrum --numeric`.
  double fd_eigenvalue = 0.0;
  double rel_gap = 0.0;
};

std::vector<SpectrumRow> spectrum_rows(const RunConfig& config);
std::vector<SpectrumRow> sweep_rows(const RunConfig& config);

struct MomentumSample {
  double x = 0.0;
  double re = 0.0;
  double im = 0.0;
  double abs = 0.0;
};

struct MomentumBlock {
  double p = 0.0;
  double k_exact = 0.0;
  double k_pert = 0.0;
  double amplitude = 0.0;
  std::vector<MomentumSample> samples;
};

struct MomentumResult {
  double beta = 0.0;
  std::vector<MomentumBlock> blocks;
  std::vector<std::string> rejected;  // one message per p outside the domain
};

MomentumResult momentum_samples(const RunConfig& config);

// `%.12e`, the fixed float format used by every CSV writer.
std::string format_real(double value);

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows, bool numeric);
void write_sweep_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);
void write_momentum_csv(std::ostream& out, const MomentumResult& result);
nlohmann::json spectrum_json(const RunConfig& config, const std::vector<SpectrumRow>& rows,
                             bool numeric);
nlohmann::json momentum_json(const RunConfig& config, const MomentumResult& result);
nlohmann::json params_json(const RunConfig& config);

// Command entry points. Output goes to `out` unless config.out_path is set.
// Return the process exit code.
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_momentum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gupqm::cli
