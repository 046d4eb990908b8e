#include "gupqm/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "gupqm/box_analytic.hpp"
#include "gupqm/error.hpp"
#include "gupqm/fd_eigensolver.hpp"
#include "gupqm/momentum_states.hpp"
#include "gupqm/verify.hpp"

namespace gupqm::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(std::string_view key, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "'" + std::string(key) + "': " + what);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, const std::string& raw) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    config_error(key, "expected a number, got \"" + raw + "\"");
  }
  return value;
}

int parse_int(std::string_view key, const std::string& raw) {
  const std::string s = trim(raw);
  int value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    config_error(key, "expected an integer, got \"" + raw + "\"");
  }
  return value;
}

double to_double(std::string_view key, const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_double(key, v.get<std::string>());
  config_error(key, "expected a number");
}

int to_int(std::string_view key, const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) return parse_int(key, v.get<std::string>());
  config_error(key, "expected an integer");
}

bool to_bool(std::string_view key, const json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  config_error(key, "expected true or false");
}

std::string to_string_value(std::string_view key, const json& v) {
  if (!v.is_string()) config_error(key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> to_double_list(std::string_view key, const json& v) {
  std::vector<double> values;
  if (v.is_array()) {
    for (const auto& item : v) values.push_back(to_double(key, item));
  } else if (v.is_string()) {
    for (const auto& part : split(v.get<std::string>(), ',')) {
      values.push_back(parse_double(key, part));
    }
  } else {
    values.push_back(to_double(key, v));
  }
  if (values.empty()) config_error(key, "empty list");
  return values;
}

// "3", "1:5" (inclusive), "1,2,7", or a JSON integer / array.
std::vector<int> to_levels(std::string_view key, const json& v) {
  std::vector<int> levels;
  if (v.is_array()) {
    for (const auto& item : v) levels.push_back(to_int(key, item));
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find(':') != std::string::npos) {
      const auto parts = split(s, ':');
      if (parts.size() != 2) config_error(key, "range must be lo:hi");
      const int lo = parse_int(key, parts[0]);
      const int hi = parse_int(key, parts[1]);
      if (hi < lo) config_error(key, "range must be ascending");
      if (hi - lo > 100000) config_error(key, "range too long");
      for (int n = lo; n <= hi; ++n) levels.push_back(n);
    } else {
      for (const auto& part : split(s, ',')) levels.push_back(parse_int(key, part));
    }
  } else {
    levels.push_back(to_int(key, v));
  }
  if (levels.empty()) config_error(key, "no quantum numbers given");
  for (int n : levels) {
    if (n < 1) config_error(key, "quantum numbers must be >= 1 (got " + std::to_string(n) + ")");
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::vector<std::string> grid_parts(std::string_view key, const json& v, const char* form) {
  std::vector<std::string> parts;
  if (v.is_string()) {
    parts = split(v.get<std::string>(), ':');
  } else if (v.is_array()) {
    for (const auto& item : v) parts.push_back(item.is_string() ? item.get<std::string>() : item.dump());
  }
  if (parts.size() != 3) config_error(key, std::string("expected ") + form);
  return parts;
}

ContinuousGrid to_continuous_grid(std::string_view key, const json& v) {
  const auto parts = grid_parts(key, v, "lo:hi:step");
  ContinuousGrid g{parse_double(key, parts[0]), parse_double(key, parts[1]),
                   parse_double(key, parts[2])};
  if (g.lo < 0.0) config_error(key, "continuous n must be >= 0");
  if (g.hi < g.lo) config_error(key, "grid must be ascending");
  if (!(g.step > 0.0)) config_error(key, "step must be positive");
  if ((g.hi - g.lo) / g.step > 1e7) config_error(key, "grid too fine");
  return g;
}

SampleGrid to_sample_grid(std::string_view key, const json& v) {
  const auto parts = grid_parts(key, v, "lo:hi:count");
  SampleGrid g{parse_double(key, parts[0]), parse_double(key, parts[1]), parse_int(key, parts[2])};
  if (g.count < 1) config_error(key, "count must be >= 1");
  if (g.hi < g.lo) config_error(key, "grid must be ascending");
  return g;
}

std::vector<double> default_betas(Command command) {
  switch (command) {
    case Command::Momentum: return {0.01};
    default: return {0.0, 0.25, 0.5, 0.75, 1.0};
  }
}

// Writes `text` to the configured destination.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
  if (!file) config_error("out", "cannot open " + config.out_path + " for writing");
  file << text;
  if (!file) config_error("out", "write to " + config.out_path + " failed");
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConvergenceFailure ? kExitVerifyFailed : kExitUsage;
  }
}

}  // namespace

std::vector<double> ContinuousGrid::points() const {
  const auto intervals = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(intervals) + 1);
  for (long i = 0; i <= intervals; ++i) pts.push_back(lo + static_cast<double>(i) * step);
  return pts;
}

std::vector<double> SampleGrid::points() const {
  if (count == 1) return {lo};
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(lo + (hi - lo) * i / (count - 1));
  return pts;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "beta", "hbar", "mass", "width", "alpha", "planck-length", "units", "out",
      "format", "n", "n-grid", "p", "x-grid", "numeric", "grid-points", "quick",
      "perturb-eq13"};
  return keys;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("config", "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    config_error("config", std::string("invalid JSON in ") + path + ": " + e.what());
  }
  if (!j.is_object()) config_error("config", "top level of " + path + " must be an object");
  return j;
}

json merge_settings(json base, const json& overrides) {
  if (base.is_null()) base = json::object();
  for (const auto& [key, value] : overrides.items()) base[key] = value;
  return base;
}

RunConfig build_config(Command command, const json& settings) {
  if (!settings.is_null() && !settings.is_object()) {
    throw Error(ErrorCode::ConfigError, "settings must be a JSON object");
  }
  const auto& keys = known_keys();
  for (const auto& [key, value] : settings.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      config_error(key, "unknown key");
    }
  }
  auto has = [&](const char* key) { return settings.is_object() && settings.contains(key); };

  RunConfig c;
  c.command = command;
  if (has("units")) {
    const auto units = to_string_value("units", settings["units"]);
    if (units == "natural") {
      c.params.units = UnitConvention::Natural;
    } else if (units == "si-like") {
      c.params.units = UnitConvention::General;
    } else {
      config_error("units", "expected natural or si-like");
    }
  }
  const bool natural = c.params.units == UnitConvention::Natural;
  auto unit_constant = [&](const char* key, double& field) {
    if (!has(key)) return;
    field = to_double(key, settings[key]);
    if (natural && field != 1.0) {
      config_error(key, "natural units fix this to 1; pass --units si-like to change it");
    }
  };
  unit_constant("hbar", c.params.hbar);
  unit_constant("mass", c.params.mass);
  unit_constant("width", c.params.box_width);
  if (has("alpha")) c.params.alpha = to_double("alpha", settings["alpha"]);
  if (has("planck-length")) c.params.planck_length = to_double("planck-length", settings["planck-length"]);
  try {
    c.params = validate_params(c.params);
  } catch (const Error& e) {
    config_error("params", e.what());
  }

  c.betas = has("beta") ? to_double_list("beta", settings["beta"]) : default_betas(command);
  for (double b : c.betas) {
    try {
      with_beta(c.params, b);
    } catch (const Error& e) {
      config_error("beta", e.what());
    }
  }
  std::sort(c.betas.begin(), c.betas.end());
  c.betas.erase(std::unique(c.betas.begin(), c.betas.end()), c.betas.end());
  if (command == Command::Momentum && c.betas.size() != 1) {
    config_error("beta", "momentum takes a single beta");
  }

  c.levels = has("n") ? to_levels("n", settings["n"]) : std::vector<int>{1, 2, 3, 4, 5};
  if (has("n-grid")) c.n_grid = to_continuous_grid("n-grid", settings["n-grid"]);
  c.momenta = has("p") ? to_double_list("p", settings["p"]) : std::vector<double>{1.0};
  if (has("x-grid")) c.x_grid = to_sample_grid("x-grid", settings["x-grid"]);
  if (has("numeric")) c.numeric = to_bool("numeric", settings["numeric"]);
  if (has("grid-points")) {
    c.grid_points = to_int("grid-points", settings["grid-points"]);
    if (c.grid_points < fd::kMinGridPoints) {
      config_error("grid-points", "must be >= " + std::to_string(fd::kMinGridPoints));
    }
  }
  if (c.numeric && c.levels.back() > c.grid_points / 4) {
    config_error("n", "largest level exceeds grid-points / 4 for --numeric");
  }
  if (has("format")) {
    const auto f = to_string_value("format", settings["format"]);
    if (f == "csv") {
      c.format = OutputFormat::Csv;
    } else if (f == "json") {
      c.format = OutputFormat::Json;
    } else {
      config_error("format", "expected csv or json");
    }
  }
  if (has("out")) c.out_path = to_string_value("out", settings["out"]);
  if (has("quick")) c.quick = to_bool("quick", settings["quick"]);
  if (has("perturb-eq13")) c.perturb_eq13 = to_double("perturb-eq13", settings["perturb-eq13"]);
  return c;
}

std::vector<SpectrumRow> spectrum_rows(const RunConfig& config) {
  std::vector<SpectrumRow> rows;
  for (double beta : config.betas) {
    const auto params = with_beta(config.params, beta);
    std::vector<double> numeric;
    if (config.numeric) {
      const auto problem = fd::make_problem(params, config.grid_points);
      numeric = fd::solve_lowest(problem, config.levels.back()).eigenvalues;
    }
    for (int n : config.levels) {
      const auto level = box::energy_level(n, params);
      SpectrumRow row{static_cast<double>(n), beta, level.e0, level.shift, level.e_total};
      if (config.numeric) {
        row.fd_eigenvalue = numeric[static_cast<std::size_t>(n - 1)];
        row.rel_gap = std::abs(row.fd_eigenvalue - row.e_total) / row.e_total;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SpectrumRow> sweep_rows(const RunConfig& config) {
  const auto ns = config.n_grid.points();
  std::vector<SpectrumRow> rows;
  rows.reserve(ns.size() * config.betas.size());
  for (double beta : config.betas) {
    const auto params = with_beta(config.params, beta);
    for (double n : ns) {
      SpectrumRow row;
      row.n = n;
      row.beta = beta;
      row.e0 = box::energy_unperturbed_continuous(n, params);
      row.shift = box::energy_shift_continuous(n, params);
      row.e_total = row.e0 + row.shift;
      rows.push_back(row);
    }
  }
  return rows;
}

MomentumResult momentum_samples(const RunConfig& config) {
  MomentumResult result;
  result.beta = config.betas.front();
  const auto params = with_beta(config.params, result.beta);
  const auto xs = config.x_grid.points();
  for (double p : config.momenta) {
    momentum::MomentumEigenfunction u;
    try {
      u = momentum::make_eigenfunction(p, params);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutsideFirstOrderDomain) throw;
      result.rejected.emplace_back(e.what());
      continue;
    }
    MomentumBlock block;
    block.p = p;
    block.k_exact = momentum::dispersion_solve(p, params).k_exact;
    block.k_pert = u.k_pert;
    block.amplitude = u.amplitude;
    block.samples.reserve(xs.size());
    for (double x : xs) {
      const auto value = u(x);
      block.samples.push_back({x, value.real(), value.imag(), std::abs(value)});
    }
    result.blocks.push_back(std::move(block));
  }
  return result;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", value);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows, bool numeric) {
  out << "n,beta,e0,shift,e_total";
  if (numeric) out << ",fd_eigenvalue,rel_gap";
  out << "\n";
  for (const auto& r : rows) {
    out << static_cast<long>(r.n) << ',' << format_real(r.beta) << ',' << format_real(r.e0) << ','
        << format_real(r.shift) << ',' << format_real(r.e_total);
    if (numeric) out << ',' << format_real(r.fd_eigenvalue) << ',' << format_real(r.rel_gap);
    out << "\n";
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "n,beta,e0,shift,e_total\n";
  for (const auto& r : rows) {
    out << format_real(r.n) << ',' << format_real(r.beta) << ',' << format_real(r.e0) << ','
        << format_real(r.shift) << ',' << format_real(r.e_total) << "\n";
  }
}

void write_momentum_csv(std::ostream& out, const MomentumResult& result) {
  for (const auto& b : result.blocks) {
    out << "# beta=" << format_real(result.beta) << ",p=" << format_real(b.p)
        << ",k_exact=" << format_real(b.k_exact) << ",k_pert=" << format_real(b.k_pert)
        << ",amplitude=" << format_real(b.amplitude) << "\n";
  }
  out << "p,x,re_u,im_u,abs_u\n";
  for (const auto& b : result.blocks) {
    for (const auto& s : b.samples) {
      out << format_real(b.p) << ',' << format_real(s.x) << ',' << format_real(s.re) << ','
          << format_real(s.im) << ',' << format_real(s.abs) << "\n";
    }
  }
}

json params_json(const RunConfig& config) {
  const auto& p = config.params;
  return json{{"hbar", p.hbar},
              {"mass", p.mass},
              {"width", p.box_width},
              {"alpha", p.alpha},
              {"planck-length", p.planck_length},
              {"units", std::string(to_string(p.units))},
              {"beta", config.betas}};
}

json spectrum_json(const RunConfig& config, const std::vector<SpectrumRow>& rows, bool numeric) {
  json out_rows = json::array();
  for (const auto& r : rows) {
    json row{{"n", r.n}, {"beta", r.beta}, {"e0", r.e0}, {"shift", r.shift}, {"e_total", r.e_total}};
    if (numeric) {
      row["fd_eigenvalue"] = r.fd_eigenvalue;
      row["rel_gap"] = r.rel_gap;
    }
    out_rows.push_back(std::move(row));
  }
  json params = params_json(config);
  if (numeric) params["grid-points"] = config.grid_points;
  return json{{"params", std::move(params)}, {"rows", std::move(out_rows)}};
}

json momentum_json(const RunConfig& config, const MomentumResult& result) {
  json states = json::array();
  for (const auto& b : result.blocks) {
    json samples = json::array();
    for (const auto& s : b.samples) {
      samples.push_back({{"x", s.x}, {"re", s.re}, {"im", s.im}, {"abs", s.abs}});
    }
    states.push_back({{"p", b.p},
                      {"k_exact", b.k_exact},
                      {"k_pert", b.k_pert},
                      {"amplitude", b.amplitude},
                      {"samples", std::move(samples)}});
  }
  return json{{"params", params_json(config)},
              {"states", std::move(states)},
              {"rejected", result.rejected}};
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = spectrum_rows(config);
    std::ostringstream text;
    if (config.format == OutputFormat::Json) {
      text << spectrum_json(config, rows, config.numeric).dump(2) << "\n";
    } else {
      write_spectrum_csv(text, rows, config.numeric);
    }
    emit(config, out, text.str());
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = sweep_rows(config);
    std::ostringstream text;
    if (config.format == OutputFormat::Json) {
      text << spectrum_json(config, rows, false).dump(2) << "\n";
    } else {
      write_sweep_csv(text, rows);
    }
    emit(config, out, text.str());
    return kExitOk;
  });
}

int cmd_momentum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto result = momentum_samples(config);
    for (const auto& msg : result.rejected) err << "error: " << msg << "\n";
    if (result.blocks.empty()) return kExitUsage;
    std::ostringstream text;
    if (config.format == OutputFormat::Json) {
      text << momentum_json(config, result).dump(2) << "\n";
    } else {
      write_momentum_csv(text, result);
    }
    emit(config, out, text.str());
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    verify::VerifyOptions options;
    options.params = config.params;
    options.quick = config.quick;
    options.perturb_eq13 = config.perturb_eq13;
    const auto checks = verify::run_checks(options);

    bool all_passed = true;
    std::ostringstream text;
    if (config.format == OutputFormat::Json) {
      json report = json::array();
      for (const auto& c : checks) {
        all_passed = all_passed && c.passed;
        report.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"worst", c.worst},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
      }
      text << json{{"checks", report}, {"passed", all_passed}}.dump(2) << "\n";
    } else {
      for (const auto& c : checks) {
        all_passed = all_passed && c.passed;
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-28s worst=%.3e  tol=%.3e", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.worst, c.tolerance);
        text << line;
        if (!c.detail.empty()) text << "  " << c.detail;
        text << "\n";
      }
      text << (all_passed ? "verify: all checks passed\n" : "verify: FAILED\n");
    }
    emit(config, out, text.str());
    return all_passed ? kExitOk : kExitVerifyFailed;
  });
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::Spectrum: return cmd_spectrum(config, out, err);
    case Command::Sweep: return cmd_sweep(config, out, err);
    case Command::Momentum: return cmd_momentum(config, out, err);
    case Command::Verify: return cmd_verify(config, out, err);
  }
  return kExitUsage;
}

}  // namespace gupqm::cli
