#include "acasimir/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include "acasimir/modes.hpp"
#include "acasimir/pressure.hpp"
#include "acasimir/run_config.hpp"

namespace acasimir {
namespace {

namespace fs = std::filesystem;

std::string csv_warnings(const std::vector<std::string>& warnings) {
  if (warnings.empty()) return {};
  std::string joined;
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    if (i) joined += "; ";
    joined += warnings[i];
  }
  std::string quoted = "\"";
  for (char ch : joined) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string rows_csv(const std::string& header, const SweepResult& sweep) {
  std::ostringstream os;
  os << header << "\n";
  for (const auto& row : sweep.rows)
    os << format_double(row.separation) << "," << format_double(row.value) << ","
       << format_double(row.error_estimate) << "," << to_string(row.method) << ","
       << csv_warnings(row.warnings) << "\n";
  for (const auto& change : sweep.sign_changes)
    os << "# sign change between L_m=" << format_double(change.separation_before)
       << " and L_m=" << format_double(change.separation_after) << "\n";
  return os.str();
}

SweepResult single_row(double L, ForceResult r) {
  SweepResult s;
  s.rows.push_back({L, r.value, r.error_estimate, r.method, std::move(r.warnings)});
  return s;
}

bool both_perfect(const RunConfig& c) {
  return std::holds_alternative<PerfectReflector>(c.refl_a.spec) &&
         std::holds_alternative<PerfectReflector>(c.refl_b.spec);
}

double require_separation(const RunConfig& c, const std::string& command) {
  if (!c.separation)
    throw ConfigError("[cavity] separation: required by '" + command + "' (or add a [sweep] section)");
  return *c.separation;
}

CavityConfig cavity_of(const RunConfig& c, double L) { return {L, c.refl_a.spec, c.refl_b.spec}; }

// Method checks that depend only on the configuration.
Method resolve_force_method(const RunConfig& c) {
  const Method m = c.method.value_or(both_perfect(c) ? Method::ModeSum : Method::Adaptive);
  if (m == Method::ModeSum && !both_perfect(c))
    throw ConfigError("[run] method: mode-sum requires refl_a = perfect and refl_b = perfect");
  return m;
}

void require_adaptive(const RunConfig& c, const std::string& command) {
  if (c.method && *c.method != Method::Adaptive)
    throw ConfigError("[run] method: '" + command + "' supports only adaptive");
}

// Applicability checks run before a sweep so that they fail the whole run.
void preflight(const RunConfig& c, Method method, bool needs_strict) {
  const auto bound = reflectivity_product_bound(c.refl_a.spec, c.refl_b.spec, c.band.omega_lo, c.band.omega_hi);
  if (method == Method::Series) {
    if (!bound.real_valued) throw Error(ErrorKind::SeriesNotApplicable, "series method needs real reflectivities");
    if (!(bound.sup_bound < 1.0))
      throw Error(ErrorKind::SeriesNotApplicable, "series method needs sup |r_a r_b| < 1 in band");
  }
  if (needs_strict && !(bound.sup_bound < 1.0))
    throw Error(ErrorKind::NotStrictlyPassive, "needs sup |r_a r_b| < 1 across the band");
}

std::string run_force(const RunConfig& c) {
  const Method method = resolve_force_method(c);
  const double L = require_separation(c, "force");
  const std::string header = "L_m,force_Pa,error_Pa,method,warnings";
  if (method == Method::ModeSum) return rows_csv(header, single_row(L, casimir_force_perfect(c.band, L)));
  return rows_csv(header, single_row(L, casimir_force(c.band, cavity_of(c, L), method, c.quadrature)));
}

std::string run_sweep(const RunConfig& c) {
  const Method method = resolve_force_method(c);
  if (!c.sweep) throw ConfigError("[sweep]: section required by 'sweep'");
  if (method != Method::ModeSum) preflight(c, method, false);
  const auto Ls = c.sweep->values();
  return rows_csv("L_m,force_Pa,error_Pa,method,warnings",
                  force_sweep(c.band, cavity_of(c, Ls.front()), Ls, method, c.quadrature));
}

std::string run_energy(const RunConfig& c) {
  require_adaptive(c, "energy");
  const std::string header = "L_m,energy_J_per_m2,error_J_per_m2,method,warnings";
  if (!c.sweep) {
    const double L = require_separation(c, "energy");
    return rows_csv(header, single_row(L, free_energy(c.band, cavity_of(c, L), c.quadrature)));
  }
  preflight(c, Method::Adaptive, true);
  const auto Ls = c.sweep->values();
  return rows_csv(header, energy_sweep(c.band, cavity_of(c, Ls.front()), Ls, c.quadrature));
}

std::string run_sphere_plane(const RunConfig& c) {
  require_adaptive(c, "sphere-plane");
  if (!c.radius) throw ConfigError("[sphere] radius: required by 'sphere-plane'");
  const std::string header = "L_m,force_N,error_N,method,warnings";
  SpherePlaneConfig sp{*c.radius, 0.0, c.refl_a.spec, c.refl_b.spec};
  if (!c.sweep) {
    sp.closest_gap = require_separation(c, "sphere-plane");
    return rows_csv(header, single_row(sp.closest_gap, sphere_plane_force(c.band, sp, c.quadrature)));
  }
  preflight(c, Method::Adaptive, true);
  const auto Ls = c.sweep->values();
  sp.closest_gap = Ls.front();
  return rows_csv(header, sphere_plane_sweep(c.band, sp, Ls, c.quadrature));
}

std::string run_dos(const RunConfig& c) {
  if (!c.dos) throw ConfigError("[dos]: section required by 'dos'");
  const double L = require_separation(c, "dos");
  std::ostringstream os;
  os << "k_z_rad_per_m,density\n";
  // Normal incidence: reflectivities sampled at omega = c k_z.
  for (double k : c.dos->values()) {
    const double omega = c.band.sound_speed * k;
    const double d = mode_density_closed(k, L, eval_reflectivity(c.refl_a.spec, omega),
                                         eval_reflectivity(c.refl_b.spec, omega));
    os << format_double(k) << "," << format_double(d) << "\n";
  }
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acoustic Casimir pressure between plates under band-limited noise"};
  app.name("acasimir");
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::string out;
    std::string method;
    std::vector<std::string> overrides;
  } opts;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"force", "Casimir pressure at the configured separation"},
      {"sweep", "Casimir pressure over the [sweep] separations"},
      {"dos", "density of modes over the [dos] k_z scan"},
      {"energy", "interaction energy per area (single point or [sweep])"},
      {"sphere-plane", "proximity sphere-plate force (single point or [sweep])"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "run configuration file")->required();
    sub->add_option("--out", opts.out, "output CSV path (overrides run.output)");
    sub->add_option("--method", opts.method, "adaptive | series | mode-sum");
    sub->add_option("--override", opts.overrides, "section.key=value, repeatable");
  }

  std::vector<const char*> argv{"acasimir"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "acasimir: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::vector<std::string> overrides = opts.overrides;
  if (!opts.method.empty()) overrides.push_back("run.method=" + opts.method);
  if (!opts.out.empty()) overrides.push_back("run.output=" + fs::absolute(opts.out).string());

  RunConfig config;
  std::string csv;
  try {
    config = load_run_config(opts.config, overrides);
    if (!config.output) throw ConfigError("[run] output: no output path (use --out or run.output)");
    if (command == "force") csv = run_force(config);
    else if (command == "sweep") csv = run_sweep(config);
    else if (command == "dos") csv = run_dos(config);
    else if (command == "energy") csv = run_energy(config);
    else csv = run_sphere_plane(config);
  } catch (const ConfigError& e) {
    err << "acasimir: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "acasimir: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitCompute;
  }

  try {
    const fs::path path = *config.output;
    write_atomically(path, csv);
    fs::path sidecar = path;
    sidecar += ".config";
    write_atomically(sidecar, echo_run_config(config));
  } catch (const std::exception& e) {
    err << "acasimir: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitOk;
}

}  // namespace acasimir
