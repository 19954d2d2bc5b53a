// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "acasimir/cli.hpp"
#include "acasimir/modes.hpp"
#include "acasimir/pressure.hpp"
#include "oracles.hpp"

using namespace acasimir;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

const fs::path kSource = ACASIMIR_SOURCE_DIR;

// 5-15 kHz in air at unit spectral intensity; the repository's stand-in band.
NoiseBand standin_band() { return {2.0 * pi * 5000.0, 2.0 * pi * 15000.0, 1.0, 343.0}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Check {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
  void within(double err, double tol, const std::string& what) {
    worst = std::max(worst, err);
    expect(err <= tol, what + " off by " + std::to_string(err));
  }
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "acasimir_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cli(const std::vector<std::string>& args, std::string* err = nullptr) {
  std::ostringstream out, e;
  const int code = run_cli(args, out, e);
  if (err) *err = e.str();
  return code;
}

Check pressure_release_constancy() {
  Check c;
  for (const NoiseBand& b : {standin_band(), NoiseBand{0.0, 2.0 * pi * 2000.0, 3.5, 1480.0}}) {
    const double expect = -pressure_outside(b);
    for (double L = 0.01; L <= 0.1 + 1e-12; L += 0.01) {
      const auto f = casimir_force(b, {L, PerfectReflector{}, PressureRelease{}}, Method::Adaptive);
      c.within(rel(f.value, expect), 1e-6, "L=" + std::to_string(L));
    }
  }
  return c;
}

Check full_band_scaling() {
  Check c;
  const double I = 1.0, sound = 343.0;
  for (double L : {0.02, 0.06, 0.2}) {
    const double k0 = pi / L;
    const NoiseBand b{0.0, 1e4 * k0 * sound, I, sound};
    c.within(rel(casimir_force_perfect(b, L).value * L, -I / 8.0), 1e-3, "L=" + std::to_string(L));
  }
  return c;
}

Check dos_invariants() {
  Check c;
  const double L = 0.05;
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> kz(0.5, 600.0);
  struct Pair {
    Complex r1, r2;
  };
  // One entry per target rho = r1 r2; asymmetric plates where it matters.
  const std::vector<Pair> pairs = {{0.0, 0.7}, {0.5, 0.5}, {0.9, 0.9}, {1.0, -0.5}};
  for (const auto& p : pairs) {
    const std::string tag = "rho=" + std::to_string((p.r1 * p.r2).real());
    const double window_lo = kz(rng);
    const double period = oracle::integrate(
        [&](double k) { return mode_density_closed(k, L, p.r1, p.r2); }, window_lo, window_lo + pi / L, 400);
    c.within(std::abs(period * L - 1.0), 1e-9, tag + " period integral");
    for (int i = 0; i < 5; ++i) {
      const double k = kz(rng);
      const double closed = mode_density_closed(k, L, p.r1, p.r2);
      c.expect(closed > 0.0, tag + " positivity");
      for (double z : {0.1 * L, 0.37 * L, 0.5 * L, 0.81 * L}) {
        c.within(rel(mode_density_from_green(z, k, L, p.r1, p.r2), closed), 1e-10, tag + " Green route");
      }
    }
  }
  return c;
}

Check adaptive_vs_series() {
  Check c;
  const NoiseBand b = standin_band();
  for (double r : {0.3, 0.7, 0.9}) {
    for (double L : {0.005, 0.012, 0.03, 0.06, 0.1}) {
      const CavityConfig cav{L, ConstantReflectivity(r), ConstantReflectivity(r)};
      const double a = casimir_force(b, cav, Method::Adaptive).value;
      const double s = casimir_force(b, cav, Method::Series).value;
      c.within(rel(a, s), 1e-6, "r=" + std::to_string(r) + " L=" + std::to_string(L));
    }
  }
  return c;
}

Check thermodynamic_consistency() {
  Check c;
  const NoiseBand b = standin_band();
  QuadratureSettings tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-15;
  const double r = std::sqrt(0.5);
  auto cav = [&](double L) { return CavityConfig{L, ConstantReflectivity(r), ConstantReflectivity(r)}; };
  const double h = 2e-6;
  for (double L : {0.012, 0.03, 0.07}) {
    const double ep = free_energy(b, cav(L + h), tight).value;
    const double em = free_energy(b, cav(L - h), tight).value;
    const double f = casimir_force(b, cav(L), Method::Adaptive, tight).value;
    c.within(rel(-(ep - em) / (2.0 * h), f), 1e-4, "gradient at L=" + std::to_string(L));
  }
  for (double L : {0.01, 0.03}) {
    const double e = free_energy(b, cav(L)).value;
    std::vector<double> forces;
    for (double R : {0.1, 0.2}) {
      const double F = sphere_plane_force(b, {R, L, ConstantReflectivity(r), ConstantReflectivity(r)}).value;
      c.within(rel(F, 2.0 * pi * R * e), 1e-12, "proximity prefactor");
      forces.push_back(F);
    }
    c.within(rel(forces[1], 2.0 * forces[0]), 1e-12, "R scaling");
  }
  return c;
}

Check perfect_limit() {
  Check c;
  const NoiseBand b = standin_band();
  const double L = 0.05;
  const int modes = static_cast<int>(std::floor(b.k_hi() * L / pi)) - static_cast<int>(std::ceil(b.k_lo() * L / pi)) + 1;
  c.expect(modes >= 3, "fewer than three modes in band");
  const double s = casimir_force(b, {L, ConstantReflectivity(0.99), ConstantReflectivity(0.99)}, Method::Series).value;
  c.within(rel(s, casimir_force_perfect(b, L).value), 0.02, "r=0.99 vs perfect");
  return c;
}

struct Row {
  double L, value;
};

std::vector<Row> parse_rows(const std::string& csv, int* sign_changes) {
  std::vector<Row> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  *sign_changes = 0;
  while (std::getline(in, line)) {
    if (line.rfind("# sign change", 0) == 0) ++*sign_changes;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    std::string a, v;
    std::getline(f, a, ',');
    std::getline(f, v, ',');
    rows.push_back({std::stod(a), std::stod(v)});
  }
  return rows;
}

Check qualitative_sweeps() {
  Check c;
  for (std::string r : {"r1", "r0.8", "r0.7"}) {
    const std::string name = "plates_" + r;
    const fs::path cfg = kSource / "configs" / (name + ".cfg");
    const fs::path out1 = scratch() / (name + "_a.csv");
    const fs::path out2 = scratch() / (name + "_b.csv");
    c.expect(cli({"sweep", "--config", cfg.string(), "--out", out1.string()}) == kExitOk, name + " run failed");
    c.expect(cli({"sweep", "--config", cfg.string(), "--out", out2.string()}) == kExitOk, name + " rerun failed");
    const std::string csv = slurp(out1);
    c.expect(csv == slurp(out2), name + " not reproducible");
    c.expect(csv == slurp(kSource / "tests" / "golden" / (name + ".csv")), name + " differs from golden file");
    int changes = 0;
    const auto rows = parse_rows(csv, &changes);
    c.expect(!rows.empty() && rows.front().value < 0.0, name + " not attractive at smallest L");
    c.expect(changes >= 1, name + " has no sign change");
  }
  return c;
}

Check cli_determinism() {
  Check c;
  const fs::path configs = kSource / "configs";
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"force", "single_point.cfg"},   {"sweep", "pressure_release.cfg"},  {"dos", "dos_scan.cfg"},
      {"energy", "sphere_plane.cfg"}, {"sphere-plane", "sphere_plane.cfg"}};
  for (const auto& [command, cfg] : runs) {
    const fs::path a = scratch() / (command + "_a.csv");
    const fs::path b = scratch() / (command + "_b.csv");
    c.expect(cli({command, "--config", (configs / cfg).string(), "--out", a.string()}) == kExitOk, command + " failed");
    c.expect(cli({command, "--config", (configs / cfg).string(), "--out", b.string()}) == kExitOk, command + " failed");
    c.expect(slurp(a) == slurp(b) && !slurp(a).empty(), command + " not byte-identical");
  }

  const std::string band =
      "[band]\nomega_lo = 31415.9\nomega_hi = 94247.8\nspectral_intensity = 1\nsound_speed = 343\n";
  const std::vector<std::pair<std::string, std::string>> invalid = {
      {band + "[cavity]\nseparation = -1\nrefl_a = perfect\nrefl_b = perfect\n", "[cavity] separation"},
      {band + "[cavity]\nseparation = 0.1\nrefl_a = constant 1.5\nrefl_b = perfect\n", "[cavity] refl_a"},
      {band + "[cavity]\nseparation = 0.1\nrefl_a = perfect\nrefl_b = perfect\nwidth = 3\n", "[cavity] width"},
      {"[band]\nomega_lo = 1\nomega_hi = 2\nspectral_intensity = -1\nsound_speed = 343\n"
       "[cavity]\nseparation = 0.1\nrefl_a = perfect\nrefl_b = perfect\n",
       "[band] spectral_intensity"},
      {band + "[cavity]\nseparation = 0.1\nrefl_a = perfect\nrefl_b = perfect\n[quadrature]\nrel_tol = 0\n",
       "[quadrature] rel_tol"},
  };
  for (std::size_t i = 0; i < invalid.size(); ++i) {
    const fs::path cfg = scratch() / ("invalid_" + std::to_string(i) + ".cfg");
    std::ofstream(cfg) << invalid[i].first;
    std::string err;
    const int code = cli({"force", "--config", cfg.string(), "--out", (scratch() / "invalid.csv").string()}, &err);
    c.expect(code == kExitConfig, "invalid config " + std::to_string(i) + " exit " + std::to_string(code));
    c.expect(err.find(invalid[i].second) != std::string::npos, "diagnostic missing " + invalid[i].second);
    c.expect(err.find(cfg.filename().string() + ":") != std::string::npos, "diagnostic missing location");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"pressure-release pair gives a constant force -P_out", pressure_release_constancy},
      {"full-band rigid cavity gives f*L = -I/8", full_band_scaling},
      {"mode density: positivity, period integral, Green route", dos_invariants},
      {"adaptive and series force paths agree", adaptive_vs_series},
      {"energy gradient and proximity force are consistent", thermodynamic_consistency},
      {"r = 0.99 approaches the rigid mode sum", perfect_limit},
      {"sweeps r = 1, 0.8, 0.7: attractive at L_min, sign change, golden CSVs", qualitative_sweeps},
      {"CLI output is deterministic, invalid configs exit 2", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %zu %s", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    if (c.worst > 0.0) std::printf(" (worst deviation %.3g)", c.worst);
    if (!c.ok) std::printf(": %s", c.note.c_str());
    std::printf("\n");
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
