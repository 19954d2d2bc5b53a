#include "acasimir/run_config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace acasimir {
namespace {

struct Entry {
  std::string value;
  std::string where;  // "file:line" or "--override section.key"
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"band", {"omega_lo", "omega_hi", "spectral_intensity", "sound_speed"}},
      {"cavity", {"separation", "refl_a", "refl_b"}},
      {"sphere", {"radius"}},
      {"sweep", {"L_min", "L_max", "points", "spacing"}},
      {"dos", {"k_min", "k_max", "points"}},
      {"quadrature",
       {"rel_tol", "abs_tol", "max_subdivisions", "min_panels_per_oscillation", "series_max_terms",
        "series_tail_tol"}},
      {"run", {"method", "output"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_known(const std::string& section, const std::string& key) {
  const auto& keys = known_keys().at(section);
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

class Reader {
 public:
  Reader(std::map<std::string, Section> sections, std::filesystem::path base_dir)
      : sections_(std::move(sections)), base_dir_(std::move(base_dir)) {}

  bool has_section(const std::string& name) const { return sections_.count(name) > 0; }

  const Entry* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& message) const {
    const Entry* e = find(section, key);
    const std::string where = e ? e->where + ": " : std::string();
    throw ConfigError(where + "[" + section + "] " + key + ": " + message);
  }

  const Entry& require(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return *e;
    fail(section, key, "missing required key");
  }

  double number(const std::string& section, const std::string& key) const {
    const Entry& e = require(section, key);
    return parse_number(section, key, e.value);
  }

  std::optional<double> optional_number(const std::string& section, const std::string& key) const {
    if (!find(section, key)) return std::nullopt;
    return number(section, key);
  }

  std::size_t count(const std::string& section, const std::string& key) const {
    const Entry& e = require(section, key);
    std::size_t v = 0;
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(section, key, "expected a non-negative integer, got '" + e.value + "'");
    return v;
  }

  double parse_number(const std::string& section, const std::string& key, const std::string& text) const {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
      fail(section, key, "expected a finite number, got '" + text + "'");
    return v;
  }

  ReflectivityEntry reflectivity(const std::string& key) const {
    const Entry& e = require("cavity", key);
    std::istringstream words(e.value);
    std::string kind;
    words >> kind;
    try {
      if (kind == "perfect" || kind == "pressure-release") {
        std::string extra;
        if (words >> extra) fail("cavity", key, "unexpected '" + extra + "' after " + kind);
        if (kind == "perfect") return {kind, PerfectReflector{}};
        return {kind, PressureRelease{}};
      }
      if (kind == "constant") {
        std::string re, im, extra;
        if (!(words >> re)) fail("cavity", key, "constant needs a real part");
        words >> im;
        if (words >> extra) fail("cavity", key, "unexpected '" + extra + "'");
        const double r = parse_number("cavity", key, re);
        const double i = im.empty() ? 0.0 : parse_number("cavity", key, im);
        std::string canonical = "constant " + format_double(r);
        if (i != 0.0) canonical += " " + format_double(i);
        return {canonical, ConstantReflectivity(Complex{r, i})};
      }
      if (kind == "table") {
        std::string rest;
        std::getline(words, rest);
        rest = trim(rest);
        if (rest.empty()) fail("cavity", key, "table needs a file path");
        std::filesystem::path path(rest);
        if (path.is_relative()) path = base_dir_ / path;
        path = std::filesystem::weakly_canonical(path);
        return {"table " + path.string(), ReflectivityTable::load(path)};
      }
    } catch (const Error& err) {
      fail("cavity", key, err.what());
    }
    fail("cavity", key,
         "expected perfect | pressure-release | constant <re> [<im>] | table <path>, got '" + e.value + "'");
  }

 private:
  std::map<std::string, Section> sections_;
  std::filesystem::path base_dir_;
};

std::vector<double> grid(double lo, double hi, std::size_t n, bool log_spaced) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace

std::vector<double> SweepSpec::values() const { return grid(min, max, points, spacing == Spacing::Log); }

std::vector<double> DosScanSpec::values() const { return grid(k_min, k_max, points, false); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

RunConfig parse_run_config(std::string_view text, const std::string& source,
                           const std::filesystem::path& base_dir,
                           const std::vector<std::string>& overrides) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header '" + line + "'");
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_keys().count(current)) throw ConfigError(where + ": unknown section [" + current + "]");
      if (sections.count(current)) throw ConfigError(where + ": duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    if (current.empty()) throw ConfigError(where + ": key outside any [section]");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!is_known(current, key)) throw ConfigError(where + ": [" + current + "] " + key + ": unknown key");
    if (sections[current].count(key))
      throw ConfigError(where + ": [" + current + "] " + key + ": duplicate key (first at " +
                        sections[current][key].where + ")");
    sections[current][key] = {value, where};
  }

  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    const auto dot = ov.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("--override '" + ov + "': expected section.key=value");
    const std::string section = trim(std::string_view(ov).substr(0, dot));
    const std::string key = trim(std::string_view(ov).substr(dot + 1, eq - dot - 1));
    const std::string value = trim(std::string_view(ov).substr(eq + 1));
    if (!known_keys().count(section)) throw ConfigError("--override '" + ov + "': unknown section [" + section + "]");
    if (!is_known(section, key)) throw ConfigError("--override '" + ov + "': [" + section + "] " + key + ": unknown key");
    sections[section][key] = {value, "--override " + section + "." + key};
  }

  const Reader r(std::move(sections), base_dir);
  RunConfig cfg;

  cfg.band.omega_lo = r.number("band", "omega_lo");
  cfg.band.omega_hi = r.number("band", "omega_hi");
  cfg.band.spectral_intensity = r.number("band", "spectral_intensity");
  cfg.band.sound_speed = r.number("band", "sound_speed");
  if (cfg.band.omega_lo < 0.0) r.fail("band", "omega_lo", "must be >= 0");
  if (!(cfg.band.omega_hi > cfg.band.omega_lo)) r.fail("band", "omega_hi", "must exceed omega_lo");
  if (!(cfg.band.spectral_intensity > 0.0)) r.fail("band", "spectral_intensity", "must be > 0");
  if (!(cfg.band.sound_speed > 0.0)) r.fail("band", "sound_speed", "must be > 0");

  cfg.separation = r.optional_number("cavity", "separation");
  if (cfg.separation && !(*cfg.separation > 0.0)) r.fail("cavity", "separation", "must be > 0");
  cfg.refl_a = r.reflectivity("refl_a");
  cfg.refl_b = r.reflectivity("refl_b");
  for (const auto* key : {"refl_a", "refl_b"}) {
    const auto& spec = std::string(key) == "refl_a" ? cfg.refl_a.spec : cfg.refl_b.spec;
    try {
      require_coverage(spec, cfg.band.omega_lo, cfg.band.omega_hi);
    } catch (const Error& e) {
      r.fail("cavity", key, e.what());
    }
  }

  cfg.radius = r.optional_number("sphere", "radius");
  if (cfg.radius && !(*cfg.radius > 0.0)) r.fail("sphere", "radius", "must be > 0");

  if (r.has_section("sweep")) {
    SweepSpec s;
    s.min = r.number("sweep", "L_min");
    s.max = r.number("sweep", "L_max");
    s.points = r.count("sweep", "points");
    if (const Entry* e = r.find("sweep", "spacing")) {
      if (e->value == "linear")
        s.spacing = Spacing::Linear;
      else if (e->value == "log")
        s.spacing = Spacing::Log;
      else
        r.fail("sweep", "spacing", "expected linear or log, got '" + e->value + "'");
    }
    if (!(s.min > 0.0)) r.fail("sweep", "L_min", "must be > 0");
    if (!(s.max > s.min)) r.fail("sweep", "L_max", "must exceed L_min");
    if (s.points < 2) r.fail("sweep", "points", "must be >= 2");
    cfg.sweep = s;
  }

  if (r.has_section("dos")) {
    DosScanSpec d;
    d.k_min = r.number("dos", "k_min");
    d.k_max = r.number("dos", "k_max");
    d.points = r.count("dos", "points");
    if (!(d.k_min > 0.0)) r.fail("dos", "k_min", "must be > 0");
    if (!(d.k_max >= d.k_min)) r.fail("dos", "k_max", "must be >= k_min");
    if (d.points < 1) r.fail("dos", "points", "must be >= 1");
    if (d.points > 1 && d.k_max == d.k_min) r.fail("dos", "k_max", "must exceed k_min when points > 1");
    cfg.dos = d;
  }

  auto& q = cfg.quadrature;
  if (auto v = r.optional_number("quadrature", "rel_tol")) {
    if (!(*v > 0.0)) r.fail("quadrature", "rel_tol", "must be > 0");
    q.rel_tol = *v;
  }
  if (auto v = r.optional_number("quadrature", "abs_tol")) {
    if (!(*v > 0.0)) r.fail("quadrature", "abs_tol", "must be > 0");
    q.abs_tol = *v;
  }
  if (auto v = r.optional_number("quadrature", "series_tail_tol")) {
    if (!(*v > 0.0)) r.fail("quadrature", "series_tail_tol", "must be > 0");
    q.series_tail_tol = *v;
  }
  for (const char* key : {"max_subdivisions", "min_panels_per_oscillation", "series_max_terms"}) {
    if (!r.find("quadrature", key)) continue;
    const std::size_t v = r.count("quadrature", key);
    if (v < 1) r.fail("quadrature", key, "must be >= 1");
    if (std::string(key) == "max_subdivisions") q.max_subdivisions = v;
    if (std::string(key) == "min_panels_per_oscillation") q.min_panels_per_oscillation = v;
    if (std::string(key) == "series_max_terms") q.series_max_terms = v;
  }

  if (const Entry* e = r.find("run", "method")) {
    try {
      cfg.method = parse_method(e->value);
    } catch (const Error& err) {
      r.fail("run", "method", err.what());
    }
  }
  if (const Entry* e = r.find("run", "output")) {
    if (e->value.empty()) r.fail("run", "output", "must not be empty");
    std::filesystem::path out(e->value);
    if (out.is_relative() && e->where.rfind("--override", 0) != 0) out = base_dir / out;
    cfg.output = out;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot read config file");
  std::ostringstream text;
  text << in.rdbuf();
  const auto base = std::filesystem::absolute(path).parent_path();
  return parse_run_config(text.str(), path.string(), base, overrides);
}

std::string echo_run_config(const RunConfig& c) {
  std::ostringstream os;
  os << "# effective configuration\n";
  os << "[band]\n";
  os << "omega_lo = " << format_double(c.band.omega_lo) << "\n";
  os << "omega_hi = " << format_double(c.band.omega_hi) << "\n";
  os << "spectral_intensity = " << format_double(c.band.spectral_intensity) << "\n";
  os << "sound_speed = " << format_double(c.band.sound_speed) << "\n";
  os << "\n[cavity]\n";
  if (c.separation) os << "separation = " << format_double(*c.separation) << "\n";
  os << "refl_a = " << c.refl_a.canonical << "\n";
  os << "refl_b = " << c.refl_b.canonical << "\n";
  if (c.radius) os << "\n[sphere]\nradius = " << format_double(*c.radius) << "\n";
  if (c.sweep) {
    os << "\n[sweep]\n";
    os << "L_min = " << format_double(c.sweep->min) << "\n";
    os << "L_max = " << format_double(c.sweep->max) << "\n";
    os << "points = " << c.sweep->points << "\n";
    os << "spacing = " << (c.sweep->spacing == Spacing::Log ? "log" : "linear") << "\n";
  }
  if (c.dos) {
    os << "\n[dos]\n";
    os << "k_min = " << format_double(c.dos->k_min) << "\n";
    os << "k_max = " << format_double(c.dos->k_max) << "\n";
    os << "points = " << c.dos->points << "\n";
  }
  const auto& q = c.quadrature;
  os << "\n[quadrature]\n";
  os << "rel_tol = " << format_double(q.rel_tol) << "\n";
  os << "abs_tol = " << format_double(q.abs_tol) << "\n";
  os << "max_subdivisions = " << q.max_subdivisions << "\n";
  os << "min_panels_per_oscillation = " << q.min_panels_per_oscillation << "\n";
  os << "series_max_terms = " << q.series_max_terms << "\n";
  os << "series_tail_tol = " << format_double(q.series_tail_tol) << "\n";
  if (c.method || c.output) {
    os << "\n[run]\n";
    if (c.method) os << "method = " << to_string(*c.method) << "\n";
    if (c.output) os << "output = " << std::filesystem::absolute(*c.output).string() << "\n";
  }
  return os.str();
}

}  // namespace acasimir
