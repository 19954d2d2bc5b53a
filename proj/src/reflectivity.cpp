#include "acasimir/reflectivity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "acasimir/core.hpp"

namespace acasimir {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::optional<Complex> fixed_value(const ReflectivitySpec& spec) {
  return std::visit(Overloaded{
                        [](const ConstantReflectivity& c) -> std::optional<Complex> { return c.value(); },
                        [](const PerfectReflector&) -> std::optional<Complex> { return Complex{1.0, 0.0}; },
                        [](const PressureRelease&) -> std::optional<Complex> { return Complex{-1.0, 0.0}; },
                        [](const ReflectivityTable&) -> std::optional<Complex> { return std::nullopt; },
                    },
                    spec);
}

}  // namespace

ConstantReflectivity::ConstantReflectivity(Complex r) : r_(r) {
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw Error(ErrorKind::InvalidArgument, "constant reflectivity is not finite");
  if (std::abs(r) > 1.0 + kPassivitySlack)
    throw Error(ErrorKind::PassivityViolation,
                "constant reflectivity |r| = " + format_value(std::abs(r)) + " exceeds 1");
}

ReflectivityTable::ReflectivityTable(std::vector<ReflectivitySample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2)
    throw Error(ErrorKind::TableFormat, "reflectivity table needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.omega) || !std::isfinite(s.r.real()) || !std::isfinite(s.r.imag()))
      throw Error(ErrorKind::TableFormat,
                  "reflectivity table sample " + std::to_string(i) + " is not finite");
    if (s.omega < 0.0)
      throw Error(ErrorKind::TableFormat,
                  "reflectivity table sample " + std::to_string(i) + " has negative omega");
    if (i > 0 && !(s.omega > samples_[i - 1].omega))
      throw Error(ErrorKind::TableFormat, "reflectivity table omega not strictly increasing at sample " +
                                              std::to_string(i));
    if (std::abs(s.r) > 1.0 + kPassivitySlack)
      throw Error(ErrorKind::PassivityViolation, "reflectivity table sample " + std::to_string(i) +
                                                     " has |r| = " + format_value(std::abs(s.r)) +
                                                     " > 1");
  }
}

ReflectivityTable ReflectivityTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::TableFormat, path.string() + ": cannot open reflectivity table");

  std::vector<ReflectivitySample> samples;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto where = [&] { return path.string() + ":" + std::to_string(line_no) + ": "; };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double omega = 0.0, re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> omega >> re >> im))
      throw Error(ErrorKind::TableFormat, where() + "expected three numeric columns omega_rad_per_s, re_r, im_r");
    if (fields >> extra)
      throw Error(ErrorKind::TableFormat, where() + "unexpected extra column '" + extra + "'");
    if (!std::isfinite(omega) || !std::isfinite(re) || !std::isfinite(im))
      throw Error(ErrorKind::TableFormat, where() + "non-finite value");
    const Complex r{re, im};
    if (std::abs(r) > 1.0 + kPassivitySlack)
      throw Error(ErrorKind::PassivityViolation,
                  where() + "|r| = " + format_value(std::abs(r)) + " exceeds 1 (passivity)");
    if (!samples.empty() && !(omega > samples.back().omega))
      throw Error(ErrorKind::TableFormat, where() + "omega must be strictly increasing");
    samples.push_back({omega, r});
  }
  if (!header_seen)
    throw Error(ErrorKind::TableFormat, path.string() + ": missing header line");
  if (samples.size() < 2)
    throw Error(ErrorKind::TableFormat, path.string() + ": reflectivity table needs at least 2 rows");
  return ReflectivityTable(std::move(samples));
}

Complex ReflectivityTable::interpolate(double omega) const {
  if (!(omega >= omega_min() && omega <= omega_max()))
    throw Error(ErrorKind::OutOfTableRange, "omega = " + format_value(omega) +
                                                " outside table range [" + format_value(omega_min()) +
                                                ", " + format_value(omega_max()) + "]");
  auto hi = std::upper_bound(samples_.begin(), samples_.end(), omega,
                             [](double w, const ReflectivitySample& s) { return w < s.omega; });
  if (hi == samples_.end()) return samples_.back().r;
  auto lo = hi - 1;
  if (omega == lo->omega) return lo->r;
  const double t = (omega - lo->omega) / (hi->omega - lo->omega);
  return {lo->r.real() + t * (hi->r.real() - lo->r.real()),
          lo->r.imag() + t * (hi->r.imag() - lo->r.imag())};
}

Complex eval_reflectivity(const ReflectivitySpec& spec, double omega) {
  if (!std::isfinite(omega) || omega < 0.0)
    throw Error(ErrorKind::InvalidArgument, "reflectivity queried at invalid omega " + format_value(omega));
  if (auto fixed = fixed_value(spec)) return *fixed;
  return std::get<ReflectivityTable>(spec).interpolate(omega);
}

bool is_real_valued(const ReflectivitySpec& spec) {
  if (auto fixed = fixed_value(spec)) return fixed->imag() == 0.0;
  const auto& table = std::get<ReflectivityTable>(spec);
  return std::all_of(table.samples().begin(), table.samples().end(),
                     [](const ReflectivitySample& s) { return s.r.imag() == 0.0; });
}

void require_coverage(const ReflectivitySpec& spec, double omega_lo, double omega_hi) {
  if (const auto* table = std::get_if<ReflectivityTable>(&spec)) {
    if (omega_lo < table->omega_min() || omega_hi > table->omega_max())
      throw Error(ErrorKind::OutOfTableRange,
                  "reflectivity table range [" + format_value(table->omega_min()) + ", " +
                      format_value(table->omega_max()) + "] does not cover the band [" +
                      format_value(omega_lo) + ", " + format_value(omega_hi) + "]");
  }
}

ProductBound reflectivity_product_bound(const ReflectivitySpec& a, const ReflectivitySpec& b,
                                        double omega_lo, double omega_hi) {
  require_coverage(a, omega_lo, omega_hi);
  require_coverage(b, omega_lo, omega_hi);

  std::vector<double> knots{omega_lo, omega_hi};
  for (const auto* spec : {&a, &b}) {
    if (const auto* table = std::get_if<ReflectivityTable>(spec)) {
      for (const auto& s : table->samples())
        if (s.omega > omega_lo && s.omega < omega_hi) knots.push_back(s.omega);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  ProductBound bound;
  bound.real_valued = is_real_valued(a) && is_real_valued(b);
  const auto fa = fixed_value(a);
  const auto fb = fixed_value(b);
  bound.pressure_release_pair = fa && fb && (*fa) * (*fb) == Complex{-1.0, 0.0};

  std::vector<double> mag_a, mag_b;
  for (double w : knots) {
    mag_a.push_back(std::abs(eval_reflectivity(a, w)));
    mag_b.push_back(std::abs(eval_reflectivity(b, w)));
    bound.knot_max = std::max(bound.knot_max, mag_a.back() * mag_b.back());
  }
  bound.sup_bound = bound.knot_max;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double seg = std::max(mag_a[i], mag_a[i + 1]) * std::max(mag_b[i], mag_b[i + 1]);
    bound.sup_bound = std::max(bound.sup_bound, seg);
  }
  return bound;
}

}  // namespace acasimir
