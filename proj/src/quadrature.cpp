#include "acasimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace acasimir {
namespace {

// Gauss-Kronrod 10/21 pair (QUADPACK qk21). Odd indices are shared with the
// 10-point Gauss rule; index 10 is the centre.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980590670, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Sample {
  double value = 0.0;
  double error = 0.0;  // error already carried by the sample (inner integrals)
  std::size_t panels = 0;
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double rule_error = 0.0;
  double carried_error = 0.0;
  std::size_t carried_panels = 0;
  bool alive = true;
};

class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class Eval>
Panel evaluate_panel(Eval& eval, double lo, double hi, std::size_t& evaluations) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto sample = [&](double x) {
    Sample s = eval(x);
    ++evaluations;
    if (!std::isfinite(s.value))
      throw Error(ErrorKind::NonFiniteIntegrand,
                  "integrand is not finite at x = " + std::to_string(x));
    return s;
  };

  const Sample fc = sample(centre);
  double kronrod = kWgk[10] * fc.value;
  double gauss = 0.0;
  double carried = kWgk[10] * fc.error;
  std::size_t carried_panels = fc.panels;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const Sample a = sample(centre - dx);
    const Sample b = sample(centre + dx);
    kronrod += kWgk[j] * (a.value + b.value);
    carried += kWgk[j] * (a.error + b.error);
    carried_panels += a.panels + b.panels;
    if (j % 2 == 1) gauss += kWg[j / 2] * (a.value + b.value);
  }
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = kronrod * half;
  p.rule_error = std::abs((kronrod - gauss) * half);
  p.carried_error = carried * std::abs(half);
  p.carried_panels = carried_panels;
  return p;
}

bool splittable(const Panel& p) {
  const double mid = 0.5 * (p.lo + p.hi);
  return p.lo < mid && mid < p.hi;
}

template <class Eval>
IntegrationReport integrate_impl(Eval eval, Interval domain, std::optional<double> scale,
                                 const QuadratureSettings& settings, double* carried_out = nullptr) {
  settings.validate();
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || domain.lo > domain.hi)
    throw Error(ErrorKind::InvalidArgument, "integration domain must be a finite interval lo <= hi");

  IntegrationReport report;
  const double width = domain.hi - domain.lo;
  if (width == 0.0) {
    report.converged = true;
    return report;
  }

  std::size_t initial = 1;
  if (scale && *scale > 0.0) {
    const double max_width =
        2.0 * std::numbers::pi / (static_cast<double>(settings.min_panels_per_oscillation) * *scale);
    initial = static_cast<std::size_t>(std::ceil(width / max_width));
    initial = std::max<std::size_t>(initial, 1);
  }
  const std::size_t budget = std::max(settings.max_subdivisions, initial);

  std::vector<Panel> panels;
  panels.reserve(std::min<std::size_t>(budget * 2, 1 << 16));
  auto worse = [&panels](std::size_t a, std::size_t b) {
    if (panels[a].rule_error != panels[b].rule_error)
      return panels[a].rule_error < panels[b].rule_error;
    return panels[a].lo > panels[b].lo;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);

  double value_sum = 0.0, rule_sum = 0.0, carried_sum = 0.0;
  auto push = [&](Panel p) {
    value_sum += p.value;
    rule_sum += p.rule_error;
    carried_sum += p.carried_error;
    panels.push_back(p);
    queue.push(panels.size() - 1);
  };

  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = domain.lo + width * static_cast<double>(i) / static_cast<double>(initial);
    const double hi =
        i + 1 == initial ? domain.hi
                         : domain.lo + width * static_cast<double>(i + 1) / static_cast<double>(initial);
    push(evaluate_panel(eval, lo, hi, report.evaluations));
  }
  std::size_t alive = initial;

  auto tolerance = [&](double value) { return std::max(settings.abs_tol, settings.rel_tol * std::abs(value)); };

  bool stalled = false;
  for (;;) {
    while (rule_sum + carried_sum > tolerance(value_sum) && alive < budget && !queue.empty()) {
      // Outer refinement cannot reduce the error carried by inner integrals.
      if (rule_sum <= 0.5 * tolerance(value_sum)) break;
      const std::size_t worst = queue.top();
      if (!splittable(panels[worst])) {
        stalled = true;
        break;
      }
      queue.pop();
      Panel& old = panels[worst];
      old.alive = false;
      value_sum -= old.value;
      rule_sum -= old.rule_error;
      carried_sum -= old.carried_error;
      const double lo = old.lo, hi = old.hi, mid = 0.5 * (old.lo + old.hi);
      push(evaluate_panel(eval, lo, mid, report.evaluations));
      push(evaluate_panel(eval, mid, hi, report.evaluations));
      ++alive;
    }

    // Exact resummation in a fixed order.
    std::vector<const Panel*> live;
    live.reserve(alive);
    for (const auto& p : panels)
      if (p.alive) live.push_back(&p);
    std::sort(live.begin(), live.end(), [](const Panel* a, const Panel* b) { return a->lo < b->lo; });
    NeumaierSum value, rule, carried;
    std::size_t carried_panels = 0;
    for (const Panel* p : live) {
      value.add(p->value);
      rule.add(p->rule_error);
      carried.add(p->carried_error);
      carried_panels += p->carried_panels;
    }
    const bool drifted = value.value() != value_sum || rule.value() != rule_sum;
    value_sum = value.value();
    rule_sum = rule.value();
    carried_sum = carried.value();

    const double total_error = rule_sum + carried_sum;
    const bool can_refine =
        !stalled && alive < budget && rule_sum > 0.5 * tolerance(value_sum);
    if (total_error > tolerance(value_sum) && can_refine && drifted) continue;

    report.value = value_sum;
    report.error_estimate = total_error;
    report.panels_used = alive + carried_panels;
    report.converged = total_error <= tolerance(value_sum);
    if (carried_out) *carried_out = carried_sum;
    return report;
  }
}

}  // namespace

IntegrationReport adaptive_integrate(const std::function<double(double)>& f, Interval domain,
                                     std::optional<double> oscillation_scale,
                                     const QuadratureSettings& settings) {
  auto eval = [&f](double x) { return Sample{f(x), 0.0, 0}; };
  return integrate_impl(eval, domain, oscillation_scale, settings);
}

IntegrationReport adaptive_integrate(const std::function<double(double, double)>& f,
                                     Rectangle domain,
                                     std::array<std::optional<double>, 2> oscillation_scale,
                                     const QuadratureSettings& settings) {
  settings.validate();
  const double width_x = domain.x.hi - domain.x.lo;
  QuadratureSettings inner = settings;
  inner.rel_tol = settings.rel_tol / 4.0;
  inner.abs_tol = width_x > 0.0 ? settings.abs_tol / (4.0 * width_x) : settings.abs_tol;

  // When the outer integral cancels, inner errors relative to |inner value|
  // can exceed the outer tolerance; retry with inner tolerances tightened by
  // the observed shortfall.
  constexpr int kMaxAttempts = 4;
  std::size_t total_evaluations = 0;
  IntegrationReport report;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::size_t inner_evaluations = 0;
    auto eval = [&](double x) {
      const IntegrationReport r = integrate_impl(
          [&f, x](double y) { return Sample{f(x, y), 0.0, 0}; }, domain.y, oscillation_scale[1], inner);
      inner_evaluations += r.evaluations;
      return Sample{r.value, r.error_estimate, r.panels_used};
    };
    double carried = 0.0;
    report = integrate_impl(eval, domain.x, oscillation_scale[0], settings, &carried);
    total_evaluations += inner_evaluations;
    // Inner error estimates are already part of report.error_estimate.

    const double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(report.value));
    if (report.converged || carried <= 0.5 * tol) break;
    const double shrink = std::min(1e-1, 0.25 * tol / carried);
    const double floor = 4.0 * std::numeric_limits<double>::epsilon();
    if (inner.rel_tol <= floor) break;
    inner.rel_tol = std::max(inner.rel_tol * shrink, floor);
    inner.abs_tol *= shrink;
  }
  report.evaluations = total_evaluations;
  return report;
}

double trig_moment(TrigMoment which, double a) {
  if (!std::isfinite(a) || a < 0.0)
    throw Error(ErrorKind::InvalidArgument, "trig moment argument must be finite and >= 0");

  if (a < kTrigMomentTaylorThreshold) {
    // M2c = sum_j (-1)^j a^(2j) / ((2j)! (2j+3))
    // M1s = sum_j (-1)^j a^(2j+1) / ((2j+1)! (2j+3))
    const double a2 = a * a;
    double term = which == TrigMoment::SquareCos ? 1.0 : a;  // a^p / p!
    int p = which == TrigMoment::SquareCos ? 0 : 1;
    double sum = 0.0;
    for (int j = 0; j < 30; ++j) {
      const double contrib = term / static_cast<double>(2 * j + 3);
      sum += (j % 2 == 0) ? contrib : -contrib;
      if (contrib <= std::numeric_limits<double>::epsilon() * 1e-2 * std::abs(sum)) break;
      term *= a2 / static_cast<double>((p + 1) * (p + 2));
      p += 2;
    }
    return sum;
  }

  const double s = std::sin(a);
  const double c = std::cos(a);
  if (which == TrigMoment::SquareCos) return 2.0 * c / (a * a) + (a * a - 2.0) * s / (a * a * a);
  return s / (a * a) - c / a;
}

}  // namespace acasimir
