#include "thermoforms/processes.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "thermoforms/error.hpp"

namespace thermoforms {

CubicCoeffs cubic_from_sigma3(const SymForm3& s3) noexcept {
  const auto& c = s3.components;
  return CubicCoeffs{c[3], 3.0 * c[2], 3.0 * c[1], c[0]};
}

CubicCoeffs cubic_at(const EntropyModel& model, double e, double v) {
  return cubic_from_sigma3(sigma3(model, e, v));
}

ProcessCount root_count(const EntropyModel& model, double e, double v) {
  const CubicCoeffs c = cubic_at(model, e, v);
  if (!(c.scale() > 1e-300)) throw AllZero("skewness cubic vanishes identically");
  const int count = cubic_real_root_count(c);
  return ProcessCount{count, count == 2, c.discriminant()};
}

namespace {

struct Slope {
  double q = 0.0;
  int count = 0;
};

// Root of the cubic at (e, v) nearest to `previous`; nullopt outside the domain.
std::optional<Slope> nearest_slope(const EntropyModel& model, double e, double v,
                                   double previous) {
  if (!model.in_domain(e, v)) return std::nullopt;
  const CubicCoeffs c = cubic_at(model, e, v);
  const RootSet roots = solve_cubic(c);
  if (roots.roots.empty()) return std::nullopt;
  double best = roots.roots.front();
  for (double r : roots.roots) {
    if (std::abs(r - previous) < std::abs(best - previous)) best = r;
  }
  return Slope{best, cubic_real_root_count(c)};
}

}  // namespace

ProcessCurve integrate_process(const EntropyModel& model, double e0, double v0,
                               const IntegrationOptions& options) {
  if (!model.in_domain(e0, v0)) {
    throw DomainError("process start lies outside the " + model.name() + " domain");
  }
  const CubicCoeffs c0 = cubic_at(model, e0, v0);
  const RootSet start_roots = solve_cubic(c0);
  if (options.branch >= start_roots.roots.size()) {
    throw std::out_of_range("branch " + std::to_string(options.branch) + " does not exist; " +
                            std::to_string(start_roots.roots.size()) + " real roots at start");
  }
  const int start_count = cubic_real_root_count(c0);

  ProcessCurve curve;
  double e = e0, v = v0, q = start_roots.roots[options.branch];
  curve.points.push_back({e, v, q});

  const double h = options.step;
  if (h == 0.0 || !(options.max_length > 0.0)) return curve;

  const auto steps = static_cast<std::size_t>(std::floor(options.max_length / std::abs(h) + 1e-9));
  for (std::size_t n = 0; n < steps; ++n) {
    // de/dt = 1, so the e-increments of the stages are 0, h/2, h/2, h.
    const auto k1 = nearest_slope(model, e, v, q);
    const auto k2 = k1 ? nearest_slope(model, e + 0.5 * h, v + 0.5 * h * k1->q, k1->q) : k1;
    const auto k3 = k2 ? nearest_slope(model, e + 0.5 * h, v + 0.5 * h * k2->q, k2->q) : k2;
    const auto k4 = k3 ? nearest_slope(model, e + h, v + h * k3->q, k3->q) : k3;
    if (!k4) {
      curve.termination = Termination::domain_exit;
      return curve;
    }
    if (k1->count != start_count || k2->count != start_count || k3->count != start_count ||
        k4->count != start_count) {
      curve.termination = Termination::branch_lost;
      return curve;
    }
    const double e_next = e + h;
    const double v_next = v + h * (k1->q + 2.0 * k2->q + 2.0 * k3->q + k4->q) / 6.0;
    const auto end = nearest_slope(model, e_next, v_next, k4->q);
    if (!end) {
      curve.termination = Termination::domain_exit;
      return curve;
    }
    if (end->count != start_count) {
      curve.termination = Termination::branch_lost;
      return curve;
    }
    e = e_next;
    v = v_next;
    q = end->q;
    curve.points.push_back({e, v, q});
  }
  curve.termination = Termination::max_length;
  return curve;
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::max_length:
      return "max_length";
    case Termination::domain_exit:
      return "domain_exit";
    case Termination::branch_lost:
      return "branch_lost";
  }
  return "unknown";
}

}  // namespace thermoforms
