#include "thermoforms/entropy.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "thermoforms/error.hpp"

namespace thermoforms {
namespace {

constexpr std::array<double, 5> kFactorial = {1.0, 1.0, 2.0, 6.0, 24.0};

// m-th derivative of ln at x.
double log_derivative(int m, double x) {
  if (m == 0) return std::log(x);
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;
  return sign * kFactorial[m - 1] / std::pow(x, m);
}

// d^j/dv^j g(u(v)) by Faa di Bruno, given g^(k)(u) in `g` and u^(k)(v) in `u`
// (index 0 unused for u).
double chain_rule(int j, const std::array<double, 5>& g, const std::array<double, 5>& u) {
  switch (j) {
    case 0:
      return g[0];
    case 1:
      return g[1] * u[1];
    case 2:
      return g[2] * u[1] * u[1] + g[1] * u[2];
    case 3:
      return g[3] * u[1] * u[1] * u[1] + 3.0 * g[2] * u[1] * u[2] + g[1] * u[3];
    case 4:
      return g[4] * u[1] * u[1] * u[1] * u[1] + 6.0 * g[3] * u[1] * u[1] * u[2] +
             g[2] * (3.0 * u[2] * u[2] + 4.0 * u[1] * u[3]) + g[1] * u[4];
    default:
      return 0.0;
  }
}

Jet4 ideal_gas_partials(double n, double e, double v) {
  std::array<double, Jet4::kSize> d{};
  d[Jet4::slot(0, 0)] = 0.5 * n * std::log(e) + std::log(v);
  for (int k = 1; k <= Jet4::kOrder; ++k) {
    d[Jet4::slot(k, 0)] = 0.5 * n * log_derivative(k, e);
    d[Jet4::slot(0, k)] = log_derivative(k, v);
  }
  return Jet4::from_derivatives(d);
}

// S = A ln(u) + B ln(w), u = e + 3/v, w = 3v - 1, A = 4n/3, B = 8/3.
Jet4 vdw_partials(double n, double e, double v) {
  const double A = 4.0 * n / 3.0;
  const double B = 8.0 / 3.0;
  const double u = e + 3.0 / v;
  const double w = 3.0 * v - 1.0;

  // du/dv ... d^4u/dv^4; u does not depend on e beyond the linear term.
  const std::array<double, 5> u_v = {u, -3.0 / (v * v), 6.0 / (v * v * v),
                                     -18.0 / (v * v * v * v), 72.0 / (v * v * v * v * v)};

  std::array<double, Jet4::kSize> d{};
  for (int i = 0; i <= Jet4::kOrder; ++i) {
    // d^i/de^i ln u = ln^(i)(u); its v-derivatives need ln^(i+k)(u).
    std::array<double, 5> g{};
    for (int k = 0; i + k <= Jet4::kOrder; ++k) g[k] = log_derivative(i + k, u);
    for (int j = 0; i + j <= Jet4::kOrder; ++j) {
      d[Jet4::slot(i, j)] = A * chain_rule(j, g, u_v);
    }
  }
  d[Jet4::slot(0, 0)] += B * std::log(w);
  double three_pow = 1.0;
  for (int j = 1; j <= Jet4::kOrder; ++j) {
    three_pow *= 3.0;
    d[Jet4::slot(0, j)] += B * three_pow * log_derivative(j, w);
  }
  return Jet4::from_derivatives(d);
}

std::string describe(double e, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "(e=" << e << ", v=" << v << ")";
  return os.str();
}

}  // namespace

EntropyModel::EntropyModel(ModelKind kind, double n, std::string name, JetFunction f,
                           DomainPredicate d)
    : kind_(kind), n_(n), name_(std::move(name)), jet_entropy_(std::move(f)),
      domain_(std::move(d)) {}

EntropyModel EntropyModel::ideal_gas(double n) {
  if (!(n > 0.0)) throw DomainError("degrees of freedom must be positive");
  return EntropyModel(
      ModelKind::ideal_gas, n, "ideal",
      [n](const Jet4& e, const Jet4& v) { return log(pow(e, 0.5 * n) * v); },
      [](double e, double v) { return e > 0.0 && v > 0.0; });
}

EntropyModel EntropyModel::van_der_waals(double n) {
  if (!(n > 0.0)) throw DomainError("degrees of freedom must be positive");
  return EntropyModel(
      ModelKind::van_der_waals, n, "vdw",
      [n](const Jet4& e, const Jet4& v) {
        return log(pow(e + 3.0 / v, 4.0 * n / 3.0) * pow(3.0 * v - 1.0, 8.0 / 3.0));
      },
      [](double e, double v) { return v > 1.0 / 3.0 && e + 3.0 / v > 0.0; });
}

EntropyModel EntropyModel::custom(std::string name, JetFunction entropy,
                                  DomainPredicate in_domain) {
  if (!in_domain) {
    in_domain = [](double e, double v) { return std::isfinite(e) && std::isfinite(v); };
  }
  return EntropyModel(ModelKind::custom, 0.0, std::move(name), std::move(entropy),
                      std::move(in_domain));
}

bool EntropyModel::in_domain(double e, double v) const { return domain_(e, v); }

void EntropyModel::require_domain(double e, double v) const {
  if (!in_domain(e, v)) {
    throw DomainError(name_ + " entropy is undefined at " + describe(e, v));
  }
}

Jet4 EntropyModel::derivatives(double e, double v) const {
  require_domain(e, v);
  switch (kind_) {
    case ModelKind::ideal_gas:
      return ideal_gas_partials(n_, e, v);
    case ModelKind::van_der_waals:
      return vdw_partials(n_, e, v);
    case ModelKind::custom:
      break;
  }
  return jet_entropy_(Jet4::variable(Axis::e, e), Jet4::variable(Axis::v, v));
}

Jet4 EntropyModel::jet_derivatives(double e, double v) const {
  require_domain(e, v);
  return jet_entropy_(Jet4::variable(Axis::e, e), Jet4::variable(Axis::v, v));
}

StatePoint EntropyModel::state(double e, double v) const {
  const Jet4 s = derivatives(e, v);
  const double s_e = s.derivative(1, 0);
  if (!(s_e > 0.0)) {
    throw NonPositiveTemperature("S_e <= 0 at " + describe(e, v));
  }
  return StatePoint{e, v, s.value(), 1.0 / s_e, s.derivative(0, 1) / s_e};
}

double EntropyModel::energy_from_temperature(double T, double v) const {
  if (!(T > 0.0)) throw DomainError("temperature must be positive");
  double e = 0.0;
  switch (kind_) {
    case ModelKind::ideal_gas:
      e = 0.5 * n_ * T;
      break;
    case ModelKind::van_der_waals:
      e = 4.0 * n_ * T / 3.0 - 3.0 / v;
      break;
    case ModelKind::custom: {
      // Newton on S_e(e, v) = 1/T.
      e = 1.0;
      bool converged = false;
      for (int it = 0; it < 100 && in_domain(e, v); ++it) {
        const Jet4 s = derivatives(e, v);
        const double step = (s.derivative(1, 0) - 1.0 / T) / s.derivative(2, 0);
        e -= step;
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(e))) {
          converged = true;
          break;
        }
      }
      if (!converged) throw DomainError("could not invert T = 1/S_e for " + name_);
      break;
    }
  }
  require_domain(e, v);
  return e;
}

double vdw_pressure(double T, double v) noexcept { return 8.0 * T / (3.0 * v - 1.0) - 3.0 / (v * v); }

double vdw_spinodal_temperature(double v) noexcept {
  const double w = 3.0 * v - 1.0;
  return w * w / (4.0 * v * v * v);
}

}  // namespace thermoforms
