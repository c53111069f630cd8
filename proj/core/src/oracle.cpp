#include "thermoforms/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "thermoforms/error.hpp"

namespace thermoforms::oracle {
namespace {

void require_domain(Family family, double lambda) {
  if (!in_lambda_domain(family, lambda)) {
    throw DomainError("lambda = " + std::to_string(lambda) + " outside the " +
                      std::string(to_string(family)) + " family domain");
  }
}

double log_partition(Family family, double lambda) {
  return -hamiltonian_derivs(family, lambda)[0];
}

// Tilted density rho(w) * q(w) with respect to Lebesgue measure.
double tilted_density(Family family, double lambda, double log_z, double w) {
  switch (family) {
    case Family::gaussian:
      return std::exp(lambda * w - 0.5 * w * w - log_z) / std::sqrt(2.0 * std::numbers::pi);
    case Family::exponential:
      return w < 0.0 ? 0.0 : std::exp(lambda * w - w - log_z);
  }
  return 0.0;
}

template <class F>
double integrate(F&& f, double a, double b, double rel_tol, double reference, const char* what) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol, &error);
  if (!(error <= rel_tol * std::max(std::abs(value), reference))) {
    throw QuadratureFail(std::string("quadrature of ") + what + " missed tolerance (error " +
                         std::to_string(error) + ")");
  }
  return value;
}

// Newton solve of -H'(lambda) = x, starting at `guess`.
double lambda_of_mean(Family family, double x, double guess) {
  double lambda = guess;
  for (int it = 0; it < 100; ++it) {
    const auto h = hamiltonian_derivs(family, lambda);
    const double step = (-h[1] - x) / (-h[2]);
    double next = lambda - step;
    while (!in_lambda_domain(family, next)) next = 0.5 * (next + lambda);
    if (std::abs(next - lambda) <= 1e-16 * std::max(1.0, std::abs(lambda))) return next;
    lambda = next;
  }
  return lambda;
}

double information_gain(Family family, double x, double guess) {
  const double lambda = lambda_of_mean(family, x, guess);
  return hamiltonian_derivs(family, lambda)[0] + lambda * x;
}

}  // namespace

bool in_lambda_domain(Family family, double lambda) noexcept {
  if (!std::isfinite(lambda)) return false;
  return family == Family::gaussian || lambda < 1.0;
}

std::array<double, 5> hamiltonian_derivs(Family family, double lambda) {
  require_domain(family, lambda);
  switch (family) {
    case Family::gaussian:
      return {-0.5 * lambda * lambda, -lambda, -1.0, 0.0, 0.0};
    case Family::exponential: {
      const double b = 1.0 - lambda;
      return {std::log(b), -1.0 / b, -1.0 / (b * b), -2.0 / (b * b * b), -6.0 / (b * b * b * b)};
    }
  }
  return {};
}

MomentTriple central_moments_analytic(Family family, double lambda) {
  const auto h = hamiltonian_derivs(family, lambda);
  const double s2 = -h[2];
  return MomentTriple{s2, -h[3], -h[4] + 3.0 * s2 * s2};
}

NumericMoments central_moments_numeric(Family family, double lambda, const QuadratureSpec& spec) {
  require_domain(family, lambda);
  const double log_z = log_partition(family, lambda);
  const double cut = std::log(1.0 / spec.tail_mass);

  // Truncated support [a, b] and a rough width used as the absolute scale of
  // odd central moments, which may vanish.
  double a = 0.0, b = 0.0, width = 1.0;
  switch (family) {
    case Family::gaussian:
      // The tilted law is N(lambda, 1).
      a = lambda - (std::sqrt(2.0 * cut) + 4.0);
      b = lambda + (std::sqrt(2.0 * cut) + 4.0);
      width = 1.0;
      break;
    case Family::exponential: {
      const double rate = 1.0 - lambda;
      a = 0.0;
      b = (cut + 20.0) / rate;
      width = 1.0 / rate;
      break;
    }
  }

  auto rho = [&](double w) { return tilted_density(family, lambda, log_z, w); };
  NumericMoments out;
  out.mass = integrate(rho, a, b, spec.rel_tol, 1.0, "mass");
  out.mean = integrate([&](double w) { return w * rho(w); }, a, b, spec.rel_tol, width, "mean");

  const double m = out.mean;
  auto central = [&](int k, const char* what) {
    return integrate([&](double w) { return std::pow(w - m, k) * rho(w); }, a, b, spec.rel_tol,
                     std::pow(width, k), what);
  };
  out.central.sigma2 = central(2, "sigma2");
  out.central.sigma3 = central(3, "sigma3");
  out.central.sigma4 = central(4, "sigma4");
  return out;
}

InfoGainCheck info_gain_check(Family family, double lambda) {
  const auto h = hamiltonian_derivs(family, lambda);
  InfoGainCheck out;
  out.x = -h[1];
  out.information_gain = h[0] + lambda * out.x;

  const double step = 1e-3 * std::min(1.0, std::sqrt(-h[2]));
  auto central_difference = [&](double dx) {
    return (information_gain(family, out.x + dx, lambda) -
            information_gain(family, out.x - dx, lambda)) /
           (2.0 * dx);
  };
  const double coarse = central_difference(step);
  const double fine = central_difference(0.5 * step);
  out.slope = (4.0 * fine - coarse) / 3.0;
  out.residual = std::abs(out.slope - lambda);
  return out;
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::gaussian:
      return "gaussian";
    case Family::exponential:
      return "exponential";
  }
  return "unknown";
}

}  // namespace thermoforms::oracle
