#pragma once

// One-dimensional exponential families with closed-form partition functions.
// They ground the moment identities without any thermodynamic model:
//
//   rho = exp(lambda X) / Z(lambda),  H(lambda) = -ln Z(lambda),
//   sigma_2 = -H'',  sigma_3 = -H''',  sigma_4 = -H'''' + 3 sigma_2^2,
//
// which can be compared against direct quadrature of E[(X - E X)^k].

#include <array>
#include <string_view>

namespace thermoforms::oracle {

enum class Family {
  gaussian,     // base measure N(0, 1), Z = exp(lambda^2 / 2), any lambda
  exponential,  // base measure exp(-w) dw on w >= 0, Z = 1 / (1 - lambda), lambda < 1
};

bool in_lambda_domain(Family family, double lambda) noexcept;

/// H and its first four derivatives.  Throws DomainError outside the domain.
std::array<double, 5> hamiltonian_derivs(Family family, double lambda);

struct MomentTriple {
  double sigma2 = 0.0;
  double sigma3 = 0.0;
  double sigma4 = 0.0;
};

MomentTriple central_moments_analytic(Family family, double lambda);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  /// Probability mass (weighted by the fourth power of the distance to the
  /// mean) allowed outside the truncated integration range.
  double tail_mass = 1e-14;
};

struct NumericMoments {
  double mass = 0.0;  // integral of rho against the base measure
  double mean = 0.0;
  MomentTriple central;
};

/// Adaptive Gauss-Kronrod quadrature of the tilted density.  Throws
/// QuadratureFail if an integral misses `rel_tol`.
NumericMoments central_moments_numeric(Family family, double lambda,
                                       const QuadratureSpec& spec = {});

struct InfoGainCheck {
  double x = 0.0;                 // -H'(lambda), the mean
  double information_gain = 0.0;  // I(x) = H(lambda(x)) + lambda(x) x
  double slope = 0.0;             // finite-difference dI/dx
  double residual = 0.0;          // |slope - lambda|
};

/// Builds I(x) through the Legendre relation, inverting x = -H'(lambda) by
/// Newton's method, and checks dI/dx = lambda with Richardson-extrapolated
/// central differences.
InfoGainCheck info_gain_check(Family family, double lambda);

std::string_view to_string(Family family) noexcept;

}  // namespace thermoforms::oracle
