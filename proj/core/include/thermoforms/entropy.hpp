#pragma once

#include <functional>
#include <string>

#include "thermoforms/jet.hpp"

namespace thermoforms {

enum class ModelKind { ideal_gas, van_der_waals, custom };

/// Thermodynamic state on the Legendrian surface: s = S(e,v), T = 1/S_e,
/// p = S_v / S_e.
struct StatePoint {
  double e = 0.0;
  double v = 0.0;
  double s = 0.0;
  double T = 0.0;
  double p = 0.0;
};

/// Entropy S(e, v) of a gas model together with its validity region.
///
/// Ideal gas:       S = ln(e^(n/2) v),                      e > 0, v > 0.
/// van der Waals:   S = ln((e + 3/v)^(4n/3) (3v - 1)^(8/3)), v > 1/3, e + 3/v > 0
///                  (reduced variables, critical point at T = v = p = 1).
///
/// The two gas models have closed-form partial derivatives up to order 4;
/// `jet_derivatives` recomputes them through jet arithmetic as a cross-check.
/// Custom models supply a jet-expressible function and are always
/// differentiated with jets.
class EntropyModel {
 public:
  using JetFunction = std::function<Jet4(const Jet4& e, const Jet4& v)>;
  using DomainPredicate = std::function<bool(double e, double v)>;

  static EntropyModel ideal_gas(double n);
  static EntropyModel van_der_waals(double n);
  /// `in_domain` defaults to "everything is admissible".
  static EntropyModel custom(std::string name, JetFunction entropy,
                             DomainPredicate in_domain = {});

  ModelKind kind() const noexcept { return kind_; }
  /// Degrees of freedom; 0 for custom models.
  double n() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }

  bool in_domain(double e, double v) const;

  /// All partials of S to total order 4.  Throws DomainError outside the
  /// validity region.
  Jet4 derivatives(double e, double v) const;
  /// Same partials obtained by running the entropy expression through jets.
  Jet4 jet_derivatives(double e, double v) const;

  double entropy(double e, double v) const { return derivatives(e, v).value(); }
  /// I = -S, the information gain of the extremal distribution.
  double information_gain(double e, double v) const { return -entropy(e, v); }

  /// Throws NonPositiveTemperature when S_e <= 0.
  StatePoint state(double e, double v) const;

  /// Inverts T = 1/S_e at fixed v.  Closed form for the gas models, Newton
  /// iteration for custom ones.
  double energy_from_temperature(double T, double v) const;

 private:
  EntropyModel(ModelKind kind, double n, std::string name, JetFunction f, DomainPredicate d);

  void require_domain(double e, double v) const;

  ModelKind kind_;
  double n_;
  std::string name_;
  JetFunction jet_entropy_;
  DomainPredicate domain_;
};

/// Reduced van der Waals pressure 8T/(3v - 1) - 3/v^2.
double vdw_pressure(double T, double v) noexcept;
/// Temperature at which the reduced van der Waals Hessian of S degenerates
/// (the spinodal): T = (3v - 1)^2 / (4 v^3).
double vdw_spinodal_temperature(double v) noexcept;

}  // namespace thermoforms
