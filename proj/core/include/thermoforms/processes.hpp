#pragma once

// Symmetric processes: directions X = d/de + q d/dv along which the skewness
// form vanishes, sigma_3(X, X, X) = 0.  Expanding gives the cubic
//
//   S_vvv q^3 + 3 S_evv q^2 + 3 S_eev q + S_eee = 0.

#include <cstddef>
#include <vector>

#include "thermoforms/entropy.hpp"
#include "thermoforms/forms.hpp"
#include "thermoforms/polynomial.hpp"

namespace thermoforms {

/// Cubic coefficients assembled from the sigma_3 components, so that
/// sigma3(1, q) == cubic(q) for every q.
CubicCoeffs cubic_from_sigma3(const SymForm3& sigma3) noexcept;
CubicCoeffs cubic_at(const EntropyModel& model, double e, double v);

struct ProcessCount {
  int count = 0;          // 1 or 3 away from the boundary, 2 on it
  bool boundary = false;  // |disc| inside the tolerance band
  double discriminant = 0.0;
};

ProcessCount root_count(const EntropyModel& model, double e, double v);

enum class Termination {
  max_length,   // reached the requested parameter length
  domain_exit,  // next step left the model's validity region
  branch_lost,  // the root count changed, so the branch is no longer tracked
};

struct ProcessPoint {
  double e = 0.0;
  double v = 0.0;
  double q = 0.0;  // slope dv/de of the tracked branch
};

struct ProcessCurve {
  std::vector<ProcessPoint> points;  // starts with the requested start point
  Termination termination = Termination::max_length;
};

struct IntegrationOptions {
  std::size_t branch = 0;  // index into the ascending roots at the start point
  double step = 1e-3;      // signed increment of e per step
  double max_length = 1.0; // total |e| travel
};

/// Integrates de = dt, dv = q(e, v) dt with classic RK4.  Every slope
/// evaluation picks the root nearest to the previous slope.  Throws
/// DomainError if the start lies outside the model domain and
/// std::out_of_range if `branch` does not exist there.
ProcessCurve integrate_process(const EntropyModel& model, double e0, double v0,
                               const IntegrationOptions& options);

const char* to_string(Termination t) noexcept;

}  // namespace thermoforms
