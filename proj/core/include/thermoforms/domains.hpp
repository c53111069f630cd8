#pragma once

// Positivity classification of sigma_2 and sigma_4 and (T, v) grid scans.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermoforms/entropy.hpp"
#include "thermoforms/forms.hpp"

namespace thermoforms {

enum class Sigma2Class : std::uint8_t { positive_definite, degenerate, indefinite_or_negative };

enum class Sigma4Class : std::uint8_t {
  positive_definite,
  degenerate,     // vanishes to tolerance along a coordinate axis, otherwise >= 0
  not_positive,
  undefined_pole  // sigma_2 singular
};

/// Sylvester test: positive definite iff a > 0 and det > 0.  Degenerate when
/// |det| <= kSingularSigma2 * (a^2 + b^2 + c^2).
Sigma2Class classify_sigma2(const SymForm2& form) noexcept;

/// Relative tolerance used by classify_sigma4 on coefficients and Sturm
/// remainders.
inline constexpr double kQuarticTolerance = 1e-12;

/// Positive definite iff g(t) = form((t, 1)^4) has no real root, g(0) > 0 and
/// form((1, 0)^4) > 0.  Real roots are counted with a Sturm sequence.
Sigma4Class classify_sigma4(const SymForm4& form);

/// Uniform axis min..max with `steps` >= 2 points, endpoints included.
struct GridAxis {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double at(int i) const noexcept;
  double spacing() const noexcept { return (max - min) / (steps - 1); }
};

enum BoundaryFlag : std::uint8_t {
  kBoundaryNone = 0,
  kBoundarySigma2 = 1 << 0,
  kBoundarySigma4 = 1 << 1,
  kBoundaryProcess = 1 << 2,
};

struct DomainCell {
  double T = 0.0;
  double v = 0.0;
  double e = 0.0;
  bool valid = false;  // false when (T, v) is outside the model domain
  Sigma2Class sigma2 = Sigma2Class::degenerate;
  Sigma4Class sigma4 = Sigma4Class::undefined_pole;
  int process_count = 0;  // 1, 3, or 2 on the discriminant boundary
  bool process_boundary = false;
  double discriminant = 0.0;
  std::uint8_t boundary = kBoundaryNone;

  bool applicable() const noexcept {
    return valid && sigma2 == Sigma2Class::positive_definite &&
           sigma4 == Sigma4Class::positive_definite;
  }
};

/// Classifies one state given in (T, v).  Out-of-domain points come back
/// with valid == false rather than throwing.
DomainCell classify_point(const EntropyModel& model, double T, double v);

struct DomainGrid {
  GridAxis T;
  GridAxis v;
  std::vector<DomainCell> cells;  // row-major: index = iT * v.steps + iv

  const DomainCell& at(int iT, int iv) const {
    return cells.at(static_cast<std::size_t>(iT) * static_cast<std::size_t>(v.steps) +
                    static_cast<std::size_t>(iv));
  }
  /// Grid node nearest to (T, v).
  std::pair<int, int> nearest(double T, double v) const noexcept;
};

/// Scans the grid with up to `workers` threads (0 = hardware concurrency).
/// Rows are independent; the result does not depend on the worker count.
/// A cell's boundary flags are set where its class differs from any valid
/// 4-neighbour.
DomainGrid scan(const EntropyModel& model, const GridAxis& T, const GridAxis& v,
                unsigned workers = 0);

std::string_view to_string(Sigma2Class c) noexcept;
std::string_view to_string(Sigma4Class c) noexcept;
/// "none" or '|'-joined names: sigma2, sigma4, process.
std::string boundary_string(std::uint8_t flags);

}  // namespace thermoforms
