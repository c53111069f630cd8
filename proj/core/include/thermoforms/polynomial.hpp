#pragma once

// Real-root machinery for the low-degree polynomials that show up in the
// form analysis: the skewness cubic and the binary quartic of sigma_4.

#include <span>
#include <vector>

namespace thermoforms {

/// Coefficients of c3 q^3 + c2 q^2 + c1 q + c0.
struct CubicCoeffs {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double q) const noexcept { return ((c3 * q + c2) * q + c1) * q + c0; }
  double derivative(double q) const noexcept { return (3.0 * c3 * q + 2.0 * c2) * q + c1; }
  /// max |c_i|
  double scale() const noexcept;
  /// 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 for (a,b,c,d) = (c3,c2,c1,c0).
  /// This is also the discriminant of the binary cubic, so it stays
  /// meaningful as c3 -> 0 (one root escapes to infinity).
  double discriminant() const noexcept;
};

struct RootSet {
  std::vector<double> roots;  // finite real roots, ascending
  double discriminant = 0.0;
  /// |c3| negligible: solved as a quadratic or linear equation.
  bool degenerate = false;
  /// |discriminant| inside the tolerance band, i.e. a (near) repeated root.
  bool boundary = false;
};

/// Width of the discriminant band treated as zero.  The test runs on the cubic
/// rescaled in q so its roots are O(1), then divided by max|c_i|: |disc| <= tol there.
inline constexpr double kDiscriminantTolerance = 1e-10;
/// |c3| below this times max|c_i| makes the cubic degenerate.
inline constexpr double kDegenerateLeading = 1e-12;

/// Real roots of a cubic.  Trigonometric form for three roots, Cardano for
/// one, each polished by a Newton step.  Throws AllZero when every |c_i| <= 1e-300.
RootSet solve_cubic(const CubicCoeffs& c);

/// Number of real roots of the binary cubic form counted by discriminant sign:
/// 3 when disc > band, 1 when disc < -band, 2 inside the band.
int cubic_real_root_count(const CubicCoeffs& c) noexcept;

/// Polynomial with coefficients in ascending degree order.
double evaluate_polynomial(std::span<const double> ascending, double x) noexcept;

/// Number of distinct real roots of a polynomial (ascending coefficients) via a
/// Sturm sequence.  Coefficients below `rel_tol` times the largest magnitude
/// of each remainder are treated as zero, which lowers degrees as needed.
int count_distinct_real_roots(std::span<const double> ascending, double rel_tol = 1e-12);

}  // namespace thermoforms
