#include "thermoforms/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thermoforms/error.hpp"

namespace thermoforms {
namespace {

constexpr double kAllZero = 1e-300;

double newton_polish(const CubicCoeffs& c, double q) noexcept {
  const double d = c.derivative(q);
  if (d == 0.0 || !std::isfinite(d)) return q;
  const double next = q - c(q) / d;
  return std::isfinite(next) ? next : q;
}

std::vector<double> solve_quadratic(double a, double b, double c, double scale) {
  std::vector<double> roots;
  if (std::abs(a) <= kDegenerateLeading * scale) {
    if (std::abs(b) <= kDegenerateLeading * scale) return roots;
    roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  // Avoid cancellation: q = -(b + sign(b) sqrt(disc)) / 2.
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(s, b));
  if (q == 0.0) {
    roots.push_back(0.0);
    return roots;
  }
  roots.push_back(q / a);
  roots.push_back(c / q);
  return roots;
}

// Remainder of num / den, both ascending and with nonzero leading terms.
std::vector<double> poly_remainder(std::vector<double> num, const std::vector<double>& den) {
  const std::size_t dn = den.size() - 1;
  while (num.size() > dn) {
    const double factor = num.back() / den.back();
    const std::size_t shift = num.size() - 1 - dn;
    for (std::size_t k = 0; k <= dn; ++k) num[shift + k] -= factor * den[k];
    num.pop_back();
  }
  return num;
}

// Drops leading coefficients that are zero relative to `reference`, then
// rescales to unit max magnitude.  Returns false if nothing survives.
bool normalize(std::vector<double>& p, double reference, double rel_tol) {
  double peak = 0.0;
  for (double c : p) peak = std::max(peak, std::abs(c));
  const double cutoff = rel_tol * std::max(reference, peak);
  while (!p.empty() && std::abs(p.back()) <= cutoff) p.pop_back();
  if (p.empty()) return false;
  peak = 0.0;
  for (double c : p) peak = std::max(peak, std::abs(c));
  for (double& c : p) c /= peak;
  return true;
}

int sign_at_infinity(const std::vector<double>& p, bool negative) {
  const double lead = p.back();
  const bool flip = negative && ((p.size() - 1) % 2 == 1);
  const double s = flip ? -lead : lead;
  return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// q = s t with the Fujiwara scale s = max_k |c_k / c3|^(1/(3-k)), so the
// t-cubic has |t-roots| <= 2 and c3 as its largest coefficient; the result is
// divided by its max magnitude.  Degenerate cubics are only normalized.
CubicCoeffs balanced(const CubicCoeffs& c, double& s) noexcept {
  const double peak = c.scale();
  s = 1.0;
  if (std::abs(c.c3) > kDegenerateLeading * peak) {
    const double a = std::abs(c.c3);
    s = std::max({std::abs(c.c2) / a, std::sqrt(std::abs(c.c1) / a), std::cbrt(std::abs(c.c0) / a)});
    if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
  }
  const CubicCoeffs b{c.c3 * s * s * s, c.c2 * s * s, c.c1 * s, c.c0};
  const double m = b.scale();
  return {b.c3 / m, b.c2 / m, b.c1 / m, b.c0 / m};
}

}  // namespace

double CubicCoeffs::scale() const noexcept {
  return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

double CubicCoeffs::discriminant() const noexcept {
  const double a = c3, b = c2, c = c1, d = c0;
  return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
         27.0 * a * a * d * d;
}

int cubic_real_root_count(const CubicCoeffs& c) noexcept {
  if (!(c.scale() > kAllZero)) return 0;
  double s = 1.0;
  const CubicCoeffs n = balanced(c, s);
  const double disc = n.discriminant();
  if (disc > kDiscriminantTolerance) return 3;
  if (disc < -kDiscriminantTolerance) return 1;
  return 2;
}

RootSet solve_cubic(const CubicCoeffs& c) {
  if (!(c.scale() > kAllZero)) throw AllZero("cubic has no nonzero coefficient");

  double s = 1.0;
  const CubicCoeffs n = balanced(c, s);
  const double disc_n = n.discriminant();

  RootSet out;
  out.discriminant = c.discriminant();
  out.boundary = std::abs(disc_n) <= kDiscriminantTolerance;

  if (std::abs(c.c3) < kDegenerateLeading * c.scale()) {
    out.degenerate = true;
    out.roots = solve_quadratic(n.c2, n.c1, n.c0, 1.0);
  } else {
    const double b = n.c2 / n.c3;
    const double cc = n.c1 / n.c3;
    const double d = n.c0 / n.c3;
    // q = t - b/3 gives t^3 + p t + r = 0.
    const double shift = b / 3.0;
    const double p = cc - b * b / 3.0;
    const double r = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;

    if (out.boundary) {
      if (std::abs(p) <= 1e-12 * std::max(1.0, b * b)) {
        out.roots = {-shift};
      } else {
        out.roots = {3.0 * r / p - shift, -1.5 * r / p - shift};
      }
    } else if (disc_n > 0.0) {
      const double m = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * r / (p * m), -1.0, 1.0);
      const double theta = std::acos(arg) / 3.0;
      constexpr double kThird = 2.0 * std::numbers::pi / 3.0;
      out.roots = {m * std::cos(theta) - shift, m * std::cos(theta - kThird) - shift,
                   m * std::cos(theta - 2.0 * kThird) - shift};
    } else {
      const double half_r = 0.5 * r;
      const double D = std::max(half_r * half_r + p * p * p / 27.0, 0.0);
      const double u = std::cbrt(-half_r - std::copysign(std::sqrt(D), half_r));
      const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
      out.roots = {t - shift};
    }
  }

  for (double& q : out.roots) q = s * newton_polish(n, q);
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

double evaluate_polynomial(std::span<const double> ascending, double x) noexcept {
  double acc = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int count_distinct_real_roots(std::span<const double> ascending, double rel_tol) {
  std::vector<double> p0(ascending.begin(), ascending.end());
  if (!normalize(p0, 0.0, rel_tol)) throw AllZero("polynomial has no nonzero coefficient");
  if (p0.size() == 1) return 0;

  std::vector<double> p1(p0.size() - 1);
  for (std::size_t k = 1; k < p0.size(); ++k) p1[k - 1] = static_cast<double>(k) * p0[k];
  normalize(p1, 0.0, rel_tol);

  std::vector<std::vector<double>> chain{p0, p1};
  while (chain.back().size() > 1) {
    const auto& num = chain[chain.size() - 2];
    auto rem = poly_remainder(num, chain.back());
    for (double& x : rem) x = -x;
    if (!normalize(rem, 1.0, rel_tol)) break;  // exact division: gcd reached
    chain.push_back(std::move(rem));
  }

  std::vector<int> at_neg, at_pos;
  for (const auto& p : chain) {
    at_neg.push_back(sign_at_infinity(p, true));
    at_pos.push_back(sign_at_infinity(p, false));
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

}  // namespace thermoforms
