#pragma once

// Truncated bivariate Taylor arithmetic ("jets") in the variables (e, v).
//
// A Jet4 carries every partial derivative d^(i+j) f / de^i dv^j with
// i + j <= 4 of some scalar function f at a fixed point.  Arithmetic and the
// elementary functions below propagate those derivatives exactly up to
// rounding, following the Leibniz rule for products and Faa di Bruno's
// formula (as a truncated power series composition) for log/pow/reciprocal.
//
// Internally the slots hold normalized Taylor coefficients
// f_ij / (i! j!), which makes multiplication a plain truncated polynomial
// product.  The public accessors speak in terms of partial derivatives.

#include <array>
#include <cstddef>

namespace thermoforms {

enum class Axis { e, v };

class Jet4 {
 public:
  static constexpr int kOrder = 4;
  static constexpr std::size_t kSize = 15;

  /// Storage slot of the multi-index (i, j); requires i + j <= kOrder.
  static constexpr std::size_t slot(int i, int j) noexcept {
    const int degree = i + j;
    return static_cast<std::size_t>(degree * (degree + 1) / 2 + j);
  }

  /// The zero jet.
  constexpr Jet4() noexcept = default;

  static Jet4 constant(double c) noexcept;
  /// The coordinate function `which`, evaluated at `value`.
  static Jet4 variable(Axis which, double value) noexcept;
  /// Builds a jet from partial derivatives indexed by slot(i, j).
  static Jet4 from_derivatives(const std::array<double, kSize>& derivs) noexcept;

  double value() const noexcept { return taylor_[0]; }
  /// Partial derivative d^(i+j) f / de^i dv^j at the expansion point.
  double derivative(int i, int j) const;
  /// Normalized Taylor coefficient f_ij / (i! j!).
  double taylor(int i, int j) const;
  std::array<double, kSize> derivatives() const noexcept;

  Jet4& operator+=(const Jet4& rhs) noexcept;
  Jet4& operator-=(const Jet4& rhs) noexcept;
  Jet4& operator*=(const Jet4& rhs) noexcept;
  Jet4& operator/=(const Jet4& rhs);
  Jet4& operator*=(double s) noexcept;

  friend Jet4 operator+(Jet4 a, const Jet4& b) noexcept { return a += b; }
  friend Jet4 operator-(Jet4 a, const Jet4& b) noexcept { return a -= b; }
  friend Jet4 operator*(const Jet4& a, const Jet4& b) noexcept;
  friend Jet4 operator/(const Jet4& a, const Jet4& b);
  friend Jet4 operator-(const Jet4& a) noexcept;

  friend Jet4 operator+(Jet4 a, double b) noexcept { return a += constant(b); }
  friend Jet4 operator+(double a, Jet4 b) noexcept { return b += constant(a); }
  friend Jet4 operator-(Jet4 a, double b) noexcept { return a -= constant(b); }
  friend Jet4 operator-(double a, const Jet4& b) noexcept { return constant(a) - b; }
  friend Jet4 operator*(Jet4 a, double b) noexcept { return a *= b; }
  friend Jet4 operator*(double a, Jet4 b) noexcept { return b *= a; }
  friend Jet4 operator/(const Jet4& a, double b) { return a / constant(b); }
  friend Jet4 operator/(double a, const Jet4& b) { return constant(a) / b; }

  /// Composition g(f) given g and its first four derivatives at f.value().
  /// `g_derivs[k]` is the k-th derivative of the outer function.
  Jet4 compose(const std::array<double, kOrder + 1>& g_derivs) const noexcept;

 private:
  std::array<double, kSize> taylor_{};
};

/// 1/a.  Throws DivisionByZero when a.value() == 0.
Jet4 reciprocal(const Jet4& a);
/// Natural log.  Throws DomainError when a.value() <= 0.
Jet4 log(const Jet4& a);
/// a^r.  Integer exponents accept any base (negative integers need a nonzero
/// base); non-integer exponents need a.value() > 0.
Jet4 pow(const Jet4& a, double r);

}  // namespace thermoforms
