#include "thermoforms/jet.hpp"

#include <cmath>
#include <string>

#include "thermoforms/error.hpp"

namespace thermoforms {
namespace {

constexpr std::array<double, 5> kFactorial = {1.0, 1.0, 2.0, 6.0, 24.0};

void check_index(int i, int j) {
  if (i < 0 || j < 0 || i + j > Jet4::kOrder) {
    throw DomainError("jet multi-index (" + std::to_string(i) + "," + std::to_string(j) +
                      ") exceeds total order 4");
  }
}

}  // namespace

Jet4 Jet4::constant(double c) noexcept {
  Jet4 out;
  out.taylor_[0] = c;
  return out;
}

Jet4 Jet4::variable(Axis which, double value) noexcept {
  Jet4 out;
  out.taylor_[0] = value;
  out.taylor_[which == Axis::e ? slot(1, 0) : slot(0, 1)] = 1.0;
  return out;
}

Jet4 Jet4::from_derivatives(const std::array<double, kSize>& derivs) noexcept {
  Jet4 out;
  for (int i = 0; i <= kOrder; ++i) {
    for (int j = 0; i + j <= kOrder; ++j) {
      out.taylor_[slot(i, j)] = derivs[slot(i, j)] / (kFactorial[i] * kFactorial[j]);
    }
  }
  return out;
}

double Jet4::derivative(int i, int j) const {
  check_index(i, j);
  return taylor_[slot(i, j)] * kFactorial[i] * kFactorial[j];
}

double Jet4::taylor(int i, int j) const {
  check_index(i, j);
  return taylor_[slot(i, j)];
}

std::array<double, Jet4::kSize> Jet4::derivatives() const noexcept {
  std::array<double, kSize> out{};
  for (int i = 0; i <= kOrder; ++i) {
    for (int j = 0; i + j <= kOrder; ++j) {
      out[slot(i, j)] = taylor_[slot(i, j)] * kFactorial[i] * kFactorial[j];
    }
  }
  return out;
}

Jet4& Jet4::operator+=(const Jet4& rhs) noexcept {
  for (std::size_t k = 0; k < kSize; ++k) taylor_[k] += rhs.taylor_[k];
  return *this;
}

Jet4& Jet4::operator-=(const Jet4& rhs) noexcept {
  for (std::size_t k = 0; k < kSize; ++k) taylor_[k] -= rhs.taylor_[k];
  return *this;
}

Jet4& Jet4::operator*=(double s) noexcept {
  for (auto& c : taylor_) c *= s;
  return *this;
}

Jet4 operator*(const Jet4& a, const Jet4& b) noexcept {
  Jet4 out;
  for (int i1 = 0; i1 <= Jet4::kOrder; ++i1) {
    for (int j1 = 0; i1 + j1 <= Jet4::kOrder; ++j1) {
      const double lhs = a.taylor_[Jet4::slot(i1, j1)];
      if (lhs == 0.0) continue;
      for (int i2 = 0; i1 + j1 + i2 <= Jet4::kOrder; ++i2) {
        for (int j2 = 0; i1 + j1 + i2 + j2 <= Jet4::kOrder; ++j2) {
          out.taylor_[Jet4::slot(i1 + i2, j1 + j2)] += lhs * b.taylor_[Jet4::slot(i2, j2)];
        }
      }
    }
  }
  return out;
}

Jet4& Jet4::operator*=(const Jet4& rhs) noexcept { return *this = *this * rhs; }

Jet4& Jet4::operator/=(const Jet4& rhs) { return *this = *this / rhs; }

Jet4 operator/(const Jet4& a, const Jet4& b) { return a * reciprocal(b); }

Jet4 operator-(const Jet4& a) noexcept {
  Jet4 out = a;
  out *= -1.0;
  return out;
}

Jet4 Jet4::compose(const std::array<double, kOrder + 1>& g_derivs) const noexcept {
  // g(f0 + d) = sum_k g^(k)(f0) / k! * d^k, with d the non-constant part of f.
  Jet4 delta = *this;
  delta.taylor_[0] = 0.0;

  Jet4 out = constant(g_derivs[0]);
  Jet4 power = constant(1.0);
  for (int k = 1; k <= kOrder; ++k) {
    power = power * delta;
    Jet4 term = power;
    term *= g_derivs[k] / kFactorial[k];
    out += term;
  }
  return out;
}

Jet4 reciprocal(const Jet4& a) {
  const double x = a.value();
  if (x == 0.0) throw DivisionByZero("jet division by a function vanishing at the point");
  // d^k/dx^k (1/x) = (-1)^k k! / x^(k+1)
  std::array<double, 5> g{};
  double inv_pow = 1.0 / x;
  for (int k = 0; k <= Jet4::kOrder; ++k) {
    g[k] = ((k % 2 == 0) ? 1.0 : -1.0) * kFactorial[k] * inv_pow;
    inv_pow /= x;
  }
  return a.compose(g);
}

Jet4 log(const Jet4& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    if (std::isnan(x)) return a.compose({x, x, x, x, x});
    throw DomainError("log of a non-positive jet value " + std::to_string(x));
  }
  // d^k/dx^k ln x = (-1)^(k-1) (k-1)! / x^k
  std::array<double, 5> g{};
  g[0] = std::log(x);
  double inv_pow = 1.0 / x;
  for (int k = 1; k <= Jet4::kOrder; ++k) {
    g[k] = ((k % 2 == 1) ? 1.0 : -1.0) * kFactorial[k - 1] * inv_pow;
    inv_pow /= x;
  }
  return a.compose(g);
}

namespace {

Jet4 integer_power(Jet4 base, long exponent) {
  Jet4 out = Jet4::constant(1.0);
  while (exponent > 0) {
    if (exponent & 1L) out = out * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return out;
}

}  // namespace

Jet4 pow(const Jet4& a, double r) {
  const double x = a.value();
  if (r == std::trunc(r) && std::abs(r) <= 64.0) {
    const long n = static_cast<long>(r);
    if (n >= 0) return integer_power(a, n);
    return reciprocal(integer_power(a, -n));
  }
  if (!(x > 0.0)) {
    if (std::isnan(x)) return a.compose({x, x, x, x, x});
    throw DomainError("non-integer power of a non-positive jet value " + std::to_string(x));
  }
  // d^k/dx^k x^r = r (r-1) ... (r-k+1) x^(r-k)
  std::array<double, 5> g{};
  double falling = 1.0;
  for (int k = 0; k <= Jet4::kOrder; ++k) {
    g[k] = falling * std::pow(x, r - k);
    falling *= (r - k);
  }
  return a.compose(g);
}

}  // namespace thermoforms
