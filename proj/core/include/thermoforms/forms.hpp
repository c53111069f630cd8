#pragma once

// Central-moment symmetric forms on the thermodynamic Legendrian surface,
// written in the (e, v) coordinates with I = -S:
//
//   sigma_2 = I_ij dx^i dx^j
//   sigma_3 = -I_ijk dx^i dx^j dx^k
//   sigma_4(X^4) = -I_4(X^4) + 3 I_3(X,X,.)^T I_2^{-1} I_3(X,X,.) + 3 I_2(X,X)^2
//
// The sigma_4 expression is the pullback of "-H'''' + 3 sigma_2 . sigma_2"
// through the Legendre map lambda = grad I.  It has a pole where sigma_2 is
// singular.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "thermoforms/entropy.hpp"
#include "thermoforms/jet.hpp"

namespace thermoforms {

/// Fully symmetric rank-R tensor on the (e, v) plane.  component(k) is the
/// entry with k slots along d/dv and R - k slots along d/de.
template <int Rank>
struct SymForm {
  static constexpr int kRank = Rank;
  std::array<double, Rank + 1> components{};

  double component(int k) const { return components.at(static_cast<std::size_t>(k)); }

  /// Coefficients of the homogeneous polynomial X -> form(X, ..., X) with
  /// binomial multiplicities: entry k multiplies x1^(R-k) x2^k.
  std::array<double, Rank + 1> polynomial() const noexcept {
    std::array<double, Rank + 1> out{};
    double binom = 1.0;
    for (int k = 0; k <= Rank; ++k) {
      out[k] = binom * components[k];
      binom = binom * (Rank - k) / (k + 1);
    }
    return out;
  }

  static SymForm from_polynomial(const std::array<double, Rank + 1>& poly) noexcept {
    SymForm out;
    double binom = 1.0;
    for (int k = 0; k <= Rank; ++k) {
      out.components[k] = poly[k] / binom;
      binom = binom * (Rank - k) / (k + 1);
    }
    return out;
  }

  /// form(X, ..., X) for X = x1 d/de + x2 d/dv, by Horner's rule in x2.
  /// With x1 == 1 this is bit-identical to Horner evaluation of the
  /// polynomial() coefficients in x2.
  double operator()(double x1, double x2) const noexcept {
    const auto poly = polynomial();
    std::array<double, Rank + 1> x1_pow{};
    x1_pow[0] = 1.0;
    for (int k = 1; k <= Rank; ++k) x1_pow[k] = x1_pow[k - 1] * x1;
    double acc = poly[Rank];
    for (int k = Rank - 1; k >= 0; --k) acc = acc * x2 + poly[k] * x1_pow[Rank - k];
    return acc;
  }

  /// max |component|
  double scale() const noexcept {
    double s = 0.0;
    for (double c : components) s = std::max(s, c < 0.0 ? -c : c);
    return s;
  }
};

using SymForm2 = SymForm<2>;
using SymForm3 = SymForm<3>;
using SymForm4 = SymForm<4>;

/// |det| <= kSingularSigma2 * (a^2 + b^2 + c^2) marks sigma_2 as singular.
inline constexpr double kSingularSigma2 = 1e-12;

double determinant(const SymForm2& form) noexcept;
bool is_singular(const SymForm2& form) noexcept;

SymForm2 sigma2(const Jet4& entropy);
SymForm3 sigma3(const Jet4& entropy);
/// Throws SingularSigma2 when sigma_2 is singular at the point.
SymForm4 sigma4(const Jet4& entropy);

SymForm2 sigma2(const EntropyModel& model, double e, double v);
SymForm3 sigma3(const EntropyModel& model, double e, double v);
SymForm4 sigma4(const EntropyModel& model, double e, double v);

struct CentralForms {
  SymForm2 sigma2;
  SymForm3 sigma3;
  std::optional<SymForm4> sigma4;  // empty at the sigma_2 pole
};

/// All three forms from a single derivative evaluation.
CentralForms central_forms(const EntropyModel& model, double e, double v);

/// Dense (not compressed) tensor of a given rank over a `dim`-dimensional
/// space, stored row-major.  Used for raw and central moments in any
/// dimension.
class MomentTensor {
 public:
  MomentTensor() = default;
  MomentTensor(int dim, int rank);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator[](std::span<const int> index);
  double operator[](std::span<const int> index) const;
  double& flat(std::size_t i) { return data_.at(i); }
  double flat(std::size_t i) const { return data_.at(i); }
  const std::vector<double>& data() const noexcept { return data_; }

  /// Symmetrized tensor product (a . b).
  static MomentTensor symmetric_product(const MomentTensor& a, const MomentTensor& b);

 private:
  std::size_t offset(std::span<const int> index) const;

  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

/// sigma_k = sum_i (-1)^(k-i) C(k,i) m_i . m_1^(k-i), with m_0 = 1.
/// `raw[i]` is the raw moment m_(i+1); k = raw.size() must be 1..4.
/// Throws DimensionMismatch on inconsistent dims or ranks.
MomentTensor central_from_raw(std::span<const MomentTensor> raw);

}  // namespace thermoforms
