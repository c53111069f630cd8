#include "thermoforms/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "thermoforms/error.hpp"

namespace thermoforms {
namespace {

// I = -S partial with `rank` slots, `v_slots` of them along v.
double info_partial(const Jet4& entropy, int rank, int v_slots) {
  return 0.0 - entropy.derivative(rank - v_slots, v_slots);
}

int count_v(std::initializer_list<int> idx) {
  return static_cast<int>(std::count(idx.begin(), idx.end(), 1));
}

}  // namespace

double determinant(const SymForm2& form) noexcept {
  const auto& c = form.components;
  return c[0] * c[2] - c[1] * c[1];
}

bool is_singular(const SymForm2& form) noexcept {
  const auto& c = form.components;
  const double scale = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  return std::abs(determinant(form)) <= kSingularSigma2 * scale;
}

SymForm2 sigma2(const Jet4& entropy) {
  SymForm2 out;
  for (int k = 0; k <= 2; ++k) out.components[k] = info_partial(entropy, 2, k);
  return out;
}

SymForm3 sigma3(const Jet4& entropy) {
  SymForm3 out;
  for (int k = 0; k <= 3; ++k) out.components[k] = entropy.derivative(3 - k, k) + 0.0;
  return out;
}

SymForm4 sigma4(const Jet4& entropy) {
  const SymForm2 s2 = sigma2(entropy);
  if (is_singular(s2)) throw SingularSigma2("sigma_2 is singular; sigma_4 has a pole here");

  double i2[2][2], inv[2][2], i3[2][2][2];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      i2[a][b] = s2.components[a + b];
      for (int c = 0; c < 2; ++c) i3[a][b][c] = info_partial(entropy, 3, a + b + c);
    }
  }
  const double det = determinant(s2);
  inv[0][0] = i2[1][1] / det;
  inv[1][1] = i2[0][0] / det;
  inv[0][1] = inv[1][0] = -i2[0][1] / det;

  // I_3(.,.,a) inv_ab I_3(b,.,.) contracted over the middle index.
  auto bridge = [&](int p, int q, int r, int s) {
    double acc = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) acc += i3[p][q][a] * inv[a][b] * i3[b][r][s];
    }
    return acc;
  };

  SymForm4 out;
  for (int k = 0; k <= 4; ++k) {
    int idx[4];
    for (int m = 0; m < 4; ++m) idx[m] = (m >= 4 - k) ? 1 : 0;
    const int i = idx[0], j = idx[1], l = idx[2], m = idx[3];
    double value = -info_partial(entropy, 4, count_v({i, j, l, m}));
    // Symmetrizing 3 A_(ij|lm) over four slots leaves the three pairings.
    value += bridge(i, j, l, m) + bridge(i, l, j, m) + bridge(i, m, j, l);
    value += i2[i][j] * i2[l][m] + i2[i][l] * i2[j][m] + i2[i][m] * i2[j][l];
    out.components[k] = value;
  }
  return out;
}

SymForm2 sigma2(const EntropyModel& model, double e, double v) {
  return sigma2(model.derivatives(e, v));
}

SymForm3 sigma3(const EntropyModel& model, double e, double v) {
  return sigma3(model.derivatives(e, v));
}

SymForm4 sigma4(const EntropyModel& model, double e, double v) {
  return sigma4(model.derivatives(e, v));
}

CentralForms central_forms(const EntropyModel& model, double e, double v) {
  const Jet4 s = model.derivatives(e, v);
  CentralForms out{sigma2(s), sigma3(s), std::nullopt};
  if (!is_singular(out.sigma2)) out.sigma4 = sigma4(s);
  return out;
}

MomentTensor::MomentTensor(int dim, int rank) : dim_(dim), rank_(rank) {
  if (dim < 1 || rank < 0) throw DimensionMismatch("moment tensor needs dim >= 1, rank >= 0");
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
  data_.assign(n, 0.0);
}

std::size_t MomentTensor::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank_) {
    throw DimensionMismatch("index length " + std::to_string(index.size()) +
                            " does not match tensor rank " + std::to_string(rank_));
  }
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw DimensionMismatch("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double& MomentTensor::operator[](std::span<const int> index) { return data_[offset(index)]; }

double MomentTensor::operator[](std::span<const int> index) const {
  return data_[offset(index)];
}

MomentTensor MomentTensor::symmetric_product(const MomentTensor& a, const MomentTensor& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("symmetric product of tensors of different dims");
  const int rank = a.rank_ + b.rank_;
  MomentTensor out(a.dim_, rank);

  std::vector<int> index(static_cast<std::size_t>(rank), 0);
  std::vector<int> perm(static_cast<std::size_t>(rank));
  std::vector<int> permuted(static_cast<std::size_t>(rank));
  const std::span<const int> all(permuted);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    // decode flat -> multi-index
    std::size_t rest = flat;
    for (int r = rank - 1; r >= 0; --r) {
      index[r] = static_cast<int>(rest % static_cast<std::size_t>(a.dim_));
      rest /= static_cast<std::size_t>(a.dim_);
    }
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    int count = 0;
    do {
      for (int r = 0; r < rank; ++r) permuted[r] = index[perm[r]];
      sum += a[all.subspan(0, a.rank_)] * b[all.subspan(a.rank_)];
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.data_[flat] = sum / count;
  }
  return out;
}

MomentTensor central_from_raw(std::span<const MomentTensor> raw) {
  const int k = static_cast<int>(raw.size());
  if (k < 1 || k > 4) throw DimensionMismatch("central_from_raw supports orders 1..4");
  const int dim = raw[0].dim();
  for (int i = 0; i < k; ++i) {
    if (raw[i].dim() != dim) throw DimensionMismatch("raw moments live on different spaces");
    if (raw[i].rank() != i + 1) {
      throw DimensionMismatch("raw moment " + std::to_string(i + 1) + " has rank " +
                              std::to_string(raw[i].rank()));
    }
  }

  // powers[j] = m1^(tensor j), already symmetric.
  std::vector<MomentTensor> powers;
  MomentTensor unit(dim, 0);
  unit.flat(0) = 1.0;
  powers.push_back(unit);
  for (int j = 1; j <= k; ++j) powers.push_back(MomentTensor::symmetric_product(powers.back(), raw[0]));

  MomentTensor out(dim, k);
  double binom = 1.0;  // C(k, i)
  for (int i = 0; i <= k; ++i) {
    const MomentTensor& mi = (i == 0) ? unit : raw[i - 1];
    const MomentTensor term = MomentTensor::symmetric_product(mi, powers[k - i]);
    const double coeff = (((k - i) % 2 == 0) ? 1.0 : -1.0) * binom;
    for (std::size_t f = 0; f < out.size(); ++f) out.flat(f) += coeff * term.flat(f);
    binom = binom * (k - i) / (i + 1);
  }
  return out;
}

}  // namespace thermoforms
