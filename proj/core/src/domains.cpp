#include "thermoforms/domains.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "thermoforms/error.hpp"
#include "thermoforms/polynomial.hpp"
#include "thermoforms/processes.hpp"

namespace thermoforms {

Sigma2Class classify_sigma2(const SymForm2& form) noexcept {
  if (is_singular(form)) return Sigma2Class::degenerate;
  if (form.components[0] > 0.0 && determinant(form) > 0.0) return Sigma2Class::positive_definite;
  return Sigma2Class::indefinite_or_negative;
}

Sigma4Class classify_sigma4(const SymForm4& form) {
  const auto poly = form.polynomial();
  // g(t) = form((t, 1)^4) in ascending powers of t: g(0) is the pure-v
  // coefficient, the leading one the pure-e coefficient.
  std::vector<double> asc(poly.rbegin(), poly.rend());
  double scale = 0.0;
  for (double c : asc) {
    if (!std::isfinite(c)) return Sigma4Class::not_positive;
    scale = std::max(scale, std::abs(c));
  }
  if (!(scale > 1e-300)) return Sigma4Class::degenerate;
  const double tol = kQuarticTolerance * scale;

  // Zero coefficients at either end mean the form vanishes along d/dv (low
  // end) or d/de (high end).  An odd number of them is a sign change.
  std::size_t low = 0;
  while (low < asc.size() && std::abs(asc[low]) <= tol) ++low;
  if (low == asc.size()) return Sigma4Class::degenerate;
  std::size_t high = 0;
  while (std::abs(asc[asc.size() - 1 - high]) <= tol) ++high;
  if (low % 2 == 1 || high % 2 == 1) return Sigma4Class::not_positive;

  const std::vector<double> core(asc.begin() + static_cast<std::ptrdiff_t>(low),
                                 asc.end() - static_cast<std::ptrdiff_t>(high));
  if (!(core.front() > 0.0) || !(core.back() > 0.0)) return Sigma4Class::not_positive;
  if (core.size() > 1 && count_distinct_real_roots(core, kQuarticTolerance) > 0) {
    return Sigma4Class::not_positive;
  }
  return (low > 0 || high > 0) ? Sigma4Class::degenerate : Sigma4Class::positive_definite;
}

double GridAxis::at(int i) const noexcept {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::pair<int, int> DomainGrid::nearest(double t, double vv) const noexcept {
  auto index = [](const GridAxis& axis, double x) {
    const double f = (x - axis.min) / axis.spacing();
    return std::clamp(static_cast<int>(std::lround(f)), 0, axis.steps - 1);
  };
  return {index(T, t), index(v, vv)};
}

DomainCell classify_point(const EntropyModel& model, double T, double v) {
  DomainCell cell;
  cell.T = T;
  cell.v = v;
  try {
    cell.e = model.energy_from_temperature(T, v);
    const Jet4 s = model.derivatives(cell.e, v);
    const SymForm2 s2 = sigma2(s);
    cell.sigma2 = classify_sigma2(s2);
    cell.sigma4 = (cell.sigma2 == Sigma2Class::degenerate) ? Sigma4Class::undefined_pole
                                                          : classify_sigma4(sigma4(s));
    const CubicCoeffs cubic = cubic_from_sigma3(sigma3(s));
    cell.process_count = cubic_real_root_count(cubic);
    cell.process_boundary = cell.process_count == 2;
    cell.discriminant = cubic.discriminant();
    cell.valid = true;
  } catch (const Error&) {
    cell.valid = false;
  }
  return cell;
}

DomainGrid scan(const EntropyModel& model, const GridAxis& T, const GridAxis& v,
                unsigned workers) {
  if (T.steps < 2 || v.steps < 2 || !(T.min < T.max) || !(v.min < v.max)) {
    throw DomainError("scan axes need min < max and at least 2 steps");
  }
  DomainGrid grid{T, v, {}};
  const auto rows = static_cast<std::size_t>(T.steps);
  const auto cols = static_cast<std::size_t>(v.steps);
  grid.cells.resize(rows * cols);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, rows));

  std::atomic<std::size_t> next_row{0};
  auto work = [&] {
    for (std::size_t i = next_row++; i < rows; i = next_row++) {
      const double t = T.at(static_cast<int>(i));
      for (std::size_t j = 0; j < cols; ++j) {
        grid.cells[i * cols + j] = classify_point(model, t, v.at(static_cast<int>(j)));
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      DomainCell& cell = grid.cells[i * cols + j];
      if (!cell.valid) continue;
      std::uint8_t flags = kBoundaryNone;
      if (cell.sigma2 == Sigma2Class::degenerate) flags |= kBoundarySigma2 | kBoundarySigma4;
      if (cell.process_boundary) flags |= kBoundaryProcess;
      auto compare = [&](std::size_t ni, std::size_t nj) {
        const DomainCell& other = grid.cells[ni * cols + nj];
        if (!other.valid) return;
        if (other.sigma2 != cell.sigma2) flags |= kBoundarySigma2;
        if (other.sigma4 != cell.sigma4) flags |= kBoundarySigma4;
        if (other.process_count != cell.process_count) flags |= kBoundaryProcess;
      };
      if (i > 0) compare(i - 1, j);
      if (i + 1 < rows) compare(i + 1, j);
      if (j > 0) compare(i, j - 1);
      if (j + 1 < cols) compare(i, j + 1);
      cell.boundary = flags;
    }
  }
  return grid;
}

std::string_view to_string(Sigma2Class c) noexcept {
  switch (c) {
    case Sigma2Class::positive_definite:
      return "positive_definite";
    case Sigma2Class::degenerate:
      return "degenerate";
    case Sigma2Class::indefinite_or_negative:
      return "indefinite_or_negative";
  }
  return "unknown";
}

std::string_view to_string(Sigma4Class c) noexcept {
  switch (c) {
    case Sigma4Class::positive_definite:
      return "positive_definite";
    case Sigma4Class::degenerate:
      return "degenerate";
    case Sigma4Class::not_positive:
      return "not_positive";
    case Sigma4Class::undefined_pole:
      return "undefined_pole";
  }
  return "unknown";
}

std::string boundary_string(std::uint8_t flags) {
  if (flags == kBoundaryNone) return "none";
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += '|';
    out += name;
  };
  if (flags & kBoundarySigma2) add("sigma2");
  if (flags & kBoundarySigma4) add("sigma4");
  if (flags & kBoundaryProcess) add("process");
  return out;
}

}  // namespace thermoforms
