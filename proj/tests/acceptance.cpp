// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria, exit 1 if any fails
//   acceptance N [M ...]  run only the listed criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "support/finite_difference.hpp"
#include "support/legendre_oracle.hpp"
#include "support/printed_cubic.hpp"
#include "thermoforms/domains.hpp"
#include "thermoforms/forms.hpp"
#include "thermoforms/oracle.hpp"
#include "thermoforms/processes.hpp"

using namespace thermoforms;
using thermoforms::testing::uniform;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

const GridAxis kFigT{0.2, 1.4, 400};
const GridAxis kFigV{0.4, 10.0, 400};

// --- 1 -------------------------------------------------------------------
Verdict ideal_forms() {
  double worst = 0.0;
  bool zeros = true;
  for (int k = 0; k < 100; ++k) {
    const double e = uniform(0.1, 10.0), v = uniform(0.1, 10.0);
    const double n = 1.0 + std::floor(uniform(0.0, 15.0));
    const auto model = EntropyModel::ideal_gas(n);
    const auto p1 = sigma2(model, e, v).polynomial();
    const auto p2 = sigma4(model, e, v).polynomial();
    worst = std::max({worst, rel_err(p1[0], n / (2 * e * e)), rel_err(p1[2], 1 / (v * v)),
                      rel_err(p2[0], 3 * n * (n + 4) / (4 * std::pow(e, 4))),
                      rel_err(p2[2], 3 * n / (v * v * e * e)), rel_err(p2[4], 9 / std::pow(v, 4))});
    zeros = zeros && p1[1] == 0.0 && p2[1] == 0.0 && p2[3] == 0.0;
  }
  return {worst <= 1e-10 && zeros,
          fmt("100 random (e,v,n): worst relative error %.2e vs P1/P2, odd terms %s", worst,
              zeros ? "exactly zero" : "NONZERO")};
}

// --- 2 -------------------------------------------------------------------
Verdict ideal_process() {
  double worst = 0.0;
  int not_one = 0;
  for (int k = 0; k < 1000; ++k) {
    const double e = uniform(0.1, 10.0), v = uniform(0.1, 10.0), n = uniform(0.5, 15.0);
    const auto model = EntropyModel::ideal_gas(n);
    const RootSet rs = solve_cubic(cubic_at(model, e, v));
    if (rs.roots.size() != 1 || root_count(model, e, v).count != 1) {
      ++not_one;
      continue;
    }
    worst = std::max(worst, rel_err(rs.roots[0], -std::cbrt(n / 2) * v / e));
  }
  const DomainGrid grid = scan(EntropyModel::ideal_gas(3.0), {0.05, 5.0, 60}, {0.05, 20.0, 60});
  for (const auto& c : grid.cells) not_one += (c.process_count != 1);
  return {not_one == 0 && worst <= 1e-12,
          fmt("1000 random points + 3600-cell scan: %d points without exactly one root; worst "
              "relative error vs -(n/2)^(1/3) v/e %.2e",
              not_one, worst)};
}

// --- 3 -------------------------------------------------------------------
Verdict vdw_cubic() {
  double worst_ratio = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double n = uniform(1.0, 15.0), T = uniform(0.2, 3.0), v = uniform(0.4, 10.0);
    const auto model = EntropyModel::van_der_waals(n);
    const double e = model.energy_from_temperature(T, v);
    const CubicCoeffs c = cubic_at(model, e, v);
    const auto printed = testing::printed_vdw_cubic(e, v, n);
    const std::array<double, 4> ours = {c.c3, c.c2, c.c1, c.c0};
    const double mu = static_cast<double>(printed[0] / ours[0]);
    for (int i = 1; i < 4; ++i) {
      worst_ratio = std::max(worst_ratio, rel_err(static_cast<double>(printed[i] / ours[i]), mu));
    }
  }
  const CubicCoeffs c = cubic_at(EntropyModel::van_der_waals(3.0), 1.0, 1.0);
  const double norm = c.c0;
  const double coeff_err = std::max({std::abs(c.c3 / norm - 81), std::abs(c.c2 / norm + 9),
                                     std::abs(c.c1 / norm + 9), std::abs(c.c0 / norm - 1)}) / 81;
  const RootSet rs = solve_cubic(c);
  double root_err = INFINITY;
  if (rs.roots.size() == 3) {
    root_err = std::max({std::abs(rs.roots[0] + 1.0 / 3), std::abs(rs.roots[1] - 1.0 / 9),
                         std::abs(rs.roots[2] - 1.0 / 3)});
  }
  return {worst_ratio <= 1e-9 && coeff_err <= 1e-12 && root_err <= 1e-12,
          fmt("200 random (e,v,n): worst coefficient-ratio spread %.2e; at (1,1,3) normalized "
              "cubic error %.2e, roots {-1/3,1/9,1/3} error %.2e",
              worst_ratio, coeff_err, root_err)};
}

// --- 4 -------------------------------------------------------------------
Verdict oracle_theorems() {
  using namespace thermoforms::oracle;
  double worst = 0.0;
  for (Family family : {Family::gaussian, Family::exponential}) {
    for (int k = 0; k < 50; ++k) {
      const double lambda = family == Family::gaussian ? uniform(-6.0, 6.0) : uniform(-6.0, 0.95);
      const MomentTriple a = central_moments_analytic(family, lambda);
      const NumericMoments n = central_moments_numeric(family, lambda);
      const double floor3 = std::pow(a.sigma2, 1.5);
      worst = std::max({worst, rel_err(n.central.sigma2, a.sigma2),
                        std::abs(n.central.sigma3 - a.sigma3) / std::max(std::abs(a.sigma3), floor3),
                        rel_err(n.central.sigma4, a.sigma4)});
    }
  }
  const MomentTriple e0 = central_moments_analytic(Family::exponential, 0.0);
  const bool exact = e0.sigma2 == 1.0 && e0.sigma3 == 2.0 && e0.sigma4 == 9.0;
  return {worst <= 1e-6 && exact,
          fmt("50 lambda per family: worst analytic/quadrature relative deviation %.2e; "
              "exponential at 0 gives (%g, %g, %g)",
              worst, e0.sigma2, e0.sigma3, e0.sigma4)};
}

// --- 5 -------------------------------------------------------------------
Verdict sigma2_boundary() {
  const DomainGrid grid = scan(EntropyModel::van_der_waals(3.0), kFigT, kFigV);
  const double dT = kFigT.spacing(), dv = kFigV.spacing();
  int flagged = 0, off_curve = 0;
  std::vector<bool> column_hit(static_cast<std::size_t>(kFigV.steps), false);
  for (int i = 0; i < kFigT.steps; ++i) {
    for (int j = 0; j < kFigV.steps; ++j) {
      const DomainCell& c = grid.at(i, j);
      if (!c.valid || !(c.boundary & kBoundarySigma2)) continue;
      ++flagged;
      column_hit[static_cast<std::size_t>(j)] = true;
      // Does T_spin(v') meet [T - dT, T + dT] for some v' in [v - dv, v + dv]?
      double lo = INFINITY, hi = -INFINITY;
      for (int s = 0; s <= 64; ++s) {
        const double t = vdw_spinodal_temperature(c.v - dv + 2 * dv * s / 64.0);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      if (hi < c.T - dT || lo > c.T + dT) ++off_curve;
    }
  }
  int columns_missing = 0;
  for (int j = 0; j < kFigV.steps; ++j) {
    const double t = vdw_spinodal_temperature(kFigV.at(j));
    if (t > kFigT.min + dT && t < kFigT.max - dT && !column_hit[static_cast<std::size_t>(j)])
      ++columns_missing;
  }
  const bool through_critical =
      classify_point(EntropyModel::van_der_waals(3.0), 1.0, 1.0).sigma2 == Sigma2Class::degenerate;
  const auto [ci, cj] = grid.nearest(1.0, 1.0);
  bool flagged_near_critical = false;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj)
      flagged_near_critical =
          flagged_near_critical || (grid.at(ci + di, cj + dj).boundary & kBoundarySigma2);
  return {flagged > 0 && off_curve == 0 && columns_missing == 0 && through_critical &&
              flagged_near_critical,
          fmt("%d sigma2-boundary cells, %d farther than one cell from T=(3v-1)^2/4v^3, %d "
              "spinodal columns unflagged; (1,1) degenerate: %s, flagged cell next to (1,1): %s",
              flagged, off_curve, columns_missing, through_critical ? "yes" : "no",
              flagged_near_critical ? "yes" : "no")};
}

// --- 6 -------------------------------------------------------------------
Verdict critical_exclusion() {
  const auto model = EntropyModel::van_der_waals(3.0);
  const DomainGrid grid = scan(model, kFigT, kFigV);
  int pink = 0;
  for (const auto& c : grid.cells) pink += c.applicable();
  const auto [ci, cj] = grid.nearest(1.0, 1.0);
  const DomainCell& cell = grid.at(ci, cj);
  const DomainCell exact = classify_point(model, 1.0, 1.0);
  int pink_neighbours = 0;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) pink_neighbours += grid.at(ci + di, cj + dj).applicable();
  return {pink > 0 && !cell.applicable(),
          fmt("pink cells %d; cell containing (1,1) is node (T=%.17g, v=%.17g) with sigma2 %s, "
              "sigma4 %s (%d of its 3x3 block pink); the exact point (1,1) has sigma2 %s, sigma4 %s",
              pink, cell.T, cell.v, std::string(to_string(cell.sigma2)).c_str(),
              std::string(to_string(cell.sigma4)).c_str(), pink_neighbours,
              std::string(to_string(exact.sigma2)).c_str(),
              std::string(to_string(exact.sigma4)).c_str())};
}

// --- 7 -------------------------------------------------------------------
std::vector<int> component_sizes(const DomainGrid& grid, const std::function<bool(const DomainCell&)>& in) {
  const int rows = grid.T.steps, cols = grid.v.steps;
  std::vector<int> label(static_cast<std::size_t>(rows * cols), -1);
  std::vector<int> sizes;
  for (int start = 0; start < rows * cols; ++start) {
    if (label[start] >= 0 || !in(grid.cells[start])) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    std::vector<int> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      ++sizes[id];
      const int i = k / cols, j = k % cols;
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& p : nb) {
        if (p[0] < 0 || p[1] < 0 || p[0] >= rows || p[1] >= cols) continue;
        const int m = p[0] * cols + p[1];
        if (label[m] < 0 && in(grid.cells[m])) {
          label[m] = id;
          stack.push_back(m);
        }
      }
    }
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

Verdict root_topology() {
  auto three_in_pd = [](const DomainCell& c) {
    return c.valid && c.sigma2 == Sigma2Class::positive_definite && c.process_count == 3;
  };
  const DomainGrid g3 = scan(EntropyModel::van_der_waals(3.0), kFigT, kFigV);
  int three = 0, one = 0;
  for (const auto& c : g3.cells) {
    if (!c.valid || c.sigma2 != Sigma2Class::positive_definite) continue;
    three += c.process_count == 3;
    one += c.process_count == 1;
  }
  // Upward rays from 3-root sigma2-pd cells: count 3 <-> 1 switches.
  int rays = 0, multi = 0, max_changes = 0;
  for (int j = 0; j < kFigV.steps; ++j) {
    for (int i = 0; i < kFigT.steps; ++i) {
      if (!three_in_pd(g3.at(i, j))) continue;
      ++rays;
      int last = 3, changes = 0;
      for (int k = i + 1; k < kFigT.steps; ++k) {
        const DomainCell& c = g3.at(k, j);
        if (!c.valid || c.process_count == 2) continue;
        if (c.process_count != last) {
          ++changes;
          last = c.process_count;
        }
      }
      multi += changes > 1;
      max_changes = std::max(max_changes, changes);
    }
  }
  const auto comps13 = component_sizes(scan(EntropyModel::van_der_waals(13.0), kFigT, kFigV),
                                       three_in_pd);
  std::string sizes;
  for (std::size_t k = 0; k < comps13.size() && k < 6; ++k)
    sizes += (k ? "," : "") + std::to_string(comps13[k]);
  return {three > 0 && one > 0 && multi == 0 && comps13.size() >= 2,
          fmt("n=3: %d three-root and %d one-root sigma2-pd cells, %d upward rays, max %d "
              "crossings; n=13: %zu components of three-root sigma2-pd cells (sizes %s)",
              three, one, rays, max_changes, comps13.size(), sizes.c_str())};
}

// --- 8 -------------------------------------------------------------------
Verdict cross_module() {
  double worst_root = 0.0;
  for (double n : {3.0, 13.0}) {
    const auto model = EntropyModel::van_der_waals(n);
    const DomainGrid grid = scan(model, {0.2, 1.4, 100}, {0.4, 10.0, 100});
    for (const auto& cell : grid.cells) {
      if (!cell.valid) continue;
      const SymForm3 s3 = sigma3(model, cell.e, cell.v);
      const CubicCoeffs c = cubic_at(model, cell.e, cell.v);
      for (double q : solve_cubic(c).roots) {
        worst_root = std::max(worst_root, std::abs(s3(1.0, q)) / c.scale());
      }
    }
  }
  double worst_s4 = 0.0;
  for (ModelKind kind : {ModelKind::ideal_gas, ModelKind::van_der_waals}) {
    for (int k = 0; k < 50; ++k) {
      const double n = uniform(1.0, 15.0);
      const auto model = kind == ModelKind::ideal_gas ? EntropyModel::ideal_gas(n)
                                                      : EntropyModel::van_der_waals(n);
      double e = 0.0, v = 0.0;
      if (kind == ModelKind::ideal_gas) {
        e = uniform(0.1, 10.0);
        v = uniform(0.1, 10.0);
      } else {
        for (;;) {
          v = uniform(0.45, 10.0);
          const double T = uniform(0.2, 2.0), spin = vdw_spinodal_temperature(v);
          if (std::abs(T - spin) < 0.05 * spin) continue;
          e = model.energy_from_temperature(T, v);
          break;
        }
      }
      const SymForm4 exact = sigma4(model, e, v);
      const SymForm4 numeric = testing::LegendreOracle(model, e, v).converged_sigma4();
      for (int c = 0; c <= 4; ++c) {
        const double err = std::abs(exact.components[c] - numeric.components[c]) /
                           std::max(std::abs(exact.components[c]), 1e-6 * exact.scale());
        worst_s4 = std::max(worst_s4, err);
      }
    }
  }
  return {worst_root <= 1e-8 && worst_s4 <= 1e-4,
          fmt("worst |sigma3(1,q)| / scale over 20000 scan points %.2e; worst sigma4 deviation "
              "from the Legendre-pullback oracle over 2x50 points %.2e",
              worst_root, worst_s4)};
}

// --- 9 -------------------------------------------------------------------
Verdict determinism() {
#ifndef THERMOFORMS_CLI_PATH
  return {false, "CLI not built"};
#else
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "thermoforms_acceptance";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> scans = {
      {"domains_csv", "domains --model vdw --n 3 --T 0.2:1.4:200 --v 0.4:10:200"},
      {"domains_json", "domains --model vdw --n 13 --T 0.2:1.4:120 --v 0.4:10:120 --format json"},
      {"processes_csv", "processes --model vdw --n 3 --grid 0.2:1.4:200,0.4:10:200"},
      {"processes_json", "processes --model ideal --n 5 --grid 0.2:1.4:60,0.4:10:60 --format json"},
  };
  int identical = 0, runs = 0;
  std::size_t bytes = 0;
  bool failed = false;
  for (const auto& [name, args] : scans) {
    std::string reference;
    for (const char* threads : {"1", "2", "3", "8"}) {
      const fs::path out = dir / (name + "_" + threads);
      const std::string cmd = std::string("THERMOFORMS_THREADS=") + threads + " " +
                              THERMOFORMS_CLI_PATH + " " + args + " --out " + out.string();
      const int status = std::system(cmd.c_str());
      ++runs;
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        failed = true;
        continue;
      }
      std::ifstream in(out, std::ios::binary);
      std::ostringstream text;
      text << in.rdbuf();
      if (reference.empty()) {
        reference = text.str();
        bytes += reference.size();
        ++identical;
      } else if (text.str() == reference) {
        ++identical;
      }
    }
  }
  fs::remove_all(dir);
  return {!failed && identical == runs,
          fmt("%d of %d scan runs byte-identical to the single-thread output (4 scans x "
              "THERMOFORMS_THREADS in {1,2,3,8}, %zu reference bytes)",
              identical, runs, bytes)};
#endif
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {1, "ideal-gas forms match P1 and P2", 1.0, ideal_forms},
    {2, "ideal-gas symmetric process", 1.0, ideal_process},
    {3, "vdW cubic regression", 5.0, vdw_cubic},
    {4, "oracle theorem validation", 10.0, oracle_theorems},
    {5, "vdW sigma2 boundary", 60.0, sigma2_boundary},
    {6, "critical-point exclusion", 60.0, critical_exclusion},
    {7, "root-count topology", 120.0, root_topology},
    {8, "cross-module consistency", 600.0, cross_module},
    {9, "determinism across worker counts", 600.0, determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::atoi(argv[k]));

  int failures = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL",
                c.id, c.title, v.detail.c_str(), secs, c.budget_s, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
