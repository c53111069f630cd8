#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "support/finite_difference.hpp"
#include "support/printed_cubic.hpp"
#include "thermoforms/error.hpp"
#include "thermoforms/processes.hpp"

using namespace thermoforms;
using thermoforms::testing::close_rel;
using thermoforms::testing::printed_vdw_cubic;
using thermoforms::testing::uniform;

namespace {

std::array<double, 4> as_array(const CubicCoeffs& c) { return {c.c3, c.c2, c.c1, c.c0}; }

double endpoint_v(const EntropyModel& model, double step, double length) {
  return integrate_process(model, 1.0, 1.0, {0, step, length}).points.back().v;
}

}  // namespace

TEST_CASE("ideal gas cubic and its unique root") {
  const auto model = EntropyModel::ideal_gas(3.0);
  const CubicCoeffs c = cubic_at(model, 2.0, 0.5);
  CHECK(c.c3 == doctest::Approx(2.0 / 0.125));
  CHECK(c.c2 == 0.0);
  CHECK(c.c1 == 0.0);
  CHECK(c.c0 == doctest::Approx(3.0 / 8.0));

  for (int sample = 0; sample < 200; ++sample) {
    const double n = uniform(1.0, 15.0), e = uniform(0.1, 10.0), v = uniform(0.1, 10.0);
    const auto m = EntropyModel::ideal_gas(n);
    const ProcessCount count = root_count(m, e, v);
    CHECK(count.count == 1);
    CHECK_FALSE(count.boundary);
    const RootSet rs = solve_cubic(cubic_at(m, e, v));
    REQUIRE(rs.roots.size() == 1);
    const double expected = -std::cbrt(n / 2.0) * v / e;
    CHECK(close_rel(rs.roots[0], expected, 1e-12));
  }
}

TEST_CASE("van der Waals cubic at the critical point") {
  const CubicCoeffs c = cubic_at(EntropyModel::van_der_waals(3.0), 1.0, 1.0);
  CHECK(192.0 * c.c3 == doctest::Approx(1944.0).epsilon(1e-13));
  CHECK(192.0 * c.c2 == doctest::Approx(-216.0).epsilon(1e-13));
  CHECK(192.0 * c.c1 == doctest::Approx(-216.0).epsilon(1e-13));
  CHECK(192.0 * c.c0 == doctest::Approx(24.0).epsilon(1e-13));
  const auto printed = printed_vdw_cubic(1.0L, 1.0L, 3.0L);
  CHECK(printed[0] == 1944.0L);
  CHECK(printed[1] == -216.0L);
  CHECK(printed[2] == -216.0L);
  CHECK(printed[3] == 24.0L);

  const RootSet rs = solve_cubic(c);
  REQUIRE(rs.roots.size() == 3);
  CHECK(std::abs(rs.roots[0] + 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(rs.roots[1] - 1.0 / 9.0) <= 1e-12);
  CHECK(std::abs(rs.roots[2] - 1.0 / 3.0) <= 1e-12);
  CHECK(root_count(EntropyModel::van_der_waals(3.0), 1.0, 1.0).count == 3);
}

TEST_CASE("assembled cubic is proportional to the printed polynomial") {
  auto check_point = [](double e, double v, double n) {
    const auto c = as_array(cubic_at(EntropyModel::van_der_waals(n), e, v));
    const auto printed = printed_vdw_cubic(e, v, n);
    const long double mu = printed[0] / c[0];
    // The factor is q-independent and known in closed form.
    const long double closed = 3.0L * std::pow((long double)v, 3) *
                               std::pow(3.0L * v - 1.0L, 3) * std::pow(e * (long double)v + 3.0L, 3) /
                               8.0L;
    CHECK(close_rel(static_cast<double>(mu), static_cast<double>(closed), 1e-9));
    for (int k = 1; k < 4; ++k) {
      const double ratio = static_cast<double>(printed[k] / c[k]);
      INFO("(e,v,n)=(" << e << "," << v << "," << n << ") coefficient " << k);
      CHECK(close_rel(ratio, static_cast<double>(mu), 1e-9));
    }
  };
  check_point(1.0, 1.0, 13.0);
  for (int sample = 0; sample < 200; ++sample) {
    const double n = uniform(1.0, 15.0), T = uniform(0.2, 3.0), v = uniform(0.4, 10.0);
    check_point(EntropyModel::van_der_waals(n).energy_from_temperature(T, v), v, n);
  }
}

TEST_CASE("sigma_3 on (1, q) is the cubic, bit for bit") {
  for (int sample = 0; sample < 500; ++sample) {
    const double n = uniform(1.0, 15.0), v = uniform(0.4, 10.0);
    const auto model = EntropyModel::van_der_waals(n);
    const double e = model.energy_from_temperature(uniform(0.2, 3.0), v);
    const SymForm3 s3 = sigma3(model, e, v);
    const CubicCoeffs c = cubic_at(model, e, v);
    const double q = uniform(-5.0, 5.0);
    CHECK(s3(1.0, q) == c(q));
  }
}

TEST_CASE("returned roots annihilate sigma_3") {
  for (int sample = 0; sample < 500; ++sample) {
    const double n = uniform(1.0, 15.0), v = uniform(0.4, 10.0);
    const auto model = EntropyModel::van_der_waals(n);
    const double e = model.energy_from_temperature(uniform(0.2, 1.5), v);
    const SymForm3 s3 = sigma3(model, e, v);
    const RootSet rs = solve_cubic(cubic_at(model, e, v));
    for (double q : rs.roots) {
      const double scale = cubic_at(model, e, v).scale() * std::max(1.0, std::pow(std::abs(q), 3));
      CHECK(std::abs(s3(1.0, q)) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("one-root region at large volume") {
  const auto model = EntropyModel::van_der_waals(3.0);
  for (double v : {6.0, 8.0, 10.0}) {
    const double e = model.energy_from_temperature(0.8, v);
    CHECK(root_count(model, e, v).count == 1);
  }
}

TEST_CASE("ideal gas process matches the closed-form curve") {
  const auto model = EntropyModel::ideal_gas(3.0);
  const ProcessCurve curve = integrate_process(model, 1.0, 1.0, {0, 1e-3, 1.0});
  CHECK(curve.termination == Termination::max_length);
  REQUIRE(curve.points.size() == 1001);
  const auto& end = curve.points.back();
  CHECK(end.e == doctest::Approx(2.0).epsilon(1e-12));
  const double exact = std::pow(end.e, -std::cbrt(1.5));
  CHECK(std::abs(end.v - exact) <= 1e-6);
  CHECK(end.q == doctest::Approx(-std::cbrt(1.5) * end.v / end.e).epsilon(1e-12));

  // Backwards in e.
  const ProcessCurve back = integrate_process(model, 1.0, 1.0, {0, -1e-3, 0.5});
  CHECK(back.points.back().e == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(back.points.back().v - std::pow(0.5, -std::cbrt(1.5))) <= 1e-6);
}

TEST_CASE("RK4 converges at fourth order") {
  const auto model = EntropyModel::ideal_gas(3.0);
  const double exact = std::pow(2.0, -std::cbrt(1.5));
  const double e1 = std::abs(endpoint_v(model, 0.1, 1.0) - exact);
  const double e2 = std::abs(endpoint_v(model, 0.05, 1.0) - exact);
  const double e4 = std::abs(endpoint_v(model, 0.025, 1.0) - exact);
  const double order1 = std::log2(e1 / e2);
  const double order2 = std::log2(e2 / e4);
  MESSAGE("observed orders " << order1 << ", " << order2);
  CHECK(order1 >= 3.5);
  CHECK(order2 >= 3.5);

  // Same check without the closed form, on a van der Waals branch.
  const auto vdw = EntropyModel::van_der_waals(3.0);
  const double e0 = vdw.energy_from_temperature(1.5, 2.0);
  auto end = [&](double h) {
    return integrate_process(vdw, e0, 2.0, {0, h, 0.4}).points.back().v;
  };
  const double a = end(0.04), b = end(0.02), c = end(0.01);
  const double order = std::log2(std::abs(a - b) / std::abs(b - c));
  MESSAGE("observed van der Waals order " << order);
  CHECK(order >= 3.5);
}

TEST_CASE("degenerate integration requests return the start point") {
  const auto model = EntropyModel::ideal_gas(3.0);
  const ProcessCurve zero_step = integrate_process(model, 1.0, 1.0, {0, 0.0, 1.0});
  REQUIRE(zero_step.points.size() == 1);
  CHECK(zero_step.points[0].e == 1.0);
  CHECK(zero_step.points[0].v == 1.0);
  CHECK(integrate_process(model, 1.0, 1.0, {0, 1e-3, 0.0}).points.size() == 1);
}

TEST_CASE("integration errors and terminations") {
  CHECK_THROWS_AS(integrate_process(EntropyModel::van_der_waals(3.0), 1.0, 0.3, {}), DomainError);
  CHECK_THROWS_AS(integrate_process(EntropyModel::ideal_gas(3.0), 1.0, 1.0, {1, 1e-3, 1.0}),
                  std::out_of_range);
  // Walking towards e = 0 leaves the ideal-gas domain.
  const ProcessCurve exit = integrate_process(EntropyModel::ideal_gas(3.0), 0.01, 1.0,
                                              {0, -1e-3, 1.0});
  CHECK(exit.termination == Termination::domain_exit);
  CHECK(exit.points.back().e > 0.0);
  CHECK(std::strcmp(to_string(Termination::branch_lost), "branch_lost") == 0);
  CHECK(std::strcmp(to_string(Termination::domain_exit), "domain_exit") == 0);
  CHECK(std::strcmp(to_string(Termination::max_length), "max_length") == 0);
}

TEST_CASE("three van der Waals branches from the critical point") {
  const auto model = EntropyModel::van_der_waals(3.0);
  std::vector<ProcessCurve> curves;
  for (std::size_t branch = 0; branch < 3; ++branch) {
    curves.push_back(integrate_process(model, 1.0, 1.0, {branch, 1e-3, 0.3}));
    const auto& pts = curves.back().points;
    REQUIRE(pts.size() > 10);
    // The branch keeps its ascending label while the root count stays 3.
    for (const auto& p : pts) {
      const RootSet rs = solve_cubic(cubic_at(model, p.e, p.v));
      if (rs.roots.size() != 3) break;
      CHECK(std::abs(rs.roots[branch] - p.q) <= 1e-9 * std::max(1.0, std::abs(p.q)));
    }
    // Halving the step gives the same curve.
    const ProcessCurve half = integrate_process(model, 1.0, 1.0, {branch, 5e-4, 0.3});
    const std::size_t common = std::min(pts.size() - 1, (half.points.size() - 1) / 2);
    CHECK(std::abs(half.points[2 * common].v - pts[common].v) <= 1e-8);
  }
  const std::size_t shortest =
      std::min({curves[0].points.size(), curves[1].points.size(), curves[2].points.size()});
  const double v0 = curves[0].points[shortest - 1].v;
  const double v1 = curves[1].points[shortest - 1].v;
  const double v2 = curves[2].points[shortest - 1].v;
  CHECK(v0 < v1);
  CHECK(v1 < v2);
}
