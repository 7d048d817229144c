#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qbh/phase_diagram.hpp"

using namespace qbh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("classify: the three phases along theta = 0", "[phase-diagram]") {
  CHECK(classify({1, 0.0, 0.5}).sz == 0);
  CHECK(classify({1, 0.0, 1.5}).sz == 1);
  CHECK(classify({1, 0.0, 2.5}).sz == 2);
  for (double h : {0.5, 1.5, 2.5}) {
    const PhasePoint pt = classify({1, 0.0, h});
    CHECK(pt.magnetization == static_cast<double>(pt.sz));
  }
}

TEST_CASE("sweep: single point equals classify", "[phase-diagram]") {
  SweepSpec spec;
  spec.lambda = 1;
  spec.theta = {0.3, 0.3, 1};
  spec.h = {1.2, 1.2, 1};
  const auto grid = sweep(spec);
  REQUIRE(grid.size() == 1);
  const PhasePoint pt = classify({1, 0.3, 1.2});
  CHECK(grid[0].sz == pt.sz);
  CHECK(grid[0].energy == pt.energy);
}

TEST_CASE("sweep: identical grids for any thread count", "[phase-diagram]") {
  SweepSpec spec;
  spec.lambda = -1;
  spec.theta = {-1.4, 1.4, 41};
  spec.h = {0.0, 3.0, 31};
  const auto serial = sweep(spec, 1);
  const auto parallel = sweep(spec, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].sz == parallel[i].sz);
    CHECK(serial[i].energy == parallel[i].energy);
    CHECK(serial[i].degenerate == parallel[i].degenerate);
  }
}

TEST_CASE("sweep: row-major layout", "[phase-diagram]") {
  SweepSpec spec;
  spec.lambda = 1;
  spec.theta = {-0.5, 0.5, 3};
  spec.h = {0.0, 2.0, 5};
  const auto grid = sweep(spec);
  REQUIRE(grid.size() == 15);
  CHECK(grid[0].theta == Approx(-0.5));
  CHECK(grid[0].h == Approx(0.0));
  CHECK(grid[4].theta == Approx(-0.5));
  CHECK(grid[4].h == Approx(2.0));
  CHECK(grid[5].theta == Approx(0.0));
}

TEST_CASE("sweep: negative coupling excludes the singlet phase for theta > 0",
          "[phase-diagram]") {
  SweepSpec spec;
  spec.lambda = -1;
  spec.theta = {0.05, 1.5, 30};
  spec.h = {0.05, 3.0, 30};
  for (const auto& pt : sweep(spec)) CHECK(pt.sz != 0);
}

TEST_CASE("sweep: zero field row is antiferromagnetic for positive coupling",
          "[phase-diagram]") {
  SweepSpec spec;
  spec.lambda = 1;
  spec.theta = {-1.5, 1.5, 61};
  spec.h = {0.0, 0.0, 1};
  for (const auto& pt : sweep(spec)) CHECK(pt.sz == 0);
}

TEST_CASE("boundaries_1d: frozen crossing fields", "[phase-diagram]") {
  SECTION("two transitions at vanishing biquadratic coupling") {
    const auto b = boundaries_1d(1, 0.0, 3.0, 1e-10);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == Approx(1.0).margin(1e-9));
    CHECK(b[1] == Approx(2.0).margin(1e-9));
    // magnetization jumps 0 -> 1 -> 2
    CHECK(classify({1, 0.0, b[0] - 1e-6}).sz == 0);
    CHECK(classify({1, 0.0, b[0] + 1e-6}).sz == 1);
    CHECK(classify({1, 0.0, b[1] - 1e-6}).sz == 1);
    CHECK(classify({1, 0.0, b[1] + 1e-6}).sz == 2);
  }
  SECTION("the degenerate angle jumps straight to the polarized phase") {
    const auto b = boundaries_1d(1, -kPi / 4, 3.0, 1e-10);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Approx(1.0).margin(1e-8));
    CHECK(classify({1, -kPi / 4, b[0] - 1e-6}).sz == 0);
    CHECK(classify({1, -kPi / 4, b[0] + 1e-6}).sz == 2);
  }
  SECTION("no crossing below the first transition") {
    CHECK(boundaries_1d(1, 0.0, 0.5, 1e-10).empty());
  }
}

TEST_CASE("boundaries_1d: sector changes across every reported field",
          "[phase-diagram][property]") {
  std::mt19937 rng(616);
  std::uniform_real_distribution<double> theta_d(-1.4, 1.4);
  const double tol = 1e-10;
  for (int rep = 0; rep < 25; ++rep) {
    const int lambda = (rng() & 1u) ? 1 : -1;
    const double theta = theta_d(rng);
    for (double b : boundaries_1d(lambda, theta, 3.0, tol)) {
      const int below = classify({lambda, theta, std::max(0.0, b - 10 * tol)}).sz;
      const int above = classify({lambda, theta, b + 10 * tol}).sz;
      REQUIRE(above > below);
    }
  }
}

TEST_CASE("sector label is monotone in the field", "[phase-diagram][property]") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> theta_d(-1.5, 1.5);
  for (int rep = 0; rep < 30; ++rep) {
    const int lambda = (rng() & 1u) ? 1 : -1;
    const double theta = theta_d(rng);
    int prev = -3;
    for (int i = 0; i <= 200; ++i) {
      const int sz = classify({lambda, theta, 3.0 * i / 200.0}).sz;
      if (prev > -3) REQUIRE(sz >= prev);
      prev = sz;
    }
  }
}

TEST_CASE("spectrum_sweep: degeneracy signatures along theta", "[phase-diagram]") {
  const auto rows = spectrum_sweep(1, SweepAxis::theta, 0.0, {-kPi / 4, 0.0, 2});
  REQUIRE(rows.size() == 2);

  // theta0: levels collapse to a doubly degenerate floor and a 7-fold roof
  REQUIRE(rows[0].classes.size() == 2);
  CHECK(rows[0].classes[0].first == Approx(-2.0).margin(1e-8));
  CHECK(rows[0].classes[0].second == 2);
  CHECK(rows[0].classes[1].second == 7);

  // theta = 0: isotropic multiplets 1, 3, 5
  REQUIRE(rows[1].classes.size() == 3);
  CHECK(rows[1].classes[0] == std::pair<double, int>{-2.0, 1});
  CHECK(rows[1].classes[1].second == 3);
  CHECK(rows[1].classes[2].second == 5);
}

TEST_CASE("spectrum_sweep: crossings along the field axis", "[phase-diagram]") {
  const auto rows = spectrum_sweep(1, SweepAxis::h, 0.0, {0.0, 3.0, 4});
  REQUIRE(rows.size() == 4);
  // h = 1 and h = 2 carry degenerate ground levels (sector crossings)
  CHECK(rows[1].x == Approx(1.0));
  CHECK(rows[1].classes.front().second >= 2);
  CHECK(rows[2].x == Approx(2.0));
  CHECK(rows[2].classes.front().second >= 2);
  // between crossings the ground level is unique
  CHECK(rows[0].classes.front().second == 1);
}

TEST_CASE("entanglement_sweep: pinned angles reproduce the limits", "[phase-diagram]") {
  const auto rows = entanglement_sweep(1, {-kPi / 4, 0.0, 2});
  REQUIRE(rows.size() == 2);

  CHECK(rows[0].entropy == Approx(1.0).margin(1e-9));
  CHECK(rows[0].k == Approx(2.0).margin(1e-9));
  CHECK(rows[0].p0 == Approx(0.0).margin(1e-12));
  CHECK(rows[0].is_global_ground);

  CHECK(rows[1].entropy == Approx(std::log2(3.0)).margin(1e-12));
  CHECK(rows[1].k == Approx(3.0).margin(1e-10));
  CHECK(rows[1].f_s == Approx(1.0).margin(1e-12));
  CHECK(rows[1].is_global_ground);
}

TEST_CASE("entanglement_sweep: triplet dominance for negative coupling", "[phase-diagram]") {
  // f_T stays above its 8/9 floor, beats f_S everywhere in the phase, and
  // saturates toward 1 deep in the repulsive biquadratic regime
  const auto rows = entanglement_sweep(-1, {-1.55, -0.01, 40});
  for (const auto& row : rows) {
    CHECK(row.f_t >= 8.0 / 9.0 - 1e-9);
    CHECK(row.f_t > row.f_s);
    CHECK(row.is_global_ground);
  }
  CHECK(rows.front().f_t >= 0.999);
  // outside the antiferromagnetic wedge the sector is no longer global
  const auto above = entanglement_sweep(-1, {0.1, 1.5, 10});
  for (const auto& row : above) CHECK_FALSE(row.is_global_ground);
}

TEST_CASE("ground_state_report: bundles the measures", "[phase-diagram]") {
  const GroundStateReport r = ground_state_report({1, 0.0, 0.0});
  CHECK(r.point.sz == 0);
  CHECK(r.entropy == Approx(std::log2(3.0)).margin(1e-10));
  CHECK(r.k == Approx(3.0).margin(1e-10));
  CHECK(r.f_s == Approx(1.0).margin(1e-10));
  CHECK(r.p0 == Approx(1.0 / 3.0).margin(1e-10));
  CHECK(r.ppm == Approx(1.0 / 3.0).margin(1e-10));

  const GroundStateReport f = ground_state_report({1, 0.0, 3.0});
  CHECK(f.point.sz == 2);
  CHECK(f.entropy == Approx(0.0).margin(1e-12));
  CHECK(f.k == Approx(1.0).margin(1e-12));
}

TEST_CASE("grid and sweep validation", "[phase-diagram]") {
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1.0, 0.0, 5}.validate()), std::invalid_argument);
  SweepSpec bad;
  bad.theta = {-1.7, 0.0, 5};  // outside (-pi/2, pi/2)
  bad.h = {0.0, 1.0, 5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(boundaries_1d(1, 0.0, 3.0, 0.0), std::invalid_argument);
}
