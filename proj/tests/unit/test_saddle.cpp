#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ferro/saddle.hpp"

using namespace ferro;
constexpr double pi = std::numbers::pi;

TEST_CASE("first type at kappa 10") {
  const GridPtr g = make_grid(1024);
  const SaddleReport r = find_first_type(10.0, g);
  CHECK(validate_report(r).empty());
  CHECK(r.type == SaddleType::first);
  CHECK(r.provenance == Provenance::flow_then_newton);
  CHECK(r.hemispheric);
  CHECK(inside(r.wedge_verdict));
  CHECK(r.profile[512] == pi);
  // Rises above pi on (0, pi/2) and crosses pi at the equator.
  for (int i = 1; i < 512; ++i) REQUIRE(r.profile[i] > pi);
  for (int i = 513; i < 1024; ++i) REQUIRE(r.profile[i] < pi);
  CHECK(r.explicit_direction_value < 0);
  CHECK(r.certified);
  CHECK(r.stability == Stability::saddle);
}

TEST_CASE("first type at kappa 100 is certified") {
  const SaddleReport r = find_first_type(100.0, make_grid(grid_size_for(100.0, 1024)));
  CHECK(r.explicit_direction_value < 0);
  CHECK(validate_report(r).empty());
}

TEST_CASE("first type at kappa 4 runs and is not certified") {
  const SaddleReport r = find_first_type(4.0, make_grid(512));
  CHECK(validate_report(r).empty());
  CHECK_FALSE(r.certified);
  CHECK_THROWS_AS(find_first_type(3.0, make_grid(512)), std::invalid_argument);
}

TEST_CASE("second type at kappa 4 is the exact profile") {
  const GridPtr g = make_grid(1024);
  const SaddleReport r = find_second_type(4.0, g);
  CHECK(r.provenance == Provenance::exact);
  CHECK(r.profile.sup_distance(double_angle(g)) == 0.0);
  CHECK(r.spectrum.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-4));
  CHECK(r.spectrum.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(validate_report(r).empty());
}

TEST_CASE("second type at kappa 10") {
  const SaddleReport r = find_second_type(10.0, make_grid(1024));
  CHECK(validate_report(r).empty());
  CHECK(inside(r.wedge_verdict));
  CHECK(r.explicit_direction_value < 0);
  const auto d = derivative(r.profile);
  for (double x : d) REQUIRE(x >= 1 - 1e-6);
}

TEST_CASE("second type below 4 by continuation") {
  const SaddleReport r = find_second_type(3.9, make_grid(512));
  CHECK(r.provenance == Provenance::continuation);
  CHECK(r.spectrum.morse_index >= 1);
  CHECK(r.spectrum.eigenvalues.back() > 0);
  try {
    find_second_type(1.0, make_grid(256));
    FAIL("expected ContinuationError");
  } catch (const ContinuationError& e) {
    CHECK(e.last_successful_kappa() > 1.0);
    CHECK(e.last_successful_kappa() < 4.0);
  }
  CHECK_THROWS_AS(find_second_type(0.0, make_grid(64)), std::invalid_argument);
}

TEST_CASE("first and second type differ") {
  const GridPtr g = make_grid(512);
  const SaddleReport a = find_first_type(6.0, g);
  const SaddleReport b = find_second_type(6.0, g);
  CHECK(a.profile.sup_distance(b.profile) >= 0.1);
}

TEST_CASE("validate_report catches a wrong profile") {
  const GridPtr g = make_grid(256);
  SaddleReport r = find_second_type(4.0, g);
  r.type = SaddleType::first;
  CHECK_FALSE(validate_report(r).empty());
  SaddleReport s = find_second_type(4.0, g);
  s.kappa = 6.0;  // 2 theta is not stationary there
  CHECK_FALSE(validate_report(s).empty());
}

TEST_CASE("grid sizing") {
  CHECK(grid_size_for(100.0, 64) == 320);
  CHECK(grid_size_for(4.0, 1024) == 1024);
  CHECK(grid_size_for(2.0, 8) == 46);
}

TEST_CASE("sweep") {
  SweepOptions opt;
  opt.n = 512;
  CHECK(sweep({}, {SaddleType::first}).rows.empty());
  CHECK_THROWS_AS(sweep({5.0, 4.0}, {SaddleType::first}), std::invalid_argument);

  const SweepResult r = sweep({4.0, 6.0, 8.0, 10.0}, {SaddleType::second}, opt);
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    CHECK(row.dir_value < 0);
    CHECK(row.status == "certified");
    CHECK(row.profile.has_value());
  }

  const SweepResult both = sweep({3.0, 5.0}, {SaddleType::first, SaddleType::second}, opt);
  REQUIRE(both.rows.size() == 4);
  CHECK(both.rows[0].type == SaddleType::first);
  CHECK(both.rows[0].status == "skipped_kappa_below_4");
  CHECK(both.rows[2].type == SaddleType::second);
  CHECK(both.rows[2].kappa == 3.0);
}

TEST_CASE("names") {
  CHECK(parse_saddle_type("first") == SaddleType::first);
  CHECK_FALSE(parse_saddle_type("third").has_value());
  CHECK(to_string(Provenance::flow_then_newton) == "flow_then_newton");
}
