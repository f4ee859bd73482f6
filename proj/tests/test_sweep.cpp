#include <doctest.h>

#include <numbers>
#include <sstream>

#include "ctsim/sweep.hpp"
#include "oracles.hpp"

using namespace ctsim;

namespace {

StateVector plus_state() {
  StateVector v(2);
  v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  return v;
}

}  // namespace

TEST_CASE("zero dissipation gives unit fidelity") {
  CHECK(transfer_fidelity(plus_state(), {0.0, 0.0, 1.2}, false) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(transfer_fidelity(plus_state(), {0.0, 0.0, 1.7}, true) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("reference fidelities are pinned and match the oracle") {
  const Eigen::Vector2cd q(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2);

  const double f1 = transfer_fidelity(plus_state(), {0.05, 0.05, 1.2}, false);
  CHECK(f1 == doctest::Approx(0.9305556358064256).epsilon(1e-9));
  CHECK(f1 == doctest::Approx(oracle::fidelity_five_level(q, 0.05, 0.05, 1.2, false))
                  .epsilon(1e-10));

  const double f2 = transfer_fidelity(plus_state(), {0.2, 0.01, 1.2}, false);
  CHECK(f2 == doctest::Approx(0.8630485380969212).epsilon(1e-9));
  CHECK(f2 == doctest::Approx(oracle::fidelity_five_level(q, 0.2, 0.01, 1.2, false))
                  .epsilon(1e-10));

  const double f3 = transfer_fidelity(plus_state(), {0.05, 0.05, 1.2}, true);
  CHECK(f3 == doctest::Approx(0.9999785828873795).epsilon(1e-9));
}

TEST_CASE("renormalized fidelity dominates the unrenormalized one") {
  for (double gamma : {0.02, 0.1, 0.2})
    for (double kappa : {0.0, 0.05}) {
      const DissipationParams d{gamma, kappa, 1.2};
      CHECK(transfer_fidelity(plus_state(), d, true) >=
            transfer_fidelity(plus_state(), d, false) - 1e-12);
    }
}

TEST_CASE("fidelity decreases monotonically in each rate") {
  double prev = 1.0;
  for (double gamma : {0.0, 0.05, 0.1, 0.15, 0.2}) {
    const double f = transfer_fidelity(plus_state(), {gamma, 0.03, 1.2}, false);
    CHECK(f <= prev + 1e-12);
    prev = f;
  }
  prev = 1.0;
  for (double kappa : {0.0, 0.05, 0.1, 0.15, 0.2}) {
    const double f = transfer_fidelity(plus_state(), {0.03, kappa, 1.2}, false);
    CHECK(f <= prev + 1e-12);
    prev = f;
  }
}

TEST_CASE("transfer_fidelity validates its input") {
  StateVector bad(3);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(transfer_fidelity(bad, {0.0, 0.0, 1.2}, false), std::invalid_argument);
  StateVector unnorm(2);
  unnorm << 2, 0;
  CHECK_THROWS_AS(transfer_fidelity(unnorm, {0.0, 0.0, 1.2}, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(transfer_fidelity(plus_state(), {-0.1, 0.0, 1.2}, false),
                  std::invalid_argument);
}

TEST_CASE("linear_grid endpoints and spacing") {
  const auto g = linear_grid(0.0, 0.2, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(linear_grid(0.3, 0.3, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("run_sweep orders rows by (kappa, gamma) and is deterministic") {
  SweepConfig c;
  c.gamma_grid = {0.0, 0.1};
  c.kappa_values = {0.05, 0.0};
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].kappa_over_h == 0.0);
  CHECK(rows[0].gamma_over_h == 0.0);
  CHECK(rows[1].gamma_over_h == 0.1);
  CHECK(rows[2].kappa_over_h == 0.05);
  CHECK(rows[0].fidelity == doctest::Approx(1.0).epsilon(1e-10));
  for (const auto& r : rows) CHECK(r.s == 1.2);
  const auto again = run_sweep(c);
  for (std::size_t i = 0; i < rows.size(); ++i)
    CHECK(rows[i].fidelity == again[i].fidelity);
}

TEST_CASE("cardinal-average policy averages the six cardinal inputs") {
  SweepConfig c;
  c.gamma_grid = {0.05};
  c.kappa_values = {0.05};
  c.input_state_policy = InputStatePolicy::CardinalAverage;
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 1);
  // direct average over the six cardinal states
  const double inv = 1.0 / std::numbers::sqrt2;
  std::vector<StateVector> cardinals;
  StateVector v(2);
  v << 1, 0;
  cardinals.push_back(v);
  v << 0, 1;
  cardinals.push_back(v);
  v << inv, inv;
  cardinals.push_back(v);
  v << inv, -inv;
  cardinals.push_back(v);
  v << inv, Complex(0, inv);
  cardinals.push_back(v);
  v << inv, Complex(0, -inv);
  cardinals.push_back(v);
  double mean = 0.0;
  for (const auto& s : cardinals)
    mean += transfer_fidelity(s, {0.05, 0.05, 1.2}, false);
  mean /= 6.0;
  CHECK(rows[0].fidelity == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("sweep config validation") {
  SweepConfig c;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // empty grids
  c.gamma_grid = {0.0};
  c.kappa_values = {0.0};
  c.s = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.s = 1.2;
  c.gamma_grid = {-0.1};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("emit_table formats header and rows") {
  std::ostringstream os;
  emit_table({}, os);
  CHECK(os.str() == "gamma_over_h,kappa_over_h,s,fidelity\n");

  std::ostringstream os2;
  emit_table({{0.0, 0.0, 1.2, 1.0}}, os2);
  CHECK(os2.str() ==
        "gamma_over_h,kappa_over_h,s,fidelity\n0,0,1.2,1.000000000000\n");
}

TEST_CASE("parse_table round-trips emit_table") {
  const std::vector<SweepRow> rows{{0.0, 0.0, 1.2, 1.0},
                                   {0.05, 0.05, 1.2, 0.930555635806},
                                   {0.2, 0.01, 1.2, 0.863048548634}};
  std::ostringstream os;
  emit_table(rows, os);
  std::istringstream is(os.str());
  const auto back = parse_table(is);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].gamma_over_h == doctest::Approx(rows[i].gamma_over_h).epsilon(1e-12));
    CHECK(back[i].kappa_over_h == doctest::Approx(rows[i].kappa_over_h).epsilon(1e-12));
    CHECK(back[i].s == doctest::Approx(rows[i].s).epsilon(1e-12));
    CHECK(back[i].fidelity == doctest::Approx(rows[i].fidelity).epsilon(1e-12));
  }
  std::istringstream bad("not,a,header\n");
  CHECK_THROWS_AS(parse_table(bad), std::invalid_argument);
}
