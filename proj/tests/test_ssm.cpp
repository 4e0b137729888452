#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sspred/models.hpp"
#include "sspred/ssm.hpp"
#include "support/oracles.hpp"
#include "support/sim.hpp"

using namespace sspred;

namespace {

StateSpaceModel scalar_model(double q, double r, double x0, double v0) {
  StateSpaceModel m;
  m.F = Matrix(1, 1);
  m.F(0, 0) = 1.0;
  m.G = m.F;
  m.H = m.F;
  m.Q = Matrix(1, 1);
  m.Q(0, 0) = q;
  m.R = r;
  m.x0 = {x0};
  m.V0 = Matrix(1, 1);
  m.V0(0, 0) = v0;
  return m;
}

FilterState filtered_state(std::vector<double> mean, Matrix cov, std::size_t t) {
  FilterState s;
  s.mean = std::move(mean);
  s.cov = std::move(cov);
  s.time = t;
  s.cond = t;
  return s;
}

std::vector<double> gains_at(const StateSpaceModel& model, const FilterRun& run,
                             std::size_t i) {
  const std::vector<double> h = model.h_row();
  const Matrix& v = run.predicted[i].cov;
  const double d = run.innovation_var[i];
  std::vector<double> k(h.size(), 0.0);
  for (std::size_t a = 0; a < h.size(); ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < h.size(); ++b) s += v(a, b) * h[b];
    k[a] = s / d;
  }
  return k;
}

}  // namespace

TEST_CASE("predict_one") {
  SECTION("identity transition with no noise leaves the state unchanged") {
    StateSpaceModel m = scalar_model(0.0, 1.0, 0.0, 1.0);
    m.F = Matrix::identity(1);
    const FilterState s = filtered_state({3.5}, m.V0, 4);
    const FilterState p = predict_one(m, s);
    CHECK(p.mean[0] == 3.5);
    CHECK(p.cov(0, 0) == 1.0);
    CHECK(p.time == 5);
    CHECK(p.cond == 4);
  }

  SECTION("random walk accumulates the system noise variance") {
    const StateSpaceModel m = scalar_model(0.25, 1.0, 0.0, 2.0);
    const FilterState p = predict_one(m, filtered_state({1.0}, m.V0, 0));
    CHECK(p.cov(0, 0) == 2.25);
  }

  SECTION("second-order trend transition extrapolates linearly") {
    const ModelBlock b = build_trend(2, 0.0);
    StateSpaceModel m;
    m.F = b.F;
    m.G = Matrix(2, 1);
    m.G(0, 0) = 1.0;
    m.H = Matrix(1, 2);
    m.H(0, 0) = 1.0;
    m.Q = Matrix(1, 1);
    m.R = 1.0;
    m.x0 = {0.0, 0.0};
    m.V0 = Matrix(2, 2);
    const FilterState p = predict_one(m, filtered_state({3.0, 1.0}, Matrix(2, 2), 1));
    CHECK(p.mean[0] == 5.0);
    CHECK(p.mean[1] == 3.0);
  }

  SECTION("dimension mismatch is a structured error") {
    const StateSpaceModel m = scalar_model(0.1, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(predict_one(m, filtered_state({1.0, 2.0}, Matrix(2, 2), 0)), Error);
  }
}

TEST_CASE("filter_step") {
  SECTION("an uninformative observation leaves the state unchanged") {
    StateSpaceModel m = scalar_model(0.0, 1e12, 0.0, 1.0);
    FilterState s = filtered_state({2.0}, m.V0, 1);
    s.cond = 0;  // one-step-predicted
    const FilterUpdate u = filter_step(m, s, 100.0);
    CHECK(std::abs(u.state.mean[0] - 2.0) <= 1e-6);
    CHECK(std::abs(u.state.cov(0, 0) - 1.0) <= 1e-6);
  }

  SECTION("unit scalar case halves the variance") {
    StateSpaceModel m = scalar_model(0.0, 1.0, 0.0, 1.0);
    FilterState s = filtered_state({0.0}, m.V0, 1);
    s.cond = 0;
    const FilterUpdate u = filter_step(m, s, 1.0);
    CHECK(u.state.mean[0] == 0.5);  // gain 0.5
    CHECK(u.state.cov(0, 0) == 0.5);
    CHECK(u.innovation == 1.0);
    CHECK(u.innovation_var == 2.0);
  }

  SECTION("filtered means match the batch conditional-moment oracle") {
    std::mt19937_64 rng(21);
    const StateSpaceModel m = scalar_model(0.4, 1.3, 0.7, 2.0);
    const Series y = testsim::simulate(m, 12, rng);
    const FilterRun run = run_filter(m, y);
    for (std::size_t t = 1; t <= y.size(); ++t) {
      const oracle::CondState cond = oracle::conditional_state(m, y.values, t, t);
      CHECK(run.filtered[t - 1].mean[0] == Catch::Approx(cond.mean[0]).margin(1e-9));
      CHECK(run.filtered[t - 1].cov(0, 0) == Catch::Approx(cond.cov(0, 0)).margin(1e-9));
    }
  }
}

TEST_CASE("run_filter") {
  SECTION("all observations missing degenerates to pure prediction") {
    const StateSpaceModel m = scalar_model(0.5, 1.0, 0.0, 1.0);
    Series y;
    y.values.assign(5, std::numeric_limits<double>::quiet_NaN());
    y.observed.assign(5, 0);
    const FilterRun run = run_filter(m, y);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(run.filtered[i].cov(0, 0) == Catch::Approx(1.0 + 0.5 * (i + 1.0)).epsilon(1e-15));
      CHECK(std::isnan(run.innovation[i]));
    }
  }

  SECTION("single observation uses the propagated prior") {
    const StateSpaceModel m = scalar_model(0.5, 2.0, 0.0, 1.0);
    const Series y = Series::from_values({4.0});
    const FilterRun run = run_filter(m, y);
    REQUIRE(run.size() == 1);
    CHECK(run.innovation[0] == 4.0);
    CHECK(run.innovation_var[0] == Catch::Approx(1.0 + 0.5 + 2.0).epsilon(1e-15));
  }

  SECTION("a non-finite value that is not flagged missing is rejected") {
    const StateSpaceModel m = scalar_model(0.5, 2.0, 0.0, 1.0);
    Series y = Series::from_values({1.0, 2.0});
    y.values[1] = std::numeric_limits<double>::infinity();
    try {
      run_filter(m, y);
      FAIL("expected E_NONFINITE");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::nonfinite_value);
    }
  }
}

TEST_CASE("predict_horizon") {
  SECTION("first-order trend variance grows by tau^2 per lead, exactly") {
    const double tau_sq = 0.37;
    StateSpaceModel m = scalar_model(tau_sq, 1.4, 0.0, 0.8);
    const FilterState s = filtered_state({1.0}, m.V0, 3);
    const HorizonPrediction pred = predict_horizon(m, s, 50);
    for (std::size_t j = 1; j <= 50; ++j) {
      CHECK(std::abs(pred.states[j - 1].cov(0, 0) - (0.8 + j * tau_sq)) <= 1e-12);
      CHECK(std::abs(pred.obs_var[j - 1] - (0.8 + j * tau_sq + 1.4)) <= 1e-12);
    }
  }

  SECTION("static state gives a constant predicted mean") {
    StateSpaceModel m = scalar_model(0.0, 1.0, 0.0, 1.0);
    const HorizonPrediction pred = predict_horizon(m, filtered_state({2.5}, m.V0, 0), 7);
    for (double mean : pred.obs_mean) CHECK(mean == 2.5);
  }

  SECTION("second-order trend extrapolates the local line") {
    const ModelBlock b = build_trend(2, 0.0);
    StateSpaceModel m;
    m.F = b.F;
    m.G = Matrix(2, 1);
    m.G(0, 0) = 1.0;
    m.H = Matrix(1, 2);
    m.H(0, 0) = 1.0;
    m.Q = Matrix(1, 1);
    m.R = 1.0;
    m.x0 = {0.0, 0.0};
    m.V0 = Matrix(2, 2);
    const double level = 10.0, slope = 0.5;
    const HorizonPrediction pred =
        predict_horizon(m, filtered_state({level, level - slope}, Matrix(2, 2), 2), 10);
    for (std::size_t j = 1; j <= 10; ++j)
      CHECK(pred.obs_mean[j - 1] == Catch::Approx(level + j * slope).epsilon(1e-13));
  }

  SECTION("lead zero is rejected") {
    StateSpaceModel m = scalar_model(0.0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(predict_horizon(m, filtered_state({0.0}, m.V0, 0), 0), Error);
  }
}

TEST_CASE("run_smoother") {
  SECTION("deterministic second-order trend smooths to the terminal line") {
    ModelSpec spec;
    spec.m1 = 2;
    spec.theta.tau1_sq = 0.0;
    spec.theta.sigma_sq = 1.0;
    spec.v0_diag = 1e7;
    const StateSpaceModel m = compose(spec);
    std::vector<double> y(12);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3.0 + 0.25 * (i + 1.0);
    const Series series = Series::from_values(y);
    const FilterRun run = run_filter(m, series);
    const SmootherResult sm = run_smoother(m, run);
    for (std::size_t i = 0; i < y.size(); ++i)
      CHECK(sm.states[i].mean[0] == Catch::Approx(y[i]).margin(1e-5));
  }

  SECTION("a single observation smooths to the filtered state") {
    const StateSpaceModel m = scalar_model(0.5, 1.0, 0.0, 1.0);
    const Series y = Series::from_values({2.0});
    const FilterRun run = run_filter(m, y);
    const SmootherResult sm = run_smoother(m, run);
    CHECK(sm.states[0].mean == run.filtered[0].mean);
    CHECK(sm.states[0].cov == run.filtered[0].cov);
  }

  SECTION("smoothed moments match the joint-Gaussian conditional oracle") {
    std::mt19937_64 rng(22);
    const StateSpaceModel m = scalar_model(0.6, 0.9, 0.3, 1.5);
    const Series y = testsim::simulate(m, 10, rng);
    const FilterRun run = run_filter(m, y);
    const SmootherResult sm = run_smoother(m, run);
    for (std::size_t t = 1; t <= y.size(); ++t) {
      const oracle::CondState cond = oracle::conditional_state(m, y.values, t, y.size());
      CHECK(sm.states[t - 1].mean[0] == Catch::Approx(cond.mean[0]).margin(1e-9));
      CHECK(sm.states[t - 1].cov(0, 0) == Catch::Approx(cond.cov(0, 0)).margin(1e-9));
    }
  }
}

TEST_CASE("filtering reduces observation-space variance step by step") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const StateSpaceModel m = oracle::random_stable_model(rng);
    const Series y = testsim::simulate(m, 30, rng);
    const FilterRun run = run_filter(m, y);
    const SmootherResult sm = run_smoother(m, run);
    const std::vector<double> h = m.h_row();
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double pred = quad_form(run.predicted[i].cov, h);
      const double filt = quad_form(run.filtered[i].cov, h);
      const double smoothed = quad_form(sm.states[i].cov, h);
      CHECK(filt <= pred + 1e-9 * (1.0 + pred));
      CHECK(smoothed <= filt + 1e-9 * (1.0 + filt));
    }
  }
}

TEST_CASE("gain and state paths are invariant under joint noise rescaling") {
  std::mt19937_64 rng(24);
  for (double c : {0.1, 10.0}) {
    const StateSpaceModel m = oracle::random_stable_model(rng);
    const Series y = testsim::simulate(m, 25, rng);

    StateSpaceModel scaled = m;
    scaled.Q = c * m.Q;
    scaled.R = c * m.R;
    scaled.V0 = c * m.V0;

    const FilterRun a = run_filter(m, y);
    const FilterRun b = run_filter(scaled, y);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const std::vector<double> ka = gains_at(m, a, i);
      const std::vector<double> kb = gains_at(scaled, b, i);
      for (std::size_t j = 0; j < ka.size(); ++j)
        CHECK(std::abs(ka[j] - kb[j]) <= 1e-12 * std::max(1.0, std::abs(ka[j])));
      for (std::size_t j = 0; j < ka.size(); ++j) {
        CHECK(a.predicted[i].mean[j] ==
              Catch::Approx(b.predicted[i].mean[j]).epsilon(1e-11).margin(1e-11));
        CHECK(a.filtered[i].mean[j] ==
              Catch::Approx(b.filtered[i].mean[j]).epsilon(1e-11).margin(1e-11));
      }
    }
  }
}

TEST_CASE("covariance diagonals stay nonnegative over long runs") {
  std::mt19937_64 rng(25);
  ModelSpec spec;
  spec.m1 = 2;
  spec.m2 = 1;
  spec.period = 12;
  spec.theta.tau1_sq = 1e-4;
  spec.theta.tau2_sq = 1e-3;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = compose(spec);
  const Series y = testsim::simulate(m, 500, rng);
  const FilterRun run = run_filter(m, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t d = 0; d < m.state_dim(); ++d) {
      CHECK(run.predicted[i].cov(d, d) >= 0.0);
      CHECK(run.filtered[i].cov(d, d) >= 0.0);
      CHECK(std::isfinite(run.filtered[i].cov(d, d)));
    }
  }
}
