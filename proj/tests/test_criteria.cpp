#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sspred/criteria.hpp"
#include "sspred/models.hpp"
#include "sspred/reference.hpp"
#include "support/oracles.hpp"
#include "support/sim.hpp"

using namespace sspred;

namespace {

StateSpaceModel scaled_model(const ModelSpec& spec) {
  return compose(spec);  // theta.sigma_sq = 1 keeps R = 1
}

StateSpaceModel scale_noise(StateSpaceModel m, double c) {
  m.Q = c * m.Q;
  m.R = c * m.R;
  m.V0 = c * m.V0;
  return m;
}

}  // namespace

TEST_CASE("concentrated log-likelihood of a static model matches the iid closed form") {
  ModelSpec spec;
  spec.m1 = 1;
  spec.theta.tau1_sq = 0.0;
  spec.theta.sigma_sq = 1.0;
  spec.v0_diag = 1e-18;  // state pinned at zero
  const StateSpaceModel m = compose(spec);

  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal(1.0, 2.0);
  std::vector<double> y(40);
  for (double& v : y) v = normal(rng);
  const Series series = Series::from_values(y);

  const std::size_t burn = 1;
  const CriterionValue cv = loglik_concentrated(m, series, burn);
  REQUIRE(cv.n_terms == y.size() - burn);

  double ss = 0.0;
  for (std::size_t i = burn; i < y.size(); ++i) ss += y[i] * y[i];
  const double sigma_sq = ss / static_cast<double>(cv.n_terms);
  const double n = static_cast<double>(cv.n_terms);
  const double expected = -0.5 * (n * std::log(2.0 * M_PI * sigma_sq) + n);
  CHECK(cv.value == Catch::Approx(expected).epsilon(1e-10));
  CHECK(cv.sigma_sq_hat == Catch::Approx(sigma_sq).epsilon(1e-10));
}

TEST_CASE("innovations-form log-likelihood equals the dense joint Gaussian density") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    const StateSpaceModel m = oracle::random_stable_model(rng);
    const Series y = testsim::simulate(m, 20, rng);
    const double kalman = loglik_exact(m, y, 0);
    const double dense = oracle::joint_loglik(m, y.values);
    CHECK(kalman == Catch::Approx(dense).margin(1e-8));
  }
}

TEST_CASE("concentrated criterion depends only on variance ratios") {
  std::mt19937_64 rng(43);
  ModelSpec spec;
  spec.m1 = 2;
  spec.m2 = 1;
  spec.period = 4;
  spec.theta.tau1_sq = 0.05;
  spec.theta.tau2_sq = 0.4;
  spec.theta.sigma_sq = 1.0;
  // proper prior: the diffuse default cancels ~8 digits in the first
  // updates, which would swamp the scaling comparison
  spec.v0_diag = 1.0;
  const StateSpaceModel base = scaled_model(spec);
  const Series y = testsim::simulate(base, 60, rng);

  const CriterionValue ref = loglik_concentrated(base, y, 5);
  for (double c : {0.01, 100.0}) {
    const CriterionValue scaled = loglik_concentrated(scale_noise(base, c), y, 5);
    CHECK(std::abs(scaled.value - ref.value) < 1e-9);
    CHECK(scaled.sigma_sq_hat * c == Catch::Approx(ref.sigma_sq_hat).epsilon(1e-9));
  }

  CriterionConfig cfg;
  cfg.p = 3;
  cfg.variant = CriterionVariant::concentrated;
  cfg.burn_in = 5;
  const CriterionValue ref_p = loglik_horizon(base, y, cfg);
  for (double c : {0.01, 100.0}) {
    const CriterionValue scaled = loglik_horizon(scale_noise(base, c), y, cfg);
    CHECK(std::abs(scaled.value - ref_p.value) < 1e-9);
    CHECK(scaled.sigma_sq_hat * c == Catch::Approx(ref_p.sigma_sq_hat).epsilon(1e-9));
    CHECK(scaled.sigma_p_sq_hat == Catch::Approx(ref_p.sigma_p_sq_hat).epsilon(1e-9));
  }
}

TEST_CASE("one-step horizon criterion reduces to the concentrated likelihood") {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 10; ++rep) {
    ModelSpec spec;
    spec.m1 = 1 + rep % 2;
    spec.theta.tau1_sq = 0.05 + 0.2 * (rep % 4);
    spec.theta.sigma_sq = 1.0;
    const StateSpaceModel m = scaled_model(spec);
    const Series y = testsim::simulate(m, 50, rng);

    CriterionConfig cfg;
    cfg.p = 1;
    cfg.variant = CriterionVariant::concentrated;
    cfg.burn_in = 3;
    const CriterionValue lp = loglik_horizon(m, y, cfg);
    const CriterionValue lc = loglik_concentrated(m, y, 3);
    CHECK(std::abs(lp.value - lc.value) <= 1e-10);
    CHECK(lp.n_terms == lc.n_terms);
    CHECK(lp.sigma_sq_hat == Catch::Approx(lc.sigma_sq_hat).epsilon(1e-12));
  }
}

TEST_CASE("zero prediction error is a structured degenerate-variance error") {
  ModelSpec spec;
  spec.m1 = 2;
  spec.theta.tau1_sq = 0.0;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  const Series y = Series::from_values(std::vector<double>(30, 0.0));

  CriterionConfig cfg;
  cfg.p = 2;
  cfg.variant = CriterionVariant::literal;
  cfg.burn_in = 2;
  try {
    loglik_horizon(m, y, cfg);
    FAIL("expected E_DEGENERATE_VARIANCE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_variance);
  }
}

TEST_CASE("scaled-metric predictive variance grows by the variance ratio per lead") {
  ModelSpec spec;
  spec.m1 = 1;
  spec.theta.tau1_sq = 0.23;  // ratio against sigma_sq = 1
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  FilterState s;
  s.mean = {0.0};
  s.cov = Matrix(1, 1);
  s.cov(0, 0) = 0.9;
  const HorizonPrediction pred = predict_horizon(m, s, 12);
  for (std::size_t j = 1; j < 12; ++j)
    CHECK(pred.obs_var[j] - pred.obs_var[j - 1] == Catch::Approx(0.23).margin(1e-12));
}

TEST_CASE("one-step scan errors equal the filter innovations") {
  std::mt19937_64 rng(45);
  ModelSpec spec;
  spec.m1 = 2;
  spec.theta.tau1_sq = 0.1;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  const Series y = testsim::simulate(m, 40, rng);
  const FilterRun run = run_filter(m, y);
  const reference::LeadErrors lead = reference::lead_errors(m, y, 1, 4);
  for (std::size_t o = 0; o < lead.err.size(); ++o) {
    const std::size_t target = 4 + o;  // storage index of y_{origin+1}
    CHECK(std::abs(lead.err[o] - run.innovation[target]) <= 1e-12);
    CHECK(std::abs(lead.dvar[o] - run.innovation_var[target]) <= 1e-12);
  }
}

TEST_CASE("raising burn-in by one removes exactly one term") {
  std::mt19937_64 rng(46);
  ModelSpec spec;
  spec.m1 = 1;
  spec.theta.tau1_sq = 0.2;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  const Series y = testsim::simulate(m, 35, rng);

  CriterionConfig cfg;
  cfg.p = 4;
  cfg.variant = CriterionVariant::literal;
  for (std::size_t b = 1; b < 6; ++b) {
    cfg.burn_in = b;
    const CriterionValue cv = loglik_horizon(m, y, cfg);
    CHECK(cv.n_terms == y.size() - cfg.p - b + 1);
  }
  const CriterionValue lc1 = loglik_concentrated(m, y, 2);
  const CriterionValue lc2 = loglik_concentrated(m, y, 3);
  CHECK(lc1.n_terms == lc2.n_terms + 1);
}

TEST_CASE("missing targets drop out of the sums") {
  std::mt19937_64 rng(47);
  ModelSpec spec;
  spec.m1 = 1;
  spec.theta.tau1_sq = 0.2;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  Series y = testsim::simulate(m, 30, rng);
  y.observed[14] = 0;
  y.values[14] = std::numeric_limits<double>::quiet_NaN();

  CriterionConfig cfg;
  cfg.p = 3;
  cfg.variant = CriterionVariant::literal;
  cfg.burn_in = 2;
  const CriterionValue cv = loglik_horizon(m, y, cfg);
  CHECK(cv.n_terms == y.size() - cfg.p - 2 + 1 - 1);

  const std::vector<double> vars = horizon_error_variances(m, y, 4, 2);
  REQUIRE(vars.size() == 4);
  for (double v : vars) CHECK(v > 0.0);
}

TEST_CASE("the literal criterion decreases as the error variance grows") {
  const double sum_log_d = 12.3;
  const std::size_t n = 40;
  double prev = literal_value(0.5, sum_log_d, n);
  for (double s2 : {0.6, 0.8, 1.5, 4.0}) {
    const double v = literal_value(s2, sum_log_d, n);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("perfect predictions give zero error variances") {
  ModelSpec spec;
  spec.m1 = 1;
  spec.theta.tau1_sq = 0.0;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  const Series y = Series::from_values(std::vector<double>(25, 0.0));
  const std::vector<double> vars = horizon_error_variances(m, y, 5, 1);
  for (double v : vars) CHECK(v == 0.0);
}

TEST_CASE("insufficient data for the horizon is a structured error") {
  ModelSpec spec;
  spec.m1 = 1;
  spec.theta.tau1_sq = 0.1;
  spec.theta.sigma_sq = 1.0;
  const StateSpaceModel m = scaled_model(spec);
  const Series y = Series::from_values(std::vector<double>(10, 1.0));

  CriterionConfig cfg;
  cfg.p = 9;
  cfg.burn_in = 1;
  cfg.variant = CriterionVariant::literal;
  try {
    loglik_horizon(m, y, cfg);
    FAIL("expected E_INSUFFICIENT_DATA");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_data);
  }
  CHECK_THROWS_AS(horizon_error_variances(m, y, 9, 1), Error);
}
