//
//   Copyright 2026 the corelab authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

#include <corelab/stats.hpp>

#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

namespace {

// Deterministic uniform in [0,1) from raw engine output.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller from explicit uniforms, so the draw sequence is pinned by the
// engine spec rather than a library distribution.
double standard_normal(std::mt19937_64& gen) {
  double u1 = uniform01(gen);
  double u2 = uniform01(gen);
  while (u1 <= 0) u1 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

DesignMatrix simulate(std::size_t n, const std::vector<double>& beta,
                      std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  DesignMatrix design;
  design.column_names.push_back("(intercept)");
  for (std::size_t j = 1; j < beta.size(); ++j) {
    design.column_names.push_back("x" + std::to_string(j));
  }
  design.predictors.resize(static_cast<Eigen::Index>(n),
                           static_cast<Eigen::Index>(beta.size()));
  design.outcome.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    design.predictors(static_cast<Eigen::Index>(i), 0) = 1.0;
    double eta = beta[0];
    for (std::size_t j = 1; j < beta.size(); ++j) {
      double x = standard_normal(gen);
      design.predictors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
      eta += beta[j] * x;
    }
    double p = 1.0 / (1.0 + std::exp(-eta));
    design.outcome(static_cast<Eigen::Index>(i)) = uniform01(gen) < p ? 1.0 : 0.0;
  }
  return design;
}

}  // namespace

TEST_CASE("z_standardize uses population statistics") {
  auto z = z_standardize({1, 2, 3});
  REQUIRE(z.size() == 3);
  CHECK(z[0] == Catch::Approx(-1.2247).margin(1e-4));
  CHECK(z[1] == Catch::Approx(0.0).margin(1e-12));
  CHECK(z[2] == Catch::Approx(1.2247).margin(1e-4));

  Diagnostics diag;
  auto constant = z_standardize({4, 4, 4}, &diag, "c");
  CHECK(constant == std::vector<double>{0, 0, 0});
  CHECK(diag.messages.size() == 1);

  CHECK(z_standardize({9}) == std::vector<double>{0});
  CHECK_THROWS_AS(z_standardize({}), InputError);
}

TEST_CASE("encode builds deterministic dummy columns") {
  std::vector<Observation> obs;
  for (int i = 0; i < 6; ++i) {
    Observation o;
    o.continuous["cmi"] = static_cast<double>(i);
    o.factors["task"] = i % 2 == 0 ? "native" : "mt_en";
    o.outcome = i % 2 == 0;
    obs.push_back(o);
  }
  auto design = encode(obs, {"task"}, {"cmi"});
  // mt_en is the lexicographic reference, so only task=native remains
  REQUIRE(design.column_names ==
          std::vector<std::string>{"(intercept)", "cmi", "task=native"});
  CHECK(design.predictors.rows() == 6);
  CHECK(design.predictors.col(0).sum() == 6.0);

  auto overridden = encode(obs, {"task"}, {"cmi"}, nullptr,
                           {{"task", "native"}});
  CHECK(overridden.column_names ==
        std::vector<std::string>{"(intercept)", "cmi", "task=mt_en"});
}

TEST_CASE("encode orders multiple factors by name then level") {
  std::vector<Observation> obs;
  const char* models[] = {"a", "b", "c"};
  for (int i = 0; i < 9; ++i) {
    Observation o;
    o.factors["model"] = models[i % 3];
    o.factors["lang"] = i < 4 ? "sw" : "yo";
    o.outcome = i % 2 == 0;
    obs.push_back(o);
  }
  auto design = encode(obs, {"model", "lang"}, {});
  CHECK(design.column_names ==
        std::vector<std::string>{"(intercept)", "lang=yo", "model=b", "model=c"});
}

TEST_CASE("encode drops constant columns with a diagnostic") {
  std::vector<Observation> obs;
  for (int i = 0; i < 4; ++i) {
    Observation o;
    o.continuous["flat"] = 3.0;
    o.continuous["varies"] = static_cast<double>(i);
    o.factors["only"] = "same";
    o.outcome = i % 2 == 0;
    obs.push_back(o);
  }
  Diagnostics diag;
  auto design = encode(obs, {"only"}, {"flat", "varies"}, &diag);
  CHECK(design.column_names == std::vector<std::string>{"(intercept)", "varies"});
  CHECK(diag.messages.size() >= 1);
}

TEST_CASE("encode rejects unseen levels against known inventories") {
  std::vector<Observation> obs(2);
  obs[0].factors["task"] = "native";
  obs[1].factors["task"] = "surprise";
  std::map<std::string, std::set<std::string>> known = {{"task", {"native", "mt_en"}}};
  try {
    encode(obs, {"task"}, {}, nullptr, {}, &known);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("surprise") != std::string::npos);
  }
}

TEST_CASE("balanced outcomes with intercept only give a zero intercept") {
  std::vector<Observation> obs(10);
  for (std::size_t i = 0; i < obs.size(); ++i) obs[i].outcome = i % 2 == 0;
  auto design = encode(obs, {}, {});
  auto fit = fit_logistic(design);
  CHECK(fit.converged);
  CHECK(fit.coefficients(0) == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("single-class outcomes violate the precondition") {
  std::vector<Observation> obs(5);
  for (auto& o : obs) o.outcome = true;
  auto design = encode(obs, {}, {});
  CHECK_THROWS_AS(fit_logistic(design), InputError);
}

TEST_CASE("fit recovers planted coefficients") {
  std::vector<double> beta = {0.3, 0.8, -0.5};
  auto design = simulate(4000, beta, 2024);
  auto fit = fit_logistic(design);
  REQUIRE(fit.converged);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    CHECK(fit.coefficients(static_cast<Eigen::Index>(j)) ==
          Catch::Approx(beta[j]).margin(0.15));
  }
  // penalized objective never decreases across accepted steps, up to the
  // roundoff slack the step acceptance allows
  for (std::size_t i = 1; i < fit.objective_trace.size(); ++i) {
    CHECK(fit.objective_trace[i] >= fit.objective_trace[i - 1] - 1e-9);
  }
}

TEST_CASE("rescaling a raw predictor rescales its coefficient") {
  auto design = simulate(3000, {0.2, 0.7}, 99);
  auto base = fit_logistic(design);
  REQUIRE(base.converged);

  DesignMatrix scaled = design;
  const double c = 4.0;
  scaled.predictors.col(1) *= c;
  auto refit = fit_logistic(scaled);
  REQUIRE(refit.converged);
  CHECK(refit.coefficients(1) == Catch::Approx(base.coefficients(1) / c).margin(1e-4));

  Eigen::VectorXd eta_base = design.predictors * base.coefficients;
  Eigen::VectorXd eta_scaled = scaled.predictors * refit.coefficients;
  for (Eigen::Index i = 0; i < eta_base.size(); ++i) {
    double p0 = 1.0 / (1.0 + std::exp(-eta_base(i)));
    double p1 = 1.0 / (1.0 + std::exp(-eta_scaled(i)));
    REQUIRE(std::abs(p0 - p1) < 1e-6);
  }
}

TEST_CASE("flipping outcome labels negates the coefficients") {
  auto design = simulate(3000, {0.1, 0.6, -0.4}, 7);
  auto fit = fit_logistic(design);
  DesignMatrix flipped = design;
  for (Eigen::Index i = 0; i < flipped.outcome.size(); ++i) {
    flipped.outcome(i) = 1.0 - flipped.outcome(i);
  }
  auto refit = fit_logistic(flipped);
  for (Eigen::Index j = 0; j < fit.coefficients.size(); ++j) {
    CHECK(refit.coefficients(j) == Catch::Approx(-fit.coefficients(j)).margin(1e-5));
  }
}

TEST_CASE("gradient matches central finite differences") {
  auto design = simulate(200, {0.2, 0.5, -0.3}, 31);
  Eigen::VectorXd beta(3);
  beta << 0.1, -0.2, 0.4;
  CHECK(gradient_check(design, beta) <= 1e-6);

  // negative control: a corrupted gradient must be flagged loudly
  Eigen::VectorXd analytic =
      detail::penalized_gradient(design.predictors, design.outcome, beta, 1e-6);
  Eigen::VectorXd corrupted = analytic;
  corrupted(1) += 1.0;
  double worst = 0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    Eigen::VectorXd hi = beta, lo = beta;
    hi(j) += 1e-5;
    lo(j) -= 1e-5;
    double fd = (detail::penalized_log_likelihood(design.predictors, design.outcome,
                                                  hi, 1e-6) -
                 detail::penalized_log_likelihood(design.predictors, design.outcome,
                                                  lo, 1e-6)) /
                2e-5;
    worst = std::max(worst, std::abs(corrupted(j) - fd) /
                                std::max(1.0, std::abs(corrupted(j))));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("separation is detected rather than diverging silently") {
  // perfectly separable with a weak predictor, so the likelihood keeps
  // improving until the coefficient bound trips
  DesignMatrix design;
  design.column_names = {"(intercept)", "x"};
  design.predictors.resize(40, 2);
  design.outcome.resize(40);
  for (int i = 0; i < 40; ++i) {
    design.predictors(i, 0) = 1.0;
    design.predictors(i, 1) = i < 20 ? -0.05 : 0.05;
    design.outcome(i) = i < 20 ? 0.0 : 1.0;
  }
  auto fit = fit_logistic(design, FitOptions{1e-12, 200, 1e-10, 30.0});
  CHECK(fit.separation_detected);
  CHECK_FALSE(fit.converged);
}

TEST_CASE("identical inputs give bit-identical fits") {
  auto design = simulate(500, {0.2, 0.4}, 55);
  auto a = fit_logistic(design);
  auto b = fit_logistic(design);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.log_likelihood == b.log_likelihood);
  CHECK(a.iterations == b.iterations);
}
