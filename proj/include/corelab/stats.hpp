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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "corelab/errors.hpp"
#include "corelab/io.hpp"

namespace corelab {

// (x - mean) / population std. A constant column z-scores to all zeros with a
// diagnostic instead of dividing by zero.
inline std::vector<double> z_standardize(const std::vector<double>& column,
                                         Diagnostics* diag = nullptr,
                                         const std::string& name = "") {
  if (column.empty()) throw InputError("z_standardize requires a non-empty column");
  double mean = 0;
  for (double x : column) mean += x;
  mean /= static_cast<double>(column.size());
  double var = 0;
  for (double x : column) var += (x - mean) * (x - mean);
  var /= static_cast<double>(column.size());
  if (var == 0.0) {
    warn(diag, "column '" + name + "' is constant; z-scored to zeros");
    return std::vector<double>(column.size(), 0.0);
  }
  double sd = std::sqrt(var);
  std::vector<double> out;
  out.reserve(column.size());
  for (double x : column) out.push_back((x - mean) / sd);
  return out;
}

// One modeling row: named continuous predictors, named factor levels, and a
// binary outcome.
struct Observation {
  std::map<std::string, double> continuous;
  std::map<std::string, std::string> factors;
  bool outcome = false;
};

struct DesignMatrix {
  std::vector<std::string> column_names;  // "(intercept)" first
  Eigen::MatrixXd predictors;
  Eigen::VectorXd outcome;  // 0/1
};

// Deterministic design-matrix encoding: intercept, continuous predictors in
// declared order (z-scored), then dummies ordered by factor name and level.
// Each factor's reference level is its lexicographically first level unless
// overridden. Constant columns are dropped with a diagnostic.
inline DesignMatrix encode(const std::vector<Observation>& observations,
                           const std::vector<std::string>& factors,
                           const std::vector<std::string>& continuous,
                           Diagnostics* diag = nullptr,
                           const std::map<std::string, std::string>& reference_override = {},
                           const std::map<std::string, std::set<std::string>>* known_levels =
                               nullptr) {
  if (observations.empty()) throw InputError("encode requires observations");
  const auto n = static_cast<Eigen::Index>(observations.size());

  std::vector<std::pair<std::string, std::vector<double>>> columns;
  for (const auto& name : continuous) {
    std::vector<double> raw;
    raw.reserve(observations.size());
    for (const auto& obs : observations) {
      auto it = obs.continuous.find(name);
      if (it == obs.continuous.end()) {
        throw InputError("observation missing continuous predictor '" + name + "'");
      }
      raw.push_back(it->second);
    }
    columns.emplace_back(name, z_standardize(raw, diag, name));
  }

  std::vector<std::string> sorted_factors = factors;
  std::sort(sorted_factors.begin(), sorted_factors.end());
  for (const auto& factor : sorted_factors) {
    std::set<std::string> levels;
    for (const auto& obs : observations) {
      auto it = obs.factors.find(factor);
      if (it == obs.factors.end()) {
        throw InputError("observation missing factor '" + factor + "'");
      }
      if (known_levels != nullptr) {
        auto kit = known_levels->find(factor);
        if (kit != known_levels->end() && kit->second.count(it->second) == 0) {
          throw InputError("unseen level '" + it->second + "' for factor '" +
                           factor + "'");
        }
      }
      levels.insert(it->second);
    }
    std::string reference = *levels.begin();
    if (auto rit = reference_override.find(factor); rit != reference_override.end()) {
      if (levels.count(rit->second) > 0) reference = rit->second;
    }
    for (const auto& level : levels) {
      if (level == reference) continue;
      std::vector<double> dummy;
      dummy.reserve(observations.size());
      for (const auto& obs : observations) {
        dummy.push_back(obs.factors.at(factor) == level ? 1.0 : 0.0);
      }
      columns.emplace_back(factor + "=" + level, std::move(dummy));
    }
  }

  // Drop constants (an all-zero z-scored column or a degenerate dummy).
  std::vector<std::pair<std::string, std::vector<double>>> kept;
  for (auto& [name, values] : columns) {
    bool constant = std::all_of(values.begin(), values.end(),
                                [&](double v) { return v == values.front(); });
    if (constant) {
      warn(diag, "predictor '" + name + "' is constant after encoding; dropped");
    } else {
      kept.emplace_back(name, std::move(values));
    }
  }

  DesignMatrix design;
  design.column_names.push_back("(intercept)");
  design.predictors.resize(n, static_cast<Eigen::Index>(kept.size()) + 1);
  design.predictors.col(0).setOnes();
  for (std::size_t c = 0; c < kept.size(); ++c) {
    design.column_names.push_back(kept[c].first);
    for (Eigen::Index r = 0; r < n; ++r) {
      design.predictors(r, static_cast<Eigen::Index>(c) + 1) =
          kept[c].second[static_cast<std::size_t>(r)];
    }
  }
  design.outcome.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    design.outcome(r) = observations[static_cast<std::size_t>(r)].outcome ? 1.0 : 0.0;
  }
  return design;
}

struct FitOptions {
  double ridge = 1e-6;
  int max_iterations = 100;
  double tolerance = 1e-8;
  double separation_bound = 30.0;  // max |coefficient| before declaring separation
};

struct FitResult {
  std::vector<std::string> names;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  double log_likelihood = 0.0;  // unpenalized, at the returned coefficients
  bool converged = false;
  int iterations = 0;
  bool separation_detected = false;
  std::vector<double> objective_trace;  // penalized log-likelihood per accepted step
};

namespace detail {

inline double log1p_exp(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double penalized_log_likelihood(const Eigen::MatrixXd& x,
                                       const Eigen::VectorXd& y,
                                       const Eigen::VectorXd& beta, double ridge) {
  Eigen::VectorXd eta = x * beta;
  double ll = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    ll += y(i) * eta(i) - log1p_exp(eta(i));
  }
  return ll - 0.5 * ridge * beta.squaredNorm();
}

inline Eigen::VectorXd penalized_gradient(const Eigen::MatrixXd& x,
                                          const Eigen::VectorXd& y,
                                          const Eigen::VectorXd& beta, double ridge) {
  Eigen::VectorXd eta = x * beta;
  Eigen::VectorXd p(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    p(i) = 1.0 / (1.0 + std::exp(-eta(i)));
  }
  return x.transpose() * (y - p) - ridge * beta;
}

}  // namespace detail

// Ridge-penalized logistic regression via iteratively reweighted least
// squares with step halving. Standard errors come from the inverse of the
// penalized observed information at the optimum.
inline FitResult fit_logistic(const DesignMatrix& design, FitOptions options = {}) {
  const Eigen::MatrixXd& x = design.predictors;
  const Eigen::VectorXd& y = design.outcome;
  const Eigen::Index p = x.cols();

  double positives = y.sum();
  if (positives == 0.0 || positives == static_cast<double>(y.size())) {
    throw InputError("fit_logistic requires both outcome classes to be present");
  }

  FitResult result;
  result.names = design.column_names;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double objective = detail::penalized_log_likelihood(x, y, beta, options.ridge);
  result.objective_trace.push_back(objective);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    result.iterations = iter;
    Eigen::VectorXd gradient = detail::penalized_gradient(x, y, beta, options.ridge);
    if (gradient.lpNorm<Eigen::Infinity>() <= options.tolerance) {
      result.converged = true;
      result.iterations = iter - 1;
      break;
    }

    Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd w(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      double prob = 1.0 / (1.0 + std::exp(-eta(i)));
      w(i) = prob * (1.0 - prob);
    }
    Eigen::MatrixXd information = x.transpose() * w.asDiagonal() * x;
    information.diagonal().array() += options.ridge;
    Eigen::VectorXd direction = information.ldlt().solve(gradient);

    // Step halving keeps the penalized objective non-decreasing up to the
    // roundoff floor of the objective evaluation; without that slack a full
    // Newton step near the optimum can be rejected for losing one ulp while
    // the gradient still has digits to gain.
    const double slack = 16.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + std::abs(objective));
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      Eigen::VectorXd trial = beta + step * direction;
      double trial_objective =
          detail::penalized_log_likelihood(x, y, trial, options.ridge);
      if (trial_objective >= objective - slack) {
        beta = trial;
        objective = trial_objective;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    result.objective_trace.push_back(objective);

    if (beta.lpNorm<Eigen::Infinity>() > options.separation_bound) {
      result.separation_detected = true;
      break;
    }
  }

  if (!result.converged) {
    Eigen::VectorXd gradient = detail::penalized_gradient(x, y, beta, options.ridge);
    result.converged = !result.separation_detected &&
                       gradient.lpNorm<Eigen::Infinity>() <= options.tolerance;
  }

  result.coefficients = beta;
  Eigen::VectorXd eta = x * beta;
  double ll = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    ll += y(i) * eta(i) - detail::log1p_exp(eta(i));
  }
  result.log_likelihood = ll;

  Eigen::VectorXd w(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    double prob = 1.0 / (1.0 + std::exp(-eta(i)));
    w(i) = prob * (1.0 - prob);
  }
  Eigen::MatrixXd information = x.transpose() * w.asDiagonal() * x;
  information.diagonal().array() += options.ridge;
  Eigen::MatrixXd covariance =
      information.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  result.standard_errors.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    result.standard_errors(j) = std::sqrt(std::max(0.0, covariance(j, j)));
  }
  return result;
}

// Max relative deviation between the analytic penalized gradient and central
// finite differences.
inline double gradient_check(const DesignMatrix& design, const Eigen::VectorXd& beta,
                             double ridge = 1e-6, double step = 1e-5) {
  Eigen::VectorXd analytic =
      detail::penalized_gradient(design.predictors, design.outcome, beta, ridge);
  double worst = 0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    Eigen::VectorXd hi = beta;
    Eigen::VectorXd lo = beta;
    hi(j) += step;
    lo(j) -= step;
    double fd = (detail::penalized_log_likelihood(design.predictors, design.outcome,
                                                  hi, ridge) -
                 detail::penalized_log_likelihood(design.predictors, design.outcome,
                                                  lo, ridge)) /
                (2 * step);
    double deviation = std::abs(analytic(j) - fd) / std::max(1.0, std::abs(analytic(j)));
    worst = std::max(worst, deviation);
  }
  return worst;
}

}  // namespace corelab
