#pragma once

// Dyson Brownian motion
//   d lambda_i = dB_i / sqrt(N) + (-(beta/4) lambda_i + beta/(2N) sum_{j != i} 1/(lambda_i - lambda_j)) dt
// by Euler-Maruyama, and the entrywise Ornstein-Uhlenbeck matrix process.
// The equilibrium of the eigenvalue SDE is prod |x_i - x_j|^beta exp(-(beta N/4) sum x^2),
// i.e. the semicircle scale: multiply by sqrt(N) to reach UNIT_ENTRIES.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rmt/error.hpp"
#include "rmt/linalg.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/random.hpp"

namespace rmt {

struct DysonState {
  double time = 0.0;
  std::vector<double> lambdas;  // strictly ascending
  double beta = 2.0;

  bool ordered() const {
    for (std::size_t i = 1; i < lambdas.size(); ++i)
      if (!(lambdas[i - 1] < lambdas[i])) return false;
    return true;
  }
};

struct DysonStepOptions {
  int max_halvings = 20;
  double noise_scale = 1.0;  // 0 switches the Brownian term off
};

// One accepted Euler-Maruyama step. The noise vector is drawn once; if the
// update would break the ordering the step is retried with the same noise and
// dt halved. Returns the state after the accepted (possibly shortened) step.
inline DysonState dyson_step(const DysonState& state, double dt, RngState& rng,
                             const DysonStepOptions& opt = {}) {
  detail::require(dt > 0.0, "dyson_step: dt must be positive");
  detail::require(state.ordered(), "dyson_step: state must be strictly ascending");
  const std::size_t n = state.lambdas.size();
  const double nd = static_cast<double>(n);
  const double beta = state.beta;

  std::vector<double> drift(n), noise(n);
  for (std::size_t i = 0; i < n; ++i) {
    double rep = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) rep += 1.0 / (state.lambdas[i] - state.lambdas[j]);
    drift[i] = -0.25 * beta * state.lambdas[i] + beta / (2.0 * nd) * rep;
    noise[i] = opt.noise_scale * rng.normal() / std::sqrt(nd);
  }

  DysonState next = state;
  double h = dt;
  for (int attempt = 0; attempt <= opt.max_halvings; ++attempt, h *= 0.5) {
    const double sh = std::sqrt(h);
    for (std::size_t i = 0; i < n; ++i)
      next.lambdas[i] = state.lambdas[i] + drift[i] * h + noise[i] * sh;
    if (next.ordered()) {
      next.time = state.time + h;
      return next;
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) min_gap = std::min(min_gap, state.lambdas[i] - state.lambdas[i - 1]);
  std::ostringstream msg;
  msg << "dyson_step: ordering lost after " << opt.max_halvings << " halvings (min gap " << min_gap << ")";
  throw numerical_error(msg.str());
}

enum class DysonInit { zeros_perturbed, sample };

struct DysonTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;
  DysonState final_state;
  std::size_t steps = 0;
};

// Equally spaced grid of spacing 1e-6 centred on zero.
inline std::vector<double> zeros_perturbed(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1e-6 * (static_cast<double>(i) - 0.5 * (n - 1.0));
  return x;
}

// Integrates to t_end. `sample` init draws the start from the tridiagonal beta
// model rescaled to the equilibrium (semicircle) scale. A snapshot is kept at
// t = 0, every `snapshot_every` accepted steps, and at t_end.
inline DysonTrajectory dyson_simulate(std::size_t n, double beta, double t_end, double dt, RngState& rng,
                                      DysonInit init = DysonInit::zeros_perturbed,
                                      std::size_t snapshot_every = 0, const DysonStepOptions& opt = {}) {
  detail::require(n >= 1, "dyson_simulate: n must be >= 1");
  detail::require(beta > 0.0, "dyson_simulate: beta must be positive");
  detail::require(dt > 0.0 && t_end >= 0.0, "dyson_simulate: need dt > 0 and t_end >= 0");
  DysonState state;
  state.beta = beta;
  if (init == DysonInit::zeros_perturbed) {
    state.lambdas = zeros_perturbed(n);
  } else {
    state.lambdas = tridiagonal_eigenvalues(sample_beta_tridiagonal(n, beta, rng));
    for (double& x : state.lambdas) x /= std::sqrt(static_cast<double>(n));
  }
  DysonTrajectory traj;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(state.lambdas);
  while (state.time < t_end) {
    const double remaining = t_end - state.time;
    const double h = std::min(dt, remaining);
    state = dyson_step(state, h, rng, opt);
    if (t_end - state.time <= 1e-12 * std::max(1.0, t_end)) state.time = t_end;
    ++traj.steps;
    if (snapshot_every && traj.steps % snapshot_every == 0 && state.time < t_end) {
      traj.times.push_back(state.time);
      traj.snapshots.push_back(state.lambdas);
    }
  }
  traj.times.push_back(state.time);
  traj.snapshots.push_back(state.lambdas);
  traj.final_state = state;
  return traj;
}

// Exact OU transition applied to every entry X_ij, i <= j:
//   X <- e^{-theta dt} X + sqrt(sigma^2 (1 - e^{-2 theta dt}) / (2 theta)) xi.
inline SymmetricMatrix ou_entry_process_step(const SymmetricMatrix& x, double dt, double theta, double sigma,
                                             RngState& rng) {
  detail::require(theta > 0.0, "ou_entry_process_step: theta must be positive");
  detail::require(dt > 0.0, "ou_entry_process_step: dt must be positive");
  const double decay = std::exp(-theta * dt);
  const double sd = std::sqrt(sigma * sigma * (-std::expm1(-2.0 * theta * dt)) / (2.0 * theta));
  SymmetricMatrix out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) {
      const double z = sigma == 0.0 ? 0.0 : rng.normal();
      out.set(i, j, decay * x(i, j) + sd * z);
    }
  return out;
}

}  // namespace rmt
