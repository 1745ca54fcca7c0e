// Copyright 2026 The ftsnap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftsnap/rb.h"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "ftsnap/dynamics.h"

namespace ftsnap {
namespace {

Mat2 normalize_phase(const Mat2& u) {
  for (int k = 0; k < 4; ++k) {
    const cplx z = u(k % 2, k / 2);
    if (std::abs(z) > 1e-9) return u * (std::abs(z) / z);
  }
  return u;
}

bool same_matrix(const Mat2& a, const Mat2& b) { return (a - b).norm() < 1e-9; }

double survival_probability(const Eigen::Vector4d& bloch, double assignment_error) {
  const double p0 = 0.5 * (bloch(0) + bloch(3));
  return (1.0 - assignment_error) * p0 + assignment_error * (1.0 - p0);
}

}  // namespace

const std::vector<Mat2>& clifford_group() {
  static const std::vector<Mat2> group = [] {
    Mat2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const Mat2 s = logical_s_theta_2x2(kPi / 2);
    std::vector<Mat2> out{Mat2::Identity()};
    std::deque<Mat2> frontier{Mat2::Identity()};
    while (!frontier.empty()) {
      const Mat2 u = frontier.front();
      frontier.pop_front();
      for (const Mat2& g : {h, s}) {
        const Mat2 next = normalize_phase(g * u);
        if (std::none_of(out.begin(), out.end(),
                         [&](const Mat2& m) { return same_matrix(m, next); })) {
          out.push_back(next);
          frontier.push_back(next);
        }
      }
    }
    return out;
  }();
  return group;
}

ExponentialFit fit_rb_decay(const std::vector<double>& lengths, const std::vector<double>& survival,
                            const std::vector<double>& sigma) {
  const int m = static_cast<int>(lengths.size());
  if (m < 3 || survival.size() != lengths.size())
    throw std::invalid_argument("fit_rb_decay: need at least 3 matching points");
  if (!sigma.empty() && sigma.size() != lengths.size())
    throw std::invalid_argument("fit_rb_decay: sigma size mismatch");
  Eigen::VectorXd w = Eigen::VectorXd::Ones(m);
  for (int i = 0; i < static_cast<int>(sigma.size()); ++i) {
    if (!(sigma[i] > 0.0)) throw std::invalid_argument("fit_rb_decay: sigma must be > 0");
    w(i) = 1.0 / (sigma[i] * sigma[i]);
  }

  // Log-linear start from points above the asymptote.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
  for (int i = 0; i < m; ++i) {
    const double y = survival[i] - 0.5;
    if (y <= 1e-6) continue;
    sx += lengths[i];
    sy += std::log(y);
    sxx += lengths[i] * lengths[i];
    sxy += lengths[i] * std::log(y);
    count += 1;
  }
  Eigen::Vector2d p(0.5, 0.01);
  if (count >= 2 && count * sxx - sx * sx > 0) {
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    p << std::exp((sy - slope * sx) / count), -slope;
  }

  auto residuals = [&](const Eigen::Vector2d& q) {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) r(i) = q(0) * std::exp(-q(1) * lengths[i]) + 0.5 - survival[i];
    return r;
  };
  auto jacobian = [&](const Eigen::Vector2d& q) {
    Eigen::MatrixXd j(m, 2);
    for (int i = 0; i < m; ++i) {
      const double e = std::exp(-q(1) * lengths[i]);
      j(i, 0) = e;
      j(i, 1) = -q(0) * lengths[i] * e;
    }
    return j;
  };
  auto cost = [&](const Eigen::VectorXd& r) { return r.dot(w.asDiagonal() * r); };

  ExponentialFit fit;
  double lambda = 1e-3;
  Eigen::VectorXd r = residuals(p);
  double c = cost(r);
  for (fit.iterations = 0; fit.iterations < 500; ++fit.iterations) {
    const Eigen::MatrixXd j = jacobian(p);
    const Eigen::Matrix2d jtj = j.transpose() * w.asDiagonal() * j;
    const Eigen::Vector2d grad = j.transpose() * w.asDiagonal() * r;
    Eigen::Matrix2d damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
    const Eigen::Vector2d step = damped.ldlt().solve(-grad);
    const Eigen::Vector2d trial = p + step;
    const Eigen::VectorXd r_trial = residuals(trial);
    const double c_trial = cost(r_trial);
    if (c_trial <= c) {
      const bool small = step.norm() <= 1e-14 * (1.0 + p.norm()) || c - c_trial <= 1e-30;
      p = trial;
      r = r_trial;
      c = c_trial;
      lambda = std::max(lambda / 10.0, 1e-15);
      if (small) {
        fit.converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) {
        fit.converged = c < 1e-20 || grad.norm() < 1e-12;
        break;
      }
    }
  }

  fit.amplitude = p(0);
  fit.gamma = p(1);
  fit.residual_rms = std::sqrt(r.squaredNorm() / m);
  if (m > 2) {
    const Eigen::MatrixXd j = jacobian(p);
    const Eigen::Matrix2d jtj = j.transpose() * w.asDiagonal() * j;
    const Eigen::Matrix2d cov = jtj.inverse() * (c / (m - 2));
    fit.amplitude_stderr = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.gamma_stderr = std::sqrt(std::max(0.0, cov(1, 1)));
  }
  return fit;
}

RBResult run_rb(const std::optional<InterleavedGate>& gate, const std::vector<int>& lengths,
                int n_sequences, std::uint64_t seed, const RBOptions& options) {
  if (n_sequences < 20) throw ValidationError("run_rb: n_sequences must be >= 20");
  if (lengths.empty()) throw ValidationError("run_rb: no sequence lengths");
  for (int n : lengths)
    if (n < 0) throw ValidationError("run_rb: sequence lengths must be >= 0");
  if (options.background_error < 0.0 || options.background_error > 1.0)
    throw ValidationError("run_rb: background_error must lie in [0, 1]");
  if (options.assignment_error < 0.0 || options.assignment_error > 0.5)
    throw ValidationError("run_rb: assignment_error must lie in [0, 0.5]");
  if (options.shots < 0) throw ValidationError("run_rb: shots must be >= 0");

  const auto& cliffords = clifford_group();
  std::vector<Eigen::Matrix4d> clifford_ptm;
  const Eigen::Matrix4d floor = LogicalChannel::depolarizing(options.background_error).ptm;
  for (const Mat2& u : cliffords) clifford_ptm.push_back(floor * LogicalChannel::unitary(u).ptm);

  const int n_lengths = static_cast<int>(lengths.size());
  const int items = n_lengths * n_sequences;
  std::vector<double> outcome(items);
  auto run_item = [&](int item) {
    const int li = item / n_sequences;
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(item)));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(cliffords.size()) - 1);
    Eigen::Vector4d bloch(1.0, 0.0, 0.0, 1.0);
    Mat2 ideal = Mat2::Identity();
    for (int step = 0; step < lengths[li]; ++step) {
      const int c = pick(rng);
      bloch = clifford_ptm[c] * bloch;
      ideal = cliffords[c] * ideal;
      if (gate) {
        bloch = gate->channel.ptm * bloch;
        ideal = gate->target * ideal;
      }
    }
    bloch = LogicalChannel::unitary(ideal.adjoint()).ptm * bloch;
    const double p = std::clamp(survival_probability(bloch, options.assignment_error), 0.0, 1.0);
    if (options.shots == 0) {
      outcome[item] = p;
    } else {
      std::binomial_distribution<int> shots(options.shots, p);
      outcome[item] = static_cast<double>(shots(rng)) / options.shots;
    }
  };

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, items);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int item = t; item < items; item += threads) run_item(item);
    });
  for (auto& th : pool) th.join();

  RBResult result;
  result.lengths = lengths;
  std::vector<double> x;
  for (int li = 0; li < n_lengths; ++li) {
    double mean = 0.0;
    for (int s = 0; s < n_sequences; ++s) mean += outcome[li * n_sequences + s];
    mean /= n_sequences;
    double var = 0.0;
    for (int s = 0; s < n_sequences; ++s) {
      const double d = outcome[li * n_sequences + s] - mean;
      var += d * d;
    }
    var /= (n_sequences - 1);
    result.survival.push_back(mean);
    result.survival_stderr.push_back(std::sqrt(var / n_sequences));
    x.push_back(lengths[li]);
  }
  std::vector<int> distinct = lengths;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) {
    emit(&result.diagnostics, "fit", "fewer than 3 distinct lengths; decay not fitted");
    return result;
  }
  result.fit = fit_rb_decay(x, result.survival);
  if (!result.fit.converged)
    emit(&result.diagnostics, "fit", "exponential fit did not converge; raw survival retained");
  return result;
}

DecayDifference interleaved_difference(const RBResult& reference, const RBResult& interleaved) {
  const double value = interleaved.fit.gamma - reference.fit.gamma;
  const double stderr = std::hypot(interleaved.fit.gamma_stderr, reference.fit.gamma_stderr);
  return {value, stderr, 1.0 - std::exp(-value), std::exp(-value) * stderr};
}

}  // namespace ftsnap
