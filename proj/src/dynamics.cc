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

#include "ftsnap/dynamics.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Sparse>

#include "json.hpp"

namespace ftsnap {
namespace {

using SparseMat = Eigen::SparseMatrix<cplx>;

// Dormand–Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kE[7] = {71.0 / 57600,  0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

template <class State, class Rhs>
struct DormandPrince {
  Rhs rhs;
  double tolerance;

  // One trial step of length h from (t, y) with k1 = rhs(t, y). Returns the
  // scaled error norm; y_out and k7 (the FSAL derivative) are filled.
  double step(double t, const State& y, const State& k1, double h, State& y_out,
              State& k7) const {
    State k[7];
    k[0] = k1;
    for (int s = 1; s < 7; ++s) {
      State acc = y;
      for (int j = 0; j < s; ++j)
        if (kA[s][j] != 0.0) acc += (h * kA[s][j]) * k[j];
      if (s == 6) {
        y_out = acc;
        k[6] = rhs(t + h, acc);
      } else {
        k[s] = rhs(t + kC[s] * h, acc);
      }
    }
    k7 = k[6];
    State err = (h * kE[0]) * k[0];
    for (int s = 2; s < 7; ++s) err += (h * kE[s]) * k[s];
    const auto scale =
        (tolerance + tolerance * y.cwiseAbs().cwiseMax(y_out.cwiseAbs()).array()).eval();
    return (err.cwiseAbs().array() / scale).maxCoeff();
  }
};

double next_step(double h, double err) {
  const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
  return h * factor;
}

template <class State, class Rhs, class Observer>
State integrate(const State& y0, double t0, double t1, const Rhs& rhs, double tol, double hmax,
                Observer&& accept_hook) {
  State y = y0;
  if (t1 <= t0) return y;
  DormandPrince<State, Rhs> dp{rhs, tol};
  const double span = t1 - t0;
  double t = t0;
  double h = std::min(hmax, span / 64.0);
  State k1 = rhs(t, y);
  State y_new, k7;
  while (t < t1) {
    if (t + h > t1) h = t1 - t;
    const double err = dp.step(t, y, k1, h, y_new, k7);
    if (err > 1.0) {
      h = next_step(h, err);
      if (h < 1e-14 * span) throw NumericalError("integrator step-size underflow");
      continue;
    }
    t = (t1 - (t + h) < 1e-15 * span) ? t1 : t + h;
    y = y_new;
    k1 = k7;
    accept_hook(t, y);
    h = std::min(hmax, next_step(h, err));
  }
  return y;
}

struct NoObserver {
  template <class S>
  void operator()(double, const S&) const {}
};

SparseMat to_sparse(const Mat& m) {
  SparseMat s = m.sparseView(0.0, 0.0);
  s.makeCompressed();
  return s;
}

struct LindbladRhs {
  const Hamiltonian* hamiltonian;
  Mat damping;  // −(i/2) Σ L†L
  Mat static_heff;
  std::vector<SparseMat> collapse;
  std::vector<SparseMat> collapse_adj;

  Mat operator()(double t, const Mat& rho) const {
    const Mat heff = hamiltonian->time_dependent() ? Mat(hamiltonian->at(t) + damping)
                                                   : static_heff;
    Mat out = -kI * (heff * rho);
    out += kI * (rho * heff.adjoint());
    for (std::size_t k = 0; k < collapse.size(); ++k) {
      const Mat tmp = collapse[k] * rho;
      out += tmp * collapse_adj[k];
    }
    return out;
  }
};

LindbladRhs make_lindblad_rhs(const EvolutionSpec& spec) {
  LindbladRhs r;
  r.hamiltonian = &spec.hamiltonian;
  const int d = spec.hamiltonian.space().dim();
  Mat sum = Mat::Zero(d, d);
  for (const auto& j : spec.jumps) {
    const Mat l = j.collapse();
    sum += l.adjoint() * l;
    r.collapse.push_back(to_sparse(l));
    r.collapse_adj.push_back(to_sparse(l.adjoint()));
  }
  r.damping = -0.5 * kI * sum;
  if (!spec.hamiltonian.time_dependent()) r.static_heff = spec.hamiltonian.at(0.0) + r.damping;
  return r;
}

struct SchrodingerRhs {
  const Hamiltonian* hamiltonian;
  Mat damping;
  Mat static_heff;

  Vec operator()(double t, const Vec& psi) const {
    if (hamiltonian->time_dependent()) return -kI * ((hamiltonian->at(t) + damping) * psi);
    return -kI * (static_heff * psi);
  }
};

double effective_max_step(const EvolutionSpec& spec) {
  return std::min(spec.max_step, spec.hamiltonian.max_step());
}

double uniform01(std::mt19937_64& rng) {
  // 53 random bits, strictly inside (0, 1).
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

Hamiltonian::Hamiltonian(const Op& op) : space_(op.space), static_(op.matrix) {}

Hamiltonian::Hamiltonian(TensorSpace space, TimeDependentHamiltonian fn, double max_frequency)
    : space_(space), fn_(std::move(fn)), max_frequency_(max_frequency) {}

double Hamiltonian::max_step() const {
  if (!fn_ || max_frequency_ <= 0.0) return kNever;
  return kTwoPi / (50.0 * max_frequency_);
}

void EvolutionSpec::validate() const {
  if (!(t_final > 0.0)) throw ValidationError("t_final must be > 0");
  if (!(tolerance > 1e-12 && tolerance < 1e-4))
    throw ValidationError("tolerance must lie in (1e-12, 1e-4)");
  if (!(max_step > 0.0)) throw ValidationError("max_step must be > 0");
  for (const auto& j : jumps) {
    if (!(j.rate >= 0.0)) throw ValidationError("jump rate must be >= 0");
    if (!(j.op.space == hamiltonian.space()))
      throw ValidationError("jump operator " + j.name + " does not match the system space");
  }
}

DensityMatrix evolve_lindblad(const EvolutionSpec& spec, const DensityMatrix& rho0) {
  return evolve_lindblad(spec, rho0, 0.0, spec.t_final);
}

DensityMatrix evolve_lindblad(const EvolutionSpec& spec, const DensityMatrix& rho0, double t0,
                              double t1) {
  spec.validate();
  if (!(rho0.space == spec.hamiltonian.space()))
    throw std::invalid_argument("evolve_lindblad: space mismatch");
  const LindbladRhs rhs = make_lindblad_rhs(spec);
  Mat rho = integrate(rho0.matrix, t0, t1, rhs, spec.tolerance, effective_max_step(spec),
                      NoObserver{});
  return {rho0.space, 0.5 * (rho + rho.adjoint())};
}

StateVector evolve_schrodinger(const EvolutionSpec& spec, const StateVector& psi0, double t0,
                               double t1) {
  if (!(psi0.space == spec.hamiltonian.space()))
    throw std::invalid_argument("evolve_schrodinger: space mismatch");
  if (t1 <= t0) return psi0;
  if (!spec.hamiltonian.time_dependent()) {
    const Mat u = expm(-kI * (t1 - t0) * spec.hamiltonian.at(0.0));
    return {psi0.space, u * psi0.amplitudes};
  }
  const int d = psi0.space.dim();
  SchrodingerRhs rhs{&spec.hamiltonian, Mat::Zero(d, d), Mat()};
  Vec out = integrate(psi0.amplitudes, t0, t1, rhs, spec.tolerance, effective_max_step(spec),
                      NoObserver{});
  return {psi0.space, out};
}

TrajectoryRecord evolve_trajectory(const EvolutionSpec& spec, const StateVector& psi0,
                                   std::uint64_t seed) {
  spec.validate();
  const int d = psi0.space.dim();
  std::vector<Mat> collapse;
  Mat sum = Mat::Zero(d, d);
  for (const auto& j : spec.jumps) {
    collapse.push_back(j.collapse());
    sum += collapse.back().adjoint() * collapse.back();
  }
  SchrodingerRhs rhs{&spec.hamiltonian, -0.5 * kI * sum, Mat()};
  if (!spec.hamiltonian.time_dependent()) rhs.static_heff = spec.hamiltonian.at(0.0) + rhs.damping;
  DormandPrince<Vec, SchrodingerRhs> dp{rhs, spec.tolerance};

  std::mt19937_64 rng(seed);
  TrajectoryRecord record{psi0, {}, seed};
  Vec psi = psi0.amplitudes / psi0.amplitudes.norm();
  const double t_final = spec.t_final;
  const double hmax = effective_max_step(spec);
  double threshold = uniform01(rng);
  double t = 0.0;
  double h = std::min(hmax, t_final / 64.0);
  Vec k1 = rhs(t, psi);
  Vec y_new, k7;
  while (t < t_final) {
    if (t + h > t_final) h = t_final - t;
    const double err = dp.step(t, psi, k1, h, y_new, k7);
    if (err > 1.0) {
      h = next_step(h, err);
      if (h < 1e-14 * t_final) throw NumericalError("trajectory step-size underflow");
      continue;
    }
    if (!collapse.empty() && y_new.squaredNorm() <= threshold) {
      double lo = 0.0;
      double hi = h;
      Vec y_hi = y_new;
      while (hi - lo > 1e-10 * t_final) {
        const double mid = 0.5 * (lo + hi);
        Vec y_mid, k_unused;
        dp.step(t, psi, k1, mid, y_mid, k_unused);
        if (y_mid.squaredNorm() > threshold) {
          lo = mid;
        } else {
          hi = mid;
          y_hi = y_mid;
        }
      }
      std::vector<double> weights;
      double total = 0.0;
      for (const auto& c : collapse) {
        weights.push_back((c * y_hi).squaredNorm());
        total += weights.back();
      }
      double pick = uniform01(rng) * total;
      std::size_t k = 0;
      while (k + 1 < weights.size() && pick > weights[k]) pick -= weights[k++];
      Vec jumped = collapse[k] * y_hi;
      psi = jumped / jumped.norm();
      t += hi;
      record.jumps.push_back({t, spec.jumps[k].name});
      threshold = uniform01(rng);
      k1 = rhs(t, psi);
      continue;
    }
    t = (t_final - (t + h) < 1e-15 * t_final) ? t_final : t + h;
    psi = y_new;
    k1 = k7;
    h = std::min(hmax, next_step(h, err));
  }
  record.final_state = StateVector(psi0.space, psi / psi.norm());
  return record;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<TrajectoryRecord> evolve_trajectories(const EvolutionSpec& spec,
                                                  const StateVector& psi0, int count,
                                                  std::uint64_t root_seed, int threads) {
  std::vector<std::optional<TrajectoryRecord>> slots(count);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(count, 1));
  auto work = [&](int worker) {
    for (int i = worker; i < count; i += threads)
      slots[i] = evolve_trajectory(spec, psi0, derive_seed(root_seed, i));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::vector<TrajectoryRecord> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

DensityMatrix average_trajectories(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no trajectories to average");
  const TensorSpace space = records.front().final_state.space;
  Mat rho = Mat::Zero(space.dim(), space.dim());
  for (const auto& r : records)
    rho += r.final_state.amplitudes * r.final_state.amplitudes.adjoint();
  return {space, rho / static_cast<double>(records.size())};
}

std::string to_json_line(const TrajectoryRecord& record) {
  nlohmann::json j;
  j["seed"] = record.seed;
  j["jumps"] = nlohmann::json::array();
  for (const auto& ev : record.jumps) j["jumps"].push_back({{"t", ev.time}, {"label", ev.label}});
  auto amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < record.final_state.amplitudes.size(); ++i) {
    const cplx z = record.final_state.amplitudes(i);
    amps.push_back({z.real(), z.imag()});
  }
  j["final_state"] = std::move(amps);
  j["cavity_dim"] = record.final_state.space.cavity_dim();
  j["ancilla_dim"] = record.final_state.space.ancilla_dim();
  return j.dump();
}

StateVector inject_jumps(const EvolutionSpec& spec, const StateVector& psi0,
                         const std::vector<std::pair<Op, double>>& jumps) {
  spec.validate();
  StateVector psi = psi0;
  double t = 0.0;
  for (const auto& [op, t_jump] : jumps) {
    if (t_jump < t || t_jump > spec.t_final)
      throw std::invalid_argument("jump times must be ordered within [0, t_final]");
    psi = evolve_schrodinger(spec, psi, t, t_jump);
    psi = apply(op, psi);
    const double n = psi.norm();
    if (n < 1e-12) {
      std::ostringstream msg;
      msg << "jump " << op.label << " at t = " << t_jump << " annihilates the state";
      throw NumericalError(msg.str());
    }
    psi.amplitudes /= n;
    t = t_jump;
  }
  return evolve_schrodinger(spec, psi, t, spec.t_final);
}

StateVector inject_jump(const EvolutionSpec& spec, const StateVector& psi0, const Op& jump,
                        double t_jump) {
  return inject_jumps(spec, psi0, {{jump, t_jump}});
}

StateVector inject_jump(const EvolutionSpec& spec, const StateVector& psi0,
                        const std::string& jump_label, double t_jump) {
  for (const auto& j : spec.jumps)
    if (j.name == jump_label) return inject_jump(spec, psi0, j.op, t_jump);
  for (const auto& j : spec.jumps)
    if (jump_kind_name(j.kind) == jump_label) return inject_jump(spec, psi0, j.op, t_jump);
  throw std::invalid_argument("no jump operator labeled '" + jump_label + "'");
}

Op analytic_propagator(const std::map<int, double>& theta_phases, double area,
                       const TensorSpace& space) {
  DriveParams unit;
  unit.omega = 1.0;
  unit.theta_phases = theta_phases;
  const Op generator = build_h_int_effective(unit, space);
  const Op p = driven_subspace_projector(space);
  Mat u = Mat::Identity(space.dim(), space.dim()) - p.matrix;
  u += std::cos(area) * p.matrix;
  u += (-kI * std::sin(area)) * generator.matrix;
  return {space, u, "U_snap"};
}

}  // namespace ftsnap
