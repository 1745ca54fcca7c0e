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

#ifndef FTSNAP_DYNAMICS_H_
#define FTSNAP_DYNAMICS_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ftsnap/device.h"
#include "ftsnap/hilbert.h"

namespace ftsnap {

/// Static matrix or callable t -> H(t). `max_frequency` (rad/s) bounds the
/// fastest oscillation in a callable; steps are capped at 2π/(50·max_frequency).
class Hamiltonian {
 public:
  Hamiltonian(const Op& op);  // NOLINT(google-explicit-constructor)
  Hamiltonian(TensorSpace space, TimeDependentHamiltonian fn, double max_frequency);

  const TensorSpace& space() const { return space_; }
  bool time_dependent() const { return static_cast<bool>(fn_); }
  Mat at(double t) const { return fn_ ? fn_(t) : static_; }
  double max_step() const;

 private:
  TensorSpace space_;
  Mat static_;
  TimeDependentHamiltonian fn_;
  double max_frequency_ = 0.0;
};

struct EvolutionSpec {
  Hamiltonian hamiltonian;
  std::vector<JumpOp> jumps;
  double t_final = 0.0;
  double tolerance = 1e-8;
  double max_step = kNever;

  void validate() const;
};

/// Lindblad master equation ρ̇ = −i[H,ρ] + Σ_k D[J_k]ρ over [0, t_final]
/// with an adaptive Dormand–Prince 5(4) integrator.
/// Throws NumericalError on step-size underflow.
DensityMatrix evolve_lindblad(const EvolutionSpec& spec, const DensityMatrix& rho0);

/// Same, over [t0, t1] of the spec's time axis.
DensityMatrix evolve_lindblad(const EvolutionSpec& spec, const DensityMatrix& rho0, double t0,
                              double t1);

/// Hamiltonian-only evolution over [t0, t1] (jumps ignored).
StateVector evolve_schrodinger(const EvolutionSpec& spec, const StateVector& psi0, double t0,
                               double t1);

struct JumpEvent {
  double time;
  std::string label;
};

struct TrajectoryRecord {
  StateVector final_state;
  std::vector<JumpEvent> jumps;
  std::uint64_t seed;
};

/// Monte-Carlo wavefunction unraveling (waiting-time algorithm). Jump times
/// are located by bisection to 1e-10 · t_final.
TrajectoryRecord evolve_trajectory(const EvolutionSpec& spec, const StateVector& psi0,
                                   std::uint64_t seed);

/// `count` trajectories with seeds derived from `root_seed`; results are
/// ordered by index and independent of thread scheduling.
std::vector<TrajectoryRecord> evolve_trajectories(const EvolutionSpec& spec,
                                                  const StateVector& psi0, int count,
                                                  std::uint64_t root_seed, int threads = 0);

DensityMatrix average_trajectories(const std::vector<TrajectoryRecord>& records);

/// JSON-lines encoding: {"seed":..,"jumps":[{"t":..,"label":..}],"final_state":[[re,im],..]}.
std::string to_json_line(const TrajectoryRecord& record);

/// Deterministic fault injection: Hamiltonian evolution to each jump time,
/// the jump, renormalization, and Hamiltonian evolution to t_final.
/// Jump times must be non-decreasing within [0, t_final]. Throws
/// NumericalError if a jump annihilates the state.
StateVector inject_jumps(const EvolutionSpec& spec, const StateVector& psi0,
                         const std::vector<std::pair<Op, double>>& jumps);
StateVector inject_jump(const EvolutionSpec& spec, const StateVector& psi0, const Op& jump,
                        double t_jump);
/// Looks the jump up in spec.jumps by name, then by kind name.
StateVector inject_jump(const EvolutionSpec& spec, const StateVector& psi0,
                        const std::string& jump_label, double t_jump);

/// Closed-form SNAP propagator
/// (I − P) + cos(area) P − i sin(area) (S(θ)|f><g| + S(−θ)|g><f|).
Op analytic_propagator(const std::map<int, double>& theta_phases, double area,
                       const TensorSpace& space);

/// splitmix64 step, used to derive independent per-item seeds.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace ftsnap

#endif  // FTSNAP_DYNAMICS_H_
