#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qhist/evolution.hpp"
#include "qhist/history.hpp"
#include "qhist/projector_family.hpp"

namespace qhist {

/// Instantaneous jump rates w[j][k] (from j to k, per unit time) together
/// with the occupancies <Psi|Pi_j|Psi> they were computed from.
struct RateMatrix {
    double time = 0.0;
    Eigen::MatrixXd w;
    Eigen::VectorXd occupancy;
    /// max over pairs of min(w_jk, w_kj); exactly one direction is active
    /// for a Hermitian generator, so this should vanish.
    double mutual_exclusivity_deviation() const;
};

/// w_jk = max(0, 2 Im<Psi|Pi_k H Pi_j|Psi|>) / <Psi|Pi_j|Psi>, with all exit
/// rates from a member zeroed when its occupancy is at or below the floor.
RateMatrix bell_rates(const StateVector& state, const Operator& hamiltonian,
                      const ProjectorFamily& family, double occupancy_floor = 1e-12);

struct KernelOptions {
    double step = 1e-4;                // base integration step
    double stability_threshold = 0.5;  // substep when max exit rate * h exceeds this
    double occupancy_floor = 1e-12;
};

/// Aggregates gathered while integrating.
struct BellStats {
    double max_mutual_exclusivity = 0.0; // should be ~0
    double min_kernel_entry = 0.0;       // most negative entry before clamping
    double max_row_sum_deviation = 0.0;
    std::int64_t rate_evaluations = 0;
    void merge(const BellStats& o);
};

/// Conditional probabilities T[j][k] = P(label k at t_b | label j at t_a).
struct TransitionKernel {
    double t_a = 0.0, t_b = 0.0;
    Eigen::MatrixXd T; // row-stochastic
};

/// Integrates the rate master equation dP_k/dt = sum_m (w_mk P_m - w_km P_k)
/// for every delta start, with the universal state co-evolved exactly via
/// the segment propagators. Classical fixed-step 4th order on the base grid;
/// steps where the exit rates are too stiff for the base step (occupancies
/// draining to zero at measurement completions) are bisected until
/// max-rate*h stays within opts.stability_threshold.
///
/// `ref_state` is the universal state at `ref_time` (<= t_a).
TransitionKernel transition_kernel(const EvolutionSchedule& schedule,
                                   const FamilyPtr& family, const StateVector& ref_state,
                                   double ref_time, double t_a, double t_b,
                                   const KernelOptions& opts = {}, BellStats* stats = nullptr);

/// P_B(h): Born weight of the first event times the chained kernel entries.
double bell_history_probability(const History& h, const EvolutionSchedule& schedule,
                                const KernelOptions& opts = {});

/// Bell probabilities for many sequences over common times, reusing one
/// kernel per consecutive time pair.
std::vector<double> bell_column(const FamilyPtr& family, const std::vector<double>& times,
                                const StateVector& initial_state,
                                const EvolutionSchedule& schedule,
                                const std::vector<std::vector<int>>& sequences,
                                const KernelOptions& opts = {}, BellStats* stats = nullptr);

/// Integrates the full master equation from the Born distribution at
/// times.front() and returns max over the given times and labels of
/// |P_j(t) - <Psi(t)|Pi_j|Psi(t)>|.
double born_marginal_check(const EvolutionSchedule& schedule, const FamilyPtr& family,
                           const StateVector& ref_state, double ref_time,
                           const std::vector<double>& times, const KernelOptions& opts = {},
                           BellStats* stats = nullptr);

struct TrajectoryOptions {
    double step = 1e-4;
    double guard_max_jump_probability = 0.1; // error if exceeded on occupied labels
    double guard_occupancy_floor = 1e-6;     // labels below this are exempt from the guard
    double occupancy_floor = 1e-12;
};

struct TrajectoryBatch {
    std::uint64_t seed = 0;
    std::int64_t n_trajectories = 0;
    double step = 0.0;
    std::map<std::vector<int>, std::int64_t> counts; // label sequence -> occurrences
};

/// Per-step Bernoulli thinning of the jump process: each trajectory draws
/// its own stream from (seed, index), jumps j->k with probability
/// w_jk(t)*step, and records its label at each event time. Deterministic for
/// fixed (seed, n, step).
TrajectoryBatch sample_trajectories(const EvolutionSchedule& schedule, const FamilyPtr& family,
                                    const StateVector& ref_state, double ref_time,
                                    const std::vector<double>& event_times, std::uint64_t seed,
                                    std::int64_t n, const TrajectoryOptions& opts = {});

/// Largest per-step jump probability over the sampling grid, restricted to
/// labels whose occupancy exceeds the guard floor. The sampler refuses to
/// run when this exceeds opts.guard_max_jump_probability.
double trajectory_guard_scan(const EvolutionSchedule& schedule, const FamilyPtr& family,
                             const StateVector& ref_state, double ref_time,
                             const std::vector<double>& event_times,
                             const TrajectoryOptions& opts = {});

} // namespace qhist
