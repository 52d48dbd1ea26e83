#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhist/evolution.hpp"
#include "qhist/projector_family.hpp"

namespace qhist {

/// One event: a family member observed at a time.
struct HistoryEvent {
    int label = 0; // index into the family
    double time = 0.0;
};

/// A time-labelled sequence of events over one projector family, starting
/// from a given initial state at the first event's time.
class History {
public:
    History(FamilyPtr family, std::vector<HistoryEvent> events, StateVector initial_state);

    const FamilyPtr& family() const { return family_; }
    const std::vector<HistoryEvent>& events() const { return events_; }
    const StateVector& initial_state() const { return initial_; }
    std::vector<std::string> event_labels() const;

private:
    FamilyPtr family_;
    std::vector<HistoryEvent> events_;
    StateVector initial_;
};

/// K(h): alternately evolve and project, starting from the initial state at
/// the first event's time (the first event's projector is applied too).
/// Returned unnormalized.
StateVector history_vector(const History& h, const EvolutionSchedule& schedule);

/// <K(h)|K(h)>.
double copenhagen_probability(const History& h, const EvolutionSchedule& schedule);

/// Product of single-time Born weights over the events.
double everett_probability(const History& h, const EvolutionSchedule& schedule);

/// <K(h1)|K(h2)>. Histories must share the family and event times.
cd decoherence_overlap(const History& h1, const History& h2, const EvolutionSchedule& schedule);

enum class Method { Copenhagen, Bell, Everett, BellMC, Memory };
std::string method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

/// All label sequences over `n_times` slots (optionally with a fixed first
/// label), in row-major label order.
std::vector<std::vector<int>> enumerate_label_sequences(std::size_t n_labels,
                                                        std::size_t n_times,
                                                        std::optional<int> fixed_first = {});

/// Instantiate Histories for the sequences; optionally prune those whose
/// probability under `prune_method` is below `threshold`.
std::vector<History> enumerate_histories(const FamilyPtr& family,
                                         const std::vector<double>& times,
                                         const StateVector& initial_state,
                                         const EvolutionSchedule& schedule,
                                         std::optional<int> fixed_first = {},
                                         std::optional<Method> prune_method = {},
                                         double threshold = 1e-12);

/// Copenhagen probabilities for every sequence in `sequences`, evaluated by
/// a shared-prefix sweep of the projection chain.
std::vector<double> copenhagen_column(const ProjectorFamily& family,
                                      const std::vector<double>& times,
                                      const StateVector& initial_state,
                                      const EvolutionSchedule& schedule,
                                      const std::vector<std::vector<int>>& sequences);

/// Everett probabilities (products of single-time Born weights).
std::vector<double> everett_column(const ProjectorFamily& family,
                                   const std::vector<double>& times,
                                   const StateVector& initial_state,
                                   const EvolutionSchedule& schedule,
                                   const std::vector<std::vector<int>>& sequences);

/// Pairwise overlap matrix <K(h_i)|K(h_j)> for a set of sequences at common
/// times; `consistent` is true when every off-diagonal magnitude is within
/// the tolerance.
struct ConsistencyReport {
    Eigen::MatrixXcd overlaps;
    double max_off_diagonal = 0.0;
    bool consistent = false;
};
ConsistencyReport consistency_report(const ProjectorFamily& family,
                                     const std::vector<double>& times,
                                     const StateVector& initial_state,
                                     const EvolutionSchedule& schedule,
                                     const std::vector<std::vector<int>>& sequences,
                                     double tolerance = 1e-8);

} // namespace qhist
