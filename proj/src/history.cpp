#include "qhist/history.hpp"

#include <stdexcept>

namespace qhist {

History::History(FamilyPtr family, std::vector<HistoryEvent> events, StateVector initial_state)
    : family_(std::move(family)), events_(std::move(events)), initial_(std::move(initial_state)) {
    if (!family_) throw std::invalid_argument("History: null family");
    if (events_.empty()) throw std::invalid_argument("History: no events");
    require_same_space(family_->space(), initial_.space(), "History");
    for (std::size_t i = 0; i < events_.size(); ++i) {
        if (events_[i].label < 0 || events_[i].label >= static_cast<int>(family_->size()))
            throw std::invalid_argument("History: label index out of range");
        if (i > 0 && !(events_[i].time > events_[i - 1].time))
            throw std::invalid_argument("History: event times must be strictly increasing");
    }
}

std::vector<std::string> History::event_labels() const {
    std::vector<std::string> out;
    out.reserve(events_.size());
    for (const auto& e : events_) out.push_back(family_->label(static_cast<std::size_t>(e.label)));
    return out;
}

StateVector history_vector(const History& h, const EvolutionSchedule& schedule) {
    const auto& fam = *h.family();
    Eigen::VectorXcd k = h.initial_state().amplitudes();
    double t = h.events().front().time;
    k = fam.project(static_cast<std::size_t>(h.events().front().label), k);
    for (std::size_t i = 1; i < h.events().size(); ++i) {
        schedule.evolve_in_place(k, t, h.events()[i].time);
        t = h.events()[i].time;
        k = fam.project(static_cast<std::size_t>(h.events()[i].label), k);
    }
    return StateVector(h.initial_state().space(), std::move(k));
}

double copenhagen_probability(const History& h, const EvolutionSchedule& schedule) {
    return history_vector(h, schedule).norm_squared();
}

double everett_probability(const History& h, const EvolutionSchedule& schedule) {
    Eigen::VectorXcd psi = h.initial_state().amplitudes();
    double t = h.events().front().time;
    double p = 1.0;
    const auto& fam = *h.family();
    for (const auto& e : h.events()) {
        schedule.evolve_in_place(psi, t, e.time);
        t = e.time;
        p *= fam.project(static_cast<std::size_t>(e.label), psi).squaredNorm();
    }
    return p;
}

cd decoherence_overlap(const History& h1, const History& h2, const EvolutionSchedule& schedule) {
    if (h1.family() != h2.family() &&
        !h1.family()->space()->same_structure(*h2.family()->space()))
        throw std::invalid_argument("decoherence_overlap: families differ");
    if (h1.events().size() != h2.events().size())
        throw std::invalid_argument("decoherence_overlap: event counts differ");
    for (std::size_t i = 0; i < h1.events().size(); ++i)
        if (std::abs(h1.events()[i].time - h2.events()[i].time) > 1e-12)
            throw std::invalid_argument("decoherence_overlap: event times differ");
    StateVector k1 = history_vector(h1, schedule);
    StateVector k2 = history_vector(h2, schedule);
    return k1.inner(k2);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Copenhagen: return "copenhagen";
        case Method::Bell: return "bell";
        case Method::Everett: return "everett";
        case Method::BellMC: return "bell-mc";
        case Method::Memory: return "memory";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
    if (name == "copenhagen") return Method::Copenhagen;
    if (name == "bell") return Method::Bell;
    if (name == "everett") return Method::Everett;
    if (name == "bell-mc") return Method::BellMC;
    if (name == "memory") return Method::Memory;
    return std::nullopt;
}

std::vector<std::vector<int>> enumerate_label_sequences(std::size_t n_labels,
                                                        std::size_t n_times,
                                                        std::optional<int> fixed_first) {
    if (n_labels == 0 || n_times == 0)
        throw std::invalid_argument("enumerate_label_sequences: empty family or times");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n_times, 0);
    std::size_t start = 0;
    if (fixed_first) {
        cur[0] = *fixed_first;
        start = 1;
    }
    std::size_t free_slots = n_times - start;
    std::size_t count = 1;
    for (std::size_t i = 0; i < free_slots; ++i) count *= n_labels;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rem = c;
        for (std::size_t s = n_times; s-- > start;) {
            cur[s] = static_cast<int>(rem % n_labels);
            rem /= n_labels;
        }
        out.push_back(cur);
    }
    return out;
}

std::vector<History> enumerate_histories(const FamilyPtr& family,
                                         const std::vector<double>& times,
                                         const StateVector& initial_state,
                                         const EvolutionSchedule& schedule,
                                         std::optional<int> fixed_first,
                                         std::optional<Method> prune_method,
                                         double threshold) {
    auto seqs = enumerate_label_sequences(family->size(), times.size(), fixed_first);
    std::vector<History> out;
    std::optional<std::vector<double>> probs;
    if (prune_method) {
        if (*prune_method == Method::Copenhagen)
            probs = copenhagen_column(*family, times, initial_state, schedule, seqs);
        else if (*prune_method == Method::Everett)
            probs = everett_column(*family, times, initial_state, schedule, seqs);
        else
            throw std::invalid_argument("enumerate_histories: unsupported prune method here");
    }
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        if (probs && (*probs)[i] < threshold) continue;
        std::vector<HistoryEvent> evs;
        evs.reserve(times.size());
        for (std::size_t s = 0; s < times.size(); ++s) evs.push_back({seqs[i][s], times[s]});
        out.emplace_back(family, std::move(evs), initial_state);
    }
    return out;
}

namespace {

void sweep(const ProjectorFamily& fam, const std::vector<double>& times,
           const EvolutionSchedule& schedule, const Eigen::VectorXcd& prefix, std::size_t depth,
           std::vector<int>& labels, std::map<std::vector<int>, double>& out) {
    if (depth == times.size()) {
        out[labels] = prefix.squaredNorm();
        return;
    }
    Eigen::VectorXcd next = prefix;
    if (depth > 0) schedule.evolve_in_place(next, times[depth - 1], times[depth]);
    for (std::size_t j = 0; j < fam.size(); ++j) {
        labels.push_back(static_cast<int>(j));
        Eigen::VectorXcd proj = fam.project(j, next);
        if (proj.squaredNorm() < 1e-30) {
            // structurally dead branch: every completion has (numerically)
            // zero probability
            std::vector<int> tail;
            std::size_t rest = times.size() - depth - 1;
            std::size_t count = 1;
            for (std::size_t i = 0; i < rest; ++i) count *= fam.size();
            for (std::size_t c = 0; c < count; ++c) {
                std::vector<int> full = labels;
                std::size_t rem = c;
                std::vector<int> suffix(rest);
                for (std::size_t s = rest; s-- > 0;) {
                    suffix[s] = static_cast<int>(rem % fam.size());
                    rem /= fam.size();
                }
                full.insert(full.end(), suffix.begin(), suffix.end());
                out[full] = 0.0;
            }
        } else {
            sweep(fam, times, schedule, proj, depth + 1, labels, out);
        }
        labels.pop_back();
    }
}

} // namespace

std::vector<double> copenhagen_column(const ProjectorFamily& family,
                                      const std::vector<double>& times,
                                      const StateVector& initial_state,
                                      const EvolutionSchedule& schedule,
                                      const std::vector<std::vector<int>>& sequences) {
    std::map<std::vector<int>, double> table;
    std::vector<int> labels;
    sweep(family, times, schedule, initial_state.amplitudes(), 0, labels, table);
    std::vector<double> out;
    out.reserve(sequences.size());
    for (const auto& s : sequences) {
        auto it = table.find(s);
        out.push_back(it == table.end() ? 0.0 : it->second);
    }
    return out;
}

std::vector<double> everett_column(const ProjectorFamily& family,
                                   const std::vector<double>& times,
                                   const StateVector& initial_state,
                                   const EvolutionSchedule& schedule,
                                   const std::vector<std::vector<int>>& sequences) {
    // Born weights per (time, label), computed once.
    std::vector<Eigen::VectorXd> weights;
    Eigen::VectorXcd psi = initial_state.amplitudes();
    double t = times.front();
    for (std::size_t s = 0; s < times.size(); ++s) {
        schedule.evolve_in_place(psi, t, times[s]);
        t = times[s];
        weights.push_back(family.born_weights(StateVector(initial_state.space(), psi)));
    }
    std::vector<double> out;
    out.reserve(sequences.size());
    for (const auto& seq : sequences) {
        double p = 1.0;
        for (std::size_t s = 0; s < seq.size(); ++s) p *= weights[s](seq[s]);
        out.push_back(p);
    }
    return out;
}

ConsistencyReport consistency_report(const ProjectorFamily& family,
                                     const std::vector<double>& times,
                                     const StateVector& initial_state,
                                     const EvolutionSchedule& schedule,
                                     const std::vector<std::vector<int>>& sequences,
                                     double tolerance) {
    const std::size_t n = sequences.size();
    std::vector<Eigen::VectorXcd> ks;
    ks.reserve(n);
    for (const auto& seq : sequences) {
        Eigen::VectorXcd k = initial_state.amplitudes();
        double t = times.front();
        k = family.project(static_cast<std::size_t>(seq[0]), k);
        for (std::size_t s = 1; s < seq.size(); ++s) {
            schedule.evolve_in_place(k, t, times[s]);
            t = times[s];
            k = family.project(static_cast<std::size_t>(seq[s]), k);
        }
        ks.push_back(std::move(k));
    }
    ConsistencyReport rep;
    rep.overlaps.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                ks[i].dot(ks[j]);
            if (i != j)
                rep.max_off_diagonal = std::max(
                    rep.max_off_diagonal,
                    std::abs(rep.overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
    rep.consistent = rep.max_off_diagonal <= tolerance;
    return rep;
}

} // namespace qhist
