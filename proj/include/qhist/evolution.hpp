#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qhist/operator.hpp"
#include "qhist/state_vector.hpp"

namespace qhist {

/// exp(A) by scaling-and-squaring with the degree-13 Pade approximant.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

/// A designed rotation |source> -> |target| through `angle` over the span
/// of the pair. Source and target must be orthonormal; the generator
/// contribution is i*(angle/duration)(|t><s| - |s><t|).
struct RotationPair {
    Eigen::VectorXcd source;
    Eigen::VectorXcd target;
    double angle = 1.5707963267948966; // pi/2
};

/// H = sum_pairs i*(pi/(2*duration))(|t><s| - |s><t|): the block-form
/// measurement generator; exp(-iH*duration) maps each source onto its
/// target. Throws on non-orthogonal or unnormalized pairs.
Operator rotation_hamiltonian(const SpacePtr& space,
                              const std::vector<std::pair<StateVector, StateVector>>& pairs,
                              double duration);

/// One piecewise-constant slice of the timeline. Rotation segments carry
/// their pair structure so propagators are evaluated analytically; generic
/// segments fall back to the matrix exponential.
class Segment {
public:
    static Segment rotation(double t_start, double t_end, SpacePtr space,
                            std::vector<RotationPair> pairs);
    static Segment idle(double t_start, double t_end, SpacePtr space);
    static Segment generic(double t_start, double t_end, Operator hermitian_hamiltonian);

    double t_start() const { return t0_; }
    double t_end() const { return t1_; }
    double duration() const { return t1_ - t0_; }
    const SpacePtr& space() const { return space_; }
    bool is_rotation() const { return kind_ == Kind::Rotation; }
    bool is_idle() const { return kind_ == Kind::Idle; }

    Operator hamiltonian() const;

    /// exp(-iH(tb-ta)) for t_start <= ta <= tb <= t_end.
    Operator propagator(double ta, double tb) const;

    /// In-place fast application of the propagator over [ta, tb].
    void apply_propagator(Eigen::VectorXcd& v, double ta, double tb) const;
    /// out = H * v without building an Operator.
    void apply_hamiltonian(const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const;

    const std::vector<RotationPair>& rotation_pairs() const { return pairs_; }

private:
    enum class Kind { Rotation, Idle, Generic };
    Segment() = default;
    void check_times(double ta, double tb) const;

    Kind kind_ = Kind::Idle;
    double t0_ = 0.0, t1_ = 0.0;
    SpacePtr space_;
    std::vector<RotationPair> pairs_;        // Rotation
    std::optional<Operator> generic_h_;      // Generic

    // packed sparse views of the pair vectors for the hot paths
    struct Packed {
        std::vector<Eigen::Index> si, ti;
        std::vector<cd> sv, tv;
        double rate = 0.0; // angle / duration
    };
    std::vector<Packed> packed_;
    void pack();
public:
    const std::vector<Packed>& packed_pairs() const { return packed_; }
};

/// Ordered, contiguous, non-overlapping segments covering [t_begin, t_end].
class EvolutionSchedule {
public:
    explicit EvolutionSchedule(std::vector<Segment> segments);

    double t_begin() const { return segments_.front().t_start(); }
    double t_end() const { return segments_.back().t_end(); }
    const std::vector<Segment>& segments() const { return segments_; }
    const SpacePtr& space() const { return segments_.front().space(); }

    /// Index of the segment whose half-open interval [t_start, t_end)
    /// contains t; t_end() maps to the last segment.
    std::size_t segment_index_at(double t) const;

    StateVector evolve(const StateVector& psi, double ta, double tb) const;
    void evolve_in_place(Eigen::VectorXcd& v, double ta, double tb) const;

    /// Dense propagator matrix over [ta, tb] (oracle/test use; dense limit).
    Eigen::MatrixXcd propagator_matrix(double ta, double tb) const;

private:
    std::vector<Segment> segments_;
};

} // namespace qhist
