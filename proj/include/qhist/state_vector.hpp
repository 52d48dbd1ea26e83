#pragma once

#include <vector>

#include <Eigen/Core>

#include "qhist/hilbert_space.hpp"

namespace qhist {

/// Dense complex amplitude vector over a HilbertSpace, indexed in the
/// space's product basis.
class StateVector {
public:
    StateVector(SpacePtr space, Eigen::VectorXcd amplitudes);

    static StateVector zero(SpacePtr space);
    static StateVector basis_state(SpacePtr space, const std::vector<std::string>& labels);

    const SpacePtr& space() const { return space_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::VectorXcd& amplitudes() { return amps_; }

    double norm_squared() const { return amps_.squaredNorm(); }
    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = 1e-10) const;
    StateVector normalized() const;

    /// <this|other>
    cd inner(const StateVector& other) const;

    cd amplitude(const std::vector<std::string>& labels) const {
        return amps_(space_->index_of(labels));
    }

private:
    SpacePtr space_;
    Eigen::VectorXcd amps_;
};

} // namespace qhist
