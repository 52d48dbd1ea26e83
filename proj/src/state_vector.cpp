#include "qhist/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace qhist {

StateVector::StateVector(SpacePtr space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
    if (!space_) throw std::invalid_argument("StateVector: null space");
    if (amps_.size() != space_->total_dim())
        throw std::invalid_argument("StateVector: amplitude length does not match space dimension");
    if (!amps_.allFinite())
        throw std::invalid_argument("StateVector: non-finite amplitudes");
}

StateVector StateVector::zero(SpacePtr space) {
    Eigen::Index d = space->total_dim();
    return StateVector(std::move(space), Eigen::VectorXcd::Zero(d));
}

StateVector StateVector::basis_state(SpacePtr space, const std::vector<std::string>& labels) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space->total_dim());
    v(space->index_of(labels)) = cd(1.0, 0.0);
    return StateVector(std::move(space), std::move(v));
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n <= 0.0) throw std::invalid_argument("StateVector::normalized: zero vector");
    return StateVector(space_, amps_ / n);
}

cd StateVector::inner(const StateVector& other) const {
    require_same_space(space_, other.space_, "StateVector::inner");
    return amps_.dot(other.amps_); // Eigen's dot conjugates the left argument
}

} // namespace qhist
