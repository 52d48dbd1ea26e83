#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhist/operator.hpp"

namespace qhist {

/// Measured deviations of a projector family from being a complete
/// orthogonal family. Each entry is a Frobenius-norm worst case over members.
struct FamilyValidation {
    double hermiticity = 0.0;
    double idempotence = 0.0;
    double orthogonality = 0.0;
    double completeness = 0.0;
    bool pass(double tol = 1e-10) const {
        return hermiticity <= tol && idempotence <= tol && orthogonality <= tol &&
               completeness <= tol;
    }
    double worst() const;
};

/// A complete orthogonal family {Pi_j} labeled by experience symbols.
/// When every member projects onto a set of product-basis states, the family
/// carries a basis partition (product-basis index -> member index) that the
/// dynamics engines use for masked fast paths.
class ProjectorFamily {
public:
    ProjectorFamily(SpacePtr space, std::vector<std::pair<std::string, Operator>> members);

    /// Family whose labels are the joint basis labels of the named
    /// subsystems; members project onto the corresponding index sets.
    /// Joint labels are rendered "(a,b,c)"; a single subsystem keeps its
    /// bare labels.
    static std::shared_ptr<const ProjectorFamily>
    from_subsystems(SpacePtr space, const std::vector<std::string>& subsystem_names);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return members_.size(); }
    const std::string& label(std::size_t j) const { return members_[j].first; }
    std::vector<std::string> labels() const;
    const Operator& member(std::size_t j) const { return members_[j].second; }
    /// Index of a label; throws std::invalid_argument if unknown.
    std::size_t label_index(std::string_view label) const;

    /// index -> member index when all members are product-basis aligned.
    const std::optional<std::vector<int>>& basis_partition() const { return partition_; }

    /// Born weights <psi|Pi_j|psi> for every member.
    Eigen::VectorXd born_weights(const StateVector& psi) const;
    /// Pi_j |psi>.
    Eigen::VectorXcd project(std::size_t j, const Eigen::VectorXcd& v) const;

    FamilyValidation validate() const;

private:
    void try_detect_partition();
    SpacePtr space_;
    std::vector<std::pair<std::string, Operator>> members_;
    std::optional<std::vector<int>> partition_;
};

using FamilyPtr = std::shared_ptr<const ProjectorFamily>;

/// Report-only check of Hermiticity, idempotence, mutual orthogonality and
/// completeness; passes iff every deviation is within `tol`.
FamilyValidation validate_family(const ProjectorFamily& family);

} // namespace qhist
