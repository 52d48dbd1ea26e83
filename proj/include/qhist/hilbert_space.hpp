#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace qhist {

using cd = std::complex<double>;

/// One labeled tensor factor of a product space.
struct Subsystem {
    std::string name;
    std::vector<std::string> basis_labels;
};

/// An ordered list of finite-dimensional labeled subsystems. Product-basis
/// indexing is row-major in declaration order: the last subsystem varies
/// fastest. Immutable after construction; share via SpacePtr.
class HilbertSpace {
public:
    static std::shared_ptr<const HilbertSpace> make(std::vector<Subsystem> subsystems);

    const std::vector<Subsystem>& subsystems() const { return subs_; }
    Eigen::Index total_dim() const { return dim_; }
    std::size_t subsystem_count() const { return subs_.size(); }

    /// Position of a subsystem by name; throws std::invalid_argument if unknown.
    std::size_t subsystem_index(std::string_view name) const;
    bool has_subsystem(std::string_view name) const;

    Eigen::Index dim_of(std::size_t k) const { return static_cast<Eigen::Index>(subs_[k].basis_labels.size()); }
    Eigen::Index stride_of(std::size_t k) const { return strides_[k]; }

    /// Product-basis index of a full label tuple (one label per subsystem, in order).
    Eigen::Index index_of(const std::vector<std::string>& labels) const;
    /// Label tuple of a product-basis index.
    std::vector<std::string> labels_of(Eigen::Index index) const;
    /// Which basis label (as an index into subsystem k's label list) a
    /// product-basis index carries at subsystem k.
    int label_component(Eigen::Index index, std::size_t k) const {
        return static_cast<int>((index / strides_[k]) % dim_of(k));
    }
    /// Index of `label` within subsystem k's label list; throws if unknown.
    int label_index(std::size_t k, std::string_view label) const;

    /// Structural equality (same subsystem names, order and labels).
    bool same_structure(const HilbertSpace& other) const;

private:
    HilbertSpace() = default;
    std::vector<Subsystem> subs_;
    std::vector<Eigen::Index> strides_;
    Eigen::Index dim_ = 0;
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

/// Throws std::invalid_argument unless both values live on the same space
/// (pointer identity or structural equality).
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

} // namespace qhist
