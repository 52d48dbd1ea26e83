#include "qhist/hilbert_space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qhist {

std::shared_ptr<const HilbertSpace> HilbertSpace::make(std::vector<Subsystem> subsystems) {
    if (subsystems.empty())
        throw std::invalid_argument("HilbertSpace: need at least one subsystem");
    std::set<std::string> names;
    for (const auto& s : subsystems) {
        if (!names.insert(s.name).second)
            throw std::invalid_argument("HilbertSpace: duplicate subsystem name '" + s.name + "'");
        if (s.basis_labels.empty())
            throw std::invalid_argument("HilbertSpace: subsystem '" + s.name + "' has no basis labels");
        std::set<std::string> labs(s.basis_labels.begin(), s.basis_labels.end());
        if (labs.size() != s.basis_labels.size())
            throw std::invalid_argument("HilbertSpace: duplicate basis label in subsystem '" + s.name + "'");
    }
    auto sp = std::shared_ptr<HilbertSpace>(new HilbertSpace());
    sp->subs_ = std::move(subsystems);
    sp->strides_.resize(sp->subs_.size());
    Eigen::Index dim = 1;
    for (std::size_t k = sp->subs_.size(); k-- > 0;) {
        sp->strides_[k] = dim;
        dim *= sp->dim_of(k);
    }
    sp->dim_ = dim;
    return sp;
}

std::size_t HilbertSpace::subsystem_index(std::string_view name) const {
    for (std::size_t k = 0; k < subs_.size(); ++k)
        if (subs_[k].name == name) return k;
    throw std::invalid_argument("HilbertSpace: unknown subsystem '" + std::string(name) + "'");
}

bool HilbertSpace::has_subsystem(std::string_view name) const {
    return std::any_of(subs_.begin(), subs_.end(),
                       [&](const Subsystem& s) { return s.name == name; });
}

Eigen::Index HilbertSpace::index_of(const std::vector<std::string>& labels) const {
    if (labels.size() != subs_.size())
        throw std::invalid_argument("HilbertSpace::index_of: wrong number of labels");
    Eigen::Index idx = 0;
    for (std::size_t k = 0; k < subs_.size(); ++k)
        idx += strides_[k] * label_index(k, labels[k]);
    return idx;
}

std::vector<std::string> HilbertSpace::labels_of(Eigen::Index index) const {
    if (index < 0 || index >= dim_)
        throw std::out_of_range("HilbertSpace::labels_of: index out of range");
    std::vector<std::string> out(subs_.size());
    for (std::size_t k = 0; k < subs_.size(); ++k)
        out[k] = subs_[k].basis_labels[static_cast<std::size_t>(label_component(index, k))];
    return out;
}

int HilbertSpace::label_index(std::size_t k, std::string_view label) const {
    const auto& ls = subs_[k].basis_labels;
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("HilbertSpace: unknown basis label '" + std::string(label) +
                                "' in subsystem '" + subs_[k].name + "'");
}

bool HilbertSpace::same_structure(const HilbertSpace& other) const {
    if (subs_.size() != other.subs_.size()) return false;
    for (std::size_t k = 0; k < subs_.size(); ++k)
        if (subs_[k].name != other.subs_[k].name || subs_[k].basis_labels != other.subs_[k].basis_labels)
            return false;
    return true;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (a == b) return;
    if (a && b && a->same_structure(*b)) return;
    throw std::invalid_argument(std::string(what) + ": operands live on different spaces");
}

} // namespace qhist
