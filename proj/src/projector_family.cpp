#include "qhist/projector_family.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qhist {

double FamilyValidation::worst() const {
    return std::max({hermiticity, idempotence, orthogonality, completeness});
}

ProjectorFamily::ProjectorFamily(SpacePtr space,
                                 std::vector<std::pair<std::string, Operator>> members)
    : space_(std::move(space)), members_(std::move(members)) {
    if (members_.empty())
        throw std::invalid_argument("ProjectorFamily: empty member list");
    std::set<std::string> labels;
    for (const auto& [label, op] : members_) {
        if (!labels.insert(label).second)
            throw std::invalid_argument("ProjectorFamily: duplicate label '" + label + "'");
        require_same_space(space_, op.space(), "ProjectorFamily");
    }
    try_detect_partition();
}

std::shared_ptr<const ProjectorFamily>
ProjectorFamily::from_subsystems(SpacePtr space, const std::vector<std::string>& subsystem_names) {
    if (subsystem_names.empty())
        throw std::invalid_argument("ProjectorFamily::from_subsystems: no subsystems given");
    std::vector<std::size_t> ks;
    for (const auto& n : subsystem_names) ks.push_back(space->subsystem_index(n));

    // Joint labels in row-major order over the chosen subsystems.
    std::vector<std::vector<int>> tuples{{}};
    for (std::size_t k : ks) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tuples)
            for (int a = 0; a < space->dim_of(k); ++a) {
                auto u = t;
                u.push_back(a);
                next.push_back(std::move(u));
            }
        tuples = std::move(next);
    }

    const Eigen::Index dim = space->total_dim();
    std::vector<std::pair<std::string, Operator>> members;
    members.reserve(tuples.size());
    for (const auto& t : tuples) {
        std::vector<Eigen::Index> idxs;
        for (Eigen::Index i = 0; i < dim; ++i) {
            bool match = true;
            for (std::size_t a = 0; a < ks.size(); ++a)
                if (space->label_component(i, ks[a]) != t[a]) { match = false; break; }
            if (match) idxs.push_back(i);
        }
        SparseCd basis(dim, static_cast<Eigen::Index>(idxs.size()));
        basis.reserve(Eigen::VectorXi::Constant(static_cast<int>(idxs.size()), 1));
        for (size_t c = 0; c < idxs.size(); ++c)
            basis.insert(idxs[c], static_cast<Eigen::Index>(c)) = cd(1.0, 0.0);
        basis.makeCompressed();
        Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(idxs.size()),
                                                         static_cast<Eigen::Index>(idxs.size()));
        std::string label;
        if (ks.size() == 1) {
            label = space->subsystems()[ks[0]].basis_labels[static_cast<std::size_t>(t[0])];
        } else {
            label = "(";
            for (std::size_t a = 0; a < ks.size(); ++a) {
                if (a) label += ",";
                label += space->subsystems()[ks[a]].basis_labels[static_cast<std::size_t>(t[a])];
            }
            label += ")";
        }
        members.emplace_back(std::move(label),
                             Operator::block_sum(space, {{std::move(basis), std::move(id)}}));
    }
    return std::make_shared<const ProjectorFamily>(space, std::move(members));
}

std::vector<std::string> ProjectorFamily::labels() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (const auto& [l, _] : members_) out.push_back(l);
    return out;
}

std::size_t ProjectorFamily::label_index(std::string_view label) const {
    for (std::size_t j = 0; j < members_.size(); ++j)
        if (members_[j].first == label) return j;
    throw std::invalid_argument("ProjectorFamily: unknown label '" + std::string(label) + "'");
}

void ProjectorFamily::try_detect_partition() {
    // A member qualifies when its block bases consist of elementary columns
    // (one entry of unit modulus) and its block matrices are identities.
    const Eigen::Index dim = space_->total_dim();
    std::vector<int> part(static_cast<std::size_t>(dim), -1);
    for (std::size_t j = 0; j < members_.size(); ++j) {
        const Operator& op = members_[j].second;
        if (op.is_dense()) { partition_.reset(); return; }
        if (op.complement() != Complement::Zero) { partition_.reset(); return; }
        for (const auto& b : op.blocks()) {
            if (!b.mat.isIdentity(1e-14)) { partition_.reset(); return; }
            for (int c = 0; c < b.basis.outerSize(); ++c) {
                int nnz = 0;
                Eigen::Index row = -1;
                for (SparseCd::InnerIterator it(b.basis, c); it; ++it) {
                    ++nnz;
                    row = it.row();
                    if (std::abs(std::abs(it.value()) - 1.0) > 1e-14) { partition_.reset(); return; }
                }
                if (nnz != 1) { partition_.reset(); return; }
                if (part[static_cast<std::size_t>(row)] != -1) { partition_.reset(); return; }
                part[static_cast<std::size_t>(row)] = static_cast<int>(j);
            }
        }
    }
    if (std::any_of(part.begin(), part.end(), [](int v) { return v < 0; })) {
        partition_.reset();
        return;
    }
    partition_ = std::move(part);
}

Eigen::VectorXd ProjectorFamily::born_weights(const StateVector& psi) const {
    require_same_space(space_, psi.space(), "ProjectorFamily::born_weights");
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(members_.size()));
    const auto& v = psi.amplitudes();
    if (partition_) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            q((*partition_)[static_cast<std::size_t>(i)]) += std::norm(v(i));
        return q;
    }
    for (std::size_t j = 0; j < members_.size(); ++j)
        q(static_cast<Eigen::Index>(j)) = members_[j].second.apply(v).squaredNorm();
    return q;
}

Eigen::VectorXcd ProjectorFamily::project(std::size_t j, const Eigen::VectorXcd& v) const {
    if (partition_) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if ((*partition_)[static_cast<std::size_t>(i)] == static_cast<int>(j)) out(i) = v(i);
        return out;
    }
    return members_[j].second.apply(v);
}

namespace {

// Small-matrix trace identities let the block form be audited without
// materializing dim x dim matrices.
struct BlockView {
    std::vector<const OperatorBlock*> blocks;
};

double frob(const Eigen::MatrixXcd& m) { return m.norm(); }

} // namespace

FamilyValidation ProjectorFamily::validate() const {
    FamilyValidation rep;
    const Eigen::Index dim = space_->total_dim();

    bool all_block = std::all_of(members_.begin(), members_.end(),
                                 [](const auto& m) { return m.second.is_block(); });

    if (!all_block || dim <= 512) {
        // Dense audit (small spaces): direct matrix arithmetic.
        std::vector<Eigen::MatrixXcd> mats;
        mats.reserve(members_.size());
        for (const auto& [_, op] : members_) mats.push_back(op.materialize());
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
        for (std::size_t j = 0; j < mats.size(); ++j) {
            rep.hermiticity = std::max(rep.hermiticity, frob(mats[j].adjoint() - mats[j]));
            rep.idempotence = std::max(rep.idempotence, frob(mats[j] * mats[j] - mats[j]));
            for (std::size_t k = j + 1; k < mats.size(); ++k)
                rep.orthogonality = std::max(rep.orthogonality, frob(mats[j] * mats[k]));
            sum += mats[j];
        }
        rep.completeness = frob(sum - Eigen::MatrixXcd::Identity(dim, dim));
        return rep;
    }

    // Block audit. For Pi = sum_b V_b A_b V_b^+ the needed norms reduce to
    // small Gram-matrix expressions; cross-member Gram matrices stay sparse.
    auto gram = [](const OperatorBlock& a, const OperatorBlock& b) {
        return Eigen::MatrixXcd(a.basis.adjoint() * b.basis);
    };
    double her2 = 0.0, idem2 = 0.0;
    for (const auto& [_, op] : members_) {
        double h2 = 0.0, i2 = 0.0;
        const auto& bs = op.blocks();
        for (std::size_t a = 0; a < bs.size(); ++a) {
            h2 += std::norm(frob(bs[a].mat.adjoint() - bs[a].mat));
            for (std::size_t b = 0; b < bs.size(); ++b) {
                // (Pi^2 - Pi) term via Gram products
                Eigen::MatrixXcd g = gram(bs[a], bs[b]);
                Eigen::MatrixXcd t = bs[a].mat * g * bs[b].mat;
                if (a == b) t -= bs[a].mat;
                i2 += t.squaredNorm();
            }
        }
        her2 = std::max(her2, h2);
        idem2 = std::max(idem2, i2);
    }
    rep.hermiticity = std::sqrt(her2);
    rep.idempotence = std::sqrt(idem2);

    double orth = 0.0;
    for (std::size_t j = 0; j < members_.size(); ++j)
        for (std::size_t k = j + 1; k < members_.size(); ++k) {
            double s2 = 0.0;
            for (const auto& ba : members_[j].second.blocks())
                for (const auto& bb : members_[k].second.blocks()) {
                    Eigen::MatrixXcd g = gram(ba, bb);
                    s2 += (ba.mat * g * bb.mat).squaredNorm();
                }
            orth = std::max(orth, std::sqrt(s2));
        }
    rep.orthogonality = orth;

    // ||sum Pi - I||_F^2 = dim - 2 sum tr(Pi) + sum_{j,k} tr(Pi_j Pi_k)
    double tr_sum = 0.0, cross = 0.0;
    for (const auto& [_, opj] : members_)
        for (const auto& b : opj.blocks()) {
            Eigen::MatrixXcd g = gram(b, b);
            tr_sum += (b.mat * g).trace().real();
        }
    for (const auto& [_, opj] : members_)
        for (const auto& [__, opk] : members_)
            for (const auto& ba : opj.blocks())
                for (const auto& bb : opk.blocks()) {
                    Eigen::MatrixXcd gab = gram(ba, bb);
                    cross += (ba.mat * gab * bb.mat * gab.adjoint()).trace().real();
                }
    double c2 = static_cast<double>(dim) - 2.0 * tr_sum + cross;
    rep.completeness = std::sqrt(std::max(0.0, c2));
    return rep;
}

FamilyValidation validate_family(const ProjectorFamily& family) { return family.validate(); }

} // namespace qhist
