#include "qhist/linalg.hpp"

#include <set>
#include <stdexcept>

namespace qhist {

SpacePtr tensor_space(const std::vector<SpacePtr>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor_space: no factors");
    std::vector<Subsystem> subs;
    std::set<std::string> names;
    for (const auto& f : factors)
        for (const auto& s : f->subsystems()) {
            if (!names.insert(s.name).second)
                throw std::invalid_argument("tensor_space: overlapping subsystem '" + s.name + "'");
            subs.push_back(s);
        }
    return HilbertSpace::make(std::move(subs));
}

StateVector tensor_product(const std::vector<StateVector>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor_product: no factors");
    std::vector<SpacePtr> spaces;
    for (const auto& f : factors) spaces.push_back(f.space());
    SpacePtr big = tensor_space(spaces);
    Eigen::VectorXcd amps = factors[0].amplitudes();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        const auto& b = factors[i].amplitudes();
        Eigen::VectorXcd next(amps.size() * b.size());
        for (Eigen::Index r = 0; r < amps.size(); ++r)
            next.segment(r * b.size(), b.size()) = amps(r) * b;
        amps = std::move(next);
    }
    return StateVector(big, std::move(amps));
}

Operator tensor_product(const std::vector<Operator>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor_product: no factors");
    std::vector<SpacePtr> spaces;
    for (const auto& f : factors) spaces.push_back(f.space());
    SpacePtr big = tensor_space(spaces);
    if (big->total_dim() > Operator::kDenseLimit)
        throw std::invalid_argument("tensor_product: result exceeds dense limit");
    Eigen::MatrixXcd m = factors[0].materialize();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        Eigen::MatrixXcd b = factors[i].materialize();
        Eigen::MatrixXcd next(m.rows() * b.rows(), m.cols() * b.cols());
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = m(r, c) * b;
        m = std::move(next);
    }
    return Operator::dense(big, std::move(m));
}

StateVector product_basis_state(const SpacePtr& space, const std::vector<std::string>& labels) {
    return StateVector::basis_state(space, labels);
}

namespace {

/// Map a (local index, rest index) pair into the target space's
/// product-basis index. `local_pos[k]` is the target subsystem position of
/// the local space's k-th subsystem; `rest_pos` lists the remaining target
/// positions in target order.
struct EmbedIndexer {
    const HilbertSpace* target;
    std::vector<std::size_t> local_pos;
    std::vector<std::size_t> rest_pos;
    Eigen::Index rest_dim;

    Eigen::Index rest_count() const { return rest_dim; }

    Eigen::Index map(Eigen::Index local_idx, const HilbertSpace& local, Eigen::Index rest_idx) const {
        Eigen::Index out = 0;
        for (std::size_t k = 0; k < local_pos.size(); ++k)
            out += target->stride_of(local_pos[k]) * local.label_component(local_idx, k);
        for (std::size_t r = rest_pos.size(); r-- > 0;) {
            std::size_t p = rest_pos[r];
            Eigen::Index d = target->dim_of(p);
            out += target->stride_of(p) * (rest_idx % d);
            rest_idx /= d;
        }
        return out;
    }
};

EmbedIndexer make_indexer(const HilbertSpace& local, const SpacePtr& target) {
    EmbedIndexer ix;
    ix.target = target.get();
    std::set<std::size_t> used;
    for (const auto& s : local.subsystems()) {
        std::size_t p = target->subsystem_index(s.name);
        if (target->subsystems()[p].basis_labels != s.basis_labels)
            throw std::invalid_argument("embed: subsystem '" + s.name +
                                        "' has different basis labels in the target space");
        ix.local_pos.push_back(p);
        used.insert(p);
    }
    ix.rest_dim = 1;
    for (std::size_t p = 0; p < target->subsystem_count(); ++p)
        if (!used.count(p)) {
            ix.rest_pos.push_back(p);
            ix.rest_dim *= target->dim_of(p);
        }
    return ix;
}

} // namespace

Operator embed(const Operator& local_op, const SpacePtr& target) {
    const HilbertSpace& local = *local_op.space();
    EmbedIndexer ix = make_indexer(local, target);
    const Eigen::Index dl = local.total_dim();

    if (local_op.is_dense()) {
        if (target->total_dim() > Operator::kDenseLimit)
            throw std::invalid_argument("embed: dense result exceeds dense limit");
        const auto& m = local_op.dense_matrix();
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(target->total_dim(), target->total_dim());
        for (Eigen::Index i = 0; i < dl; ++i)
            for (Eigen::Index j = 0; j < dl; ++j) {
                if (m(i, j) == cd(0.0, 0.0)) continue;
                for (Eigen::Index r = 0; r < ix.rest_count(); ++r)
                    out(ix.map(i, local, r), ix.map(j, local, r)) = m(i, j);
            }
        return Operator::dense(target, std::move(out));
    }

    // Block form: every block is replicated once per rest configuration with
    // its columns re-indexed into the target space.
    std::vector<OperatorBlock> blocks;
    for (const auto& b : local_op.blocks()) {
        for (Eigen::Index r = 0; r < ix.rest_count(); ++r) {
            SparseCd basis(target->total_dim(), b.basis.cols());
            std::vector<Eigen::Triplet<cd>> trips;
            for (int c = 0; c < b.basis.outerSize(); ++c)
                for (SparseCd::InnerIterator it(b.basis, c); it; ++it)
                    trips.emplace_back(ix.map(it.row(), local, r), c, it.value());
            basis.setFromTriplets(trips.begin(), trips.end());
            blocks.push_back({std::move(basis), b.mat});
        }
    }
    return Operator::block_sum(target, std::move(blocks), local_op.complement());
}

Operator projector_from_states(const std::vector<StateVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("projector_from_states: no vectors");
    SpacePtr space = vectors[0].space();
    const Eigen::Index dim = space->total_dim();
    Eigen::MatrixXcd cols(dim, static_cast<Eigen::Index>(vectors.size()));
    Eigen::Index k = 0;
    for (const auto& v : vectors) {
        require_same_space(space, v.space(), "projector_from_states");
        Eigen::VectorXcd u = v.amplitudes();
        double orig = u.norm();
        if (orig <= 1e-14)
            throw std::invalid_argument("projector_from_states: zero vector");
        for (Eigen::Index c = 0; c < k; ++c) u -= cols.col(c).dot(u) * cols.col(c);
        // second orthogonalization pass for numerical safety
        for (Eigen::Index c = 0; c < k; ++c) u -= cols.col(c).dot(u) * cols.col(c);
        double res = u.norm();
        if (res <= 1e-10 * orig)
            throw std::invalid_argument("projector_from_states: linearly dependent vectors");
        cols.col(k++) = u / res;
    }
    SparseCd basis = cols.sparseView(1.0, 1e-300);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
    return Operator::block_sum(space, {{std::move(basis), std::move(id)}});
}

} // namespace qhist
