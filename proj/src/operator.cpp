#include "qhist/operator.hpp"

#include <stdexcept>

namespace qhist {

namespace {

void check_orthonormal_columns(const SparseCd& basis, double tol = 1e-10) {
    Eigen::MatrixXcd gram = Eigen::MatrixXcd(basis.adjoint() * basis);
    double dev = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm();
    if (dev > tol)
        throw std::invalid_argument("OperatorBlock: basis columns not orthonormal (deviation " +
                                    std::to_string(dev) + ")");
}

} // namespace

Operator Operator::dense(SpacePtr space, Eigen::MatrixXcd m) {
    if (m.rows() != space->total_dim() || m.cols() != space->total_dim())
        throw std::invalid_argument("Operator::dense: matrix shape does not match space");
    if (space->total_dim() > kDenseLimit)
        throw std::invalid_argument("Operator::dense: dimension exceeds dense limit");
    Operator op;
    op.space_ = std::move(space);
    op.dense_form_ = true;
    op.dense_ = std::move(m);
    return op;
}

Operator Operator::zero(SpacePtr space) {
    Operator op;
    op.space_ = std::move(space);
    op.complement_ = Complement::Zero;
    return op;
}

Operator Operator::identity(SpacePtr space) {
    Operator op;
    op.space_ = std::move(space);
    op.complement_ = Complement::Identity;
    return op;
}

Operator Operator::block_sum(SpacePtr space, std::vector<OperatorBlock> blocks,
                             Complement complement, bool check_cross_orthogonality) {
    for (const auto& b : blocks) {
        if (b.basis.rows() != space->total_dim())
            throw std::invalid_argument("Operator::block_sum: block basis row count mismatch");
        if (b.mat.rows() != b.basis.cols() || b.mat.cols() != b.basis.cols())
            throw std::invalid_argument("Operator::block_sum: block matrix shape mismatch");
        check_orthonormal_columns(b.basis);
    }
    if (check_cross_orthogonality) {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j) {
                Eigen::MatrixXcd g = Eigen::MatrixXcd(blocks[i].basis.adjoint() * blocks[j].basis);
                if (g.norm() > 1e-10)
                    throw std::invalid_argument("Operator::block_sum: blocks overlap");
            }
    }
    Operator op;
    op.space_ = std::move(space);
    op.blocks_ = std::move(blocks);
    op.complement_ = complement;
    return op;
}

const Eigen::MatrixXcd& Operator::dense_matrix() const {
    if (!dense_form_) throw std::logic_error("Operator::dense_matrix: not a dense operator");
    return dense_;
}

Eigen::VectorXcd Operator::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != space_->total_dim())
        throw std::invalid_argument("Operator::apply: vector length mismatch");
    if (dense_form_) return dense_ * v;
    Eigen::VectorXcd out = (complement_ == Complement::Identity)
                               ? v
                               : Eigen::VectorXcd::Zero(v.size()).eval();
    for (const auto& b : blocks_) {
        Eigen::VectorXcd coeffs = b.basis.adjoint() * v;
        if (complement_ == Complement::Identity)
            out += b.basis * ((b.mat * coeffs) - coeffs);
        else
            out += b.basis * (b.mat * coeffs);
    }
    return out;
}

StateVector Operator::apply(const StateVector& psi) const {
    require_same_space(space_, psi.space(), "Operator::apply");
    return StateVector(psi.space(), apply(psi.amplitudes()));
}

Operator Operator::adjoint() const {
    Operator op;
    op.space_ = space_;
    if (dense_form_) {
        op.dense_form_ = true;
        op.dense_ = dense_.adjoint();
        return op;
    }
    op.complement_ = complement_;
    op.blocks_.reserve(blocks_.size());
    for (const auto& b : blocks_)
        op.blocks_.push_back({b.basis, b.mat.adjoint()});
    return op;
}

Operator Operator::scaled(cd factor) const {
    Operator op;
    op.space_ = space_;
    if (dense_form_) {
        op.dense_form_ = true;
        op.dense_ = factor * dense_;
        return op;
    }
    if (complement_ == Complement::Identity)
        throw std::logic_error("Operator::scaled: cannot scale an identity-complement operator");
    op.complement_ = complement_;
    for (const auto& b : blocks_)
        op.blocks_.push_back({b.basis, factor * b.mat});
    return op;
}

Eigen::MatrixXcd Operator::materialize() const {
    const Eigen::Index d = space_->total_dim();
    if (d > kDenseLimit)
        throw std::runtime_error("Operator::materialize: dimension exceeds dense limit");
    if (dense_form_) return dense_;
    Eigen::MatrixXcd m = (complement_ == Complement::Identity)
                             ? Eigen::MatrixXcd::Identity(d, d).eval()
                             : Eigen::MatrixXcd::Zero(d, d).eval();
    for (const auto& b : blocks_) {
        Eigen::MatrixXcd cols = Eigen::MatrixXcd(b.basis);
        if (complement_ == Complement::Identity)
            m += cols * (b.mat - Eigen::MatrixXcd::Identity(b.mat.rows(), b.mat.cols())) * cols.adjoint();
        else
            m += cols * b.mat * cols.adjoint();
    }
    return m;
}

double Operator::hermiticity_deviation() const {
    if (dense_form_) return (dense_.adjoint() - dense_).norm();
    // With orthonormal block bases, (V A V^+)^+ - V A V^+ = V (A^+ - A) V^+.
    double sq = 0.0;
    for (const auto& b : blocks_) {
        double d = (b.mat.adjoint() - b.mat).norm();
        sq += d * d;
    }
    return std::sqrt(sq);
}

} // namespace qhist
