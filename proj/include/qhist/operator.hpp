#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "qhist/hilbert_space.hpp"
#include "qhist/state_vector.hpp"

namespace qhist {

using SparseCd = Eigen::SparseMatrix<cd>;

/// One term of a block-sum operator: an action confined to the subspace
/// spanned by the orthonormal columns of `basis`. The term acts as
/// basis * mat * basis^dagger.
struct OperatorBlock {
    SparseCd basis;       // total_dim x k, orthonormal columns
    Eigen::MatrixXcd mat; // k x k
};

/// How a block-sum operator acts on the orthogonal complement of the union
/// of its block subspaces: annihilate it (Zero; Hamiltonians, projectors)
/// or leave it untouched (Identity; propagators).
enum class Complement { Zero, Identity };

/// Dense or block-sum complex operator over a HilbertSpace. Immutable.
/// Dense materialization is refused above kDenseLimit; larger spaces must
/// use the block-sum form applied matrix-free.
class Operator {
public:
    static constexpr Eigen::Index kDenseLimit = 4096;

    static Operator dense(SpacePtr space, Eigen::MatrixXcd m);
    static Operator zero(SpacePtr space);
    static Operator identity(SpacePtr space);
    /// `check_cross_orthogonality` verifies that distinct blocks span
    /// mutually orthogonal subspaces (required for Complement::Identity
    /// to compose per-block actions independently).
    static Operator block_sum(SpacePtr space, std::vector<OperatorBlock> blocks,
                              Complement complement = Complement::Zero,
                              bool check_cross_orthogonality = false);

    const SpacePtr& space() const { return space_; }
    bool is_dense() const { return dense_form_; }
    bool is_block() const { return !dense_form_; }
    const Eigen::MatrixXcd& dense_matrix() const;
    const std::vector<OperatorBlock>& blocks() const { return blocks_; }
    Complement complement() const { return complement_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    StateVector apply(const StateVector& psi) const;

    Operator adjoint() const;
    Operator scaled(cd factor) const;

    /// Dense matrix of this operator; throws above kDenseLimit.
    Eigen::MatrixXcd materialize() const;

    /// Frobenius norm of (A^dagger - A); block operators are handled
    /// without materializing.
    double hermiticity_deviation() const;

private:
    Operator() = default;
    SpacePtr space_;
    bool dense_form_ = false;
    Eigen::MatrixXcd dense_;
    std::vector<OperatorBlock> blocks_;
    Complement complement_ = Complement::Zero;
};

} // namespace qhist
