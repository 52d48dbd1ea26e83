#pragma once

#include <vector>

#include "qhist/operator.hpp"
#include "qhist/state_vector.hpp"

namespace qhist {

/// Concatenated space of the factors' subsystems, in order. Subsystem names
/// must not collide.
SpacePtr tensor_space(const std::vector<SpacePtr>& factors);

/// Product state on the concatenated space; amplitudes are products under
/// row-major product-basis indexing.
StateVector tensor_product(const std::vector<StateVector>& factors);

/// Kronecker product on the concatenated space (dense; subject to the dense
/// limit).
Operator tensor_product(const std::vector<Operator>& factors);

/// Convenience: product of per-subsystem kets given as label strings,
/// e.g. product_basis_state(space, {"1","0","0"}).
StateVector product_basis_state(const SpacePtr& space, const std::vector<std::string>& labels);

/// local_op (on a space whose subsystems form a subset of `target`'s)
/// tensored with the identity on the remaining subsystems, permuted to the
/// target's subsystem order. Dense operators yield dense results (dense
/// limit applies); block operators stay block.
Operator embed(const Operator& local_op, const SpacePtr& target);

/// Orthogonal projector onto the span of the given vectors
/// (orthonormalized internally). Throws on dependent or zero input.
Operator projector_from_states(const std::vector<StateVector>& vectors);

} // namespace qhist
