#pragma once

#include "opbar/barpoint.hpp"
#include "opbar/equivalence.hpp"

#include <utility>
#include <vector>

namespace opbar {

/// A degrafting request: split a point labeled by (A \ {a}) u B into an
/// A-labeled factor and a B-labeled factor, rejoining at the fresh label a.
struct DecompositionRequest {
  std::vector<int> A;  // contains a
  int a = 0;
  std::vector<int> B;
};

/// Throws unless A and B are nonempty, disjoint, a is in A, and the point's
/// label set is exactly (A \ {a}) u B.
void validate_request(const std::vector<int>& label_set, const DecompositionRequest& req);

struct RawDecomposition {
  bool base = false;
  RawBarPoint first, second;
};

/// Degrafting on an arbitrary representative: when the underlying stable
/// tree splits along the request, the chain at the split branch is copied
/// to both sides (leaf branch of the A factor, root branch of the B factor)
/// and the weights rebalance — the A side gets the unique leaf weight
/// closing its paths to 1, the B side rescales proportionally. A zero-weight
/// split branch, or no split at all, lands on the basepoint.
RawDecomposition decompose_raw(const Operad& q, const RawBarPoint& raw,
                               const DecompositionRequest& req);

std::pair<BarPoint, BarPoint> decompose(const Operad& q, const BarPoint& p,
                                        const DecompositionRequest& req);

/// The induced structure on coinvariant pairs: the word factor is carried
/// diagonally onto both sides.
std::pair<EquivariantPoint, EquivariantPoint> decompose_equivariant(
    const Operad& p_op, const EquivariantPoint& x, const DecompositionRequest& req);

/// Both iterated orders of degrafting along the nested pattern
/// S = (X u {a}) joined at a to ((Y u {b}) joined at b to Z); all three
/// factors must agree.
bool coassoc_nested(const Operad& q, const BarPoint& p, const std::vector<int>& X, int a,
                    const std::vector<int>& Y, int b, const std::vector<int>& Z);

/// Both orders of pulling off the disjoint blocks Y (at a) and Z (at a2)
/// from a point labeled X u Y u Z.
bool coassoc_parallel(const Operad& q, const BarPoint& p, const std::vector<int>& X, int a,
                      const std::vector<int>& Y, int a2, const std::vector<int>& Z);

}  // namespace opbar
