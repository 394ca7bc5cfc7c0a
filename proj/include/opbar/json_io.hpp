#pragma once

#include "opbar/barpoint.hpp"
#include "opbar/barword.hpp"
#include "opbar/equivalence.hpp"
#include "opbar/table_operad.hpp"

#include <json.hpp>

#include <stdexcept>

namespace opbar {

/// Malformed input documents; the CLI reports these as usage errors.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

// Trees are nested objects: a leaf is {"leaf": n}, a vertex is
// {"children": [...]}; a top-level leaf is the empty tree.
Json tree_to_json(const Tree& t);
Tree tree_from_json(const Json& j);

// Raw points carry the tree plus weight and label maps. Edges are keyed by
// their upper endpoint ("v<i>" or "l<label>"), except the root edge, which
// is always keyed "root". Weights are exact "num/den" strings; labels are
// element names resolved against the operad.
Json raw_point_to_json(const Operad& q, const RawBarPoint& raw);
RawBarPoint raw_point_from_json(const Operad& q, const Json& j);

// Canonical points serialize like raw points; the basepoint is
// {"basepoint": true, "leaf_labels": [...]}. Reading normalizes.
Json point_to_json(const Operad& q, const BarPoint& p);
BarPoint point_from_json(const Operad& q, const Json& j);

Json word_to_json(const BarWord& w);
BarWord word_from_json(const GroupPtr& g, const Json& j);

Json equivariant_to_json(const SemidirectOperad& q, const EquivariantPoint& x);
EquivariantPoint equivariant_from_json(const SemidirectOperad& q, const Json& j);

Json group_to_json(const Group& g);
GroupPtr group_from_json(const Json& j);

// Operad tables; the loader runs the exhaustive axiom check and throws a
// SchemaError naming the first violation.
Json operad_to_json(const TableOperad& q);
OperadPtr operad_from_json(const Json& j, int axiom_arity = 4);

}  // namespace opbar
