#include "opbar/cooperad.hpp"

#include "arena_internal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace opbar {

using internal::Arena;
using internal::arena_export;
using internal::arena_from_raw;
using internal::reachable_nodes;

void validate_request(const std::vector<int>& label_set, const DecompositionRequest& req) {
  std::set<int> sa(req.A.begin(), req.A.end()), sb(req.B.begin(), req.B.end());
  if (sa.empty() || sb.empty()) throw std::invalid_argument("request needs nonempty label sets");
  if (!sa.count(req.a)) throw std::invalid_argument("request: a must belong to A");
  for (int x : sb)
    if (sa.count(x)) throw std::invalid_argument("request: A and B must be disjoint");
  std::set<int> expect = sa;
  expect.erase(req.a);
  expect.insert(sb.begin(), sb.end());
  if (std::set<int>(label_set.begin(), label_set.end()) != expect)
    throw std::invalid_argument("request does not partition the point's label set");
}

RawDecomposition decompose_raw(const Operad& q, const RawBarPoint& raw,
                               const DecompositionRequest& req) {
  auto bad = validate_raw(q, raw);
  if (!bad.empty()) throw std::invalid_argument("invalid raw point: " + bad.front());
  validate_request(raw.tree.labels(), req);

  RawDecomposition out;
  StableView sv = stable_view(raw.tree);
  Weighting sw = stable_weights(raw.tree, sv, raw.weights);
  auto d = degraft_at(sv.stable, req.A, req.a, req.B);
  if (!d) {
    out.base = true;
    return out;
  }
  const BranchInfo& b = sv.branch(d->split_edge);
  Rat total = sw.at(d->split_edge);
  if (is_zero(total)) {
    // the degrafted branch carries no weight; both sides collapse
    out.base = true;
    return out;
  }
  // Weight left for the paths through the split point; equals the unique
  // closing weight of the new leaf a on the A side.
  Rat s_above = Rat(1) - lower_altitude(sv.stable, sw, d->split_edge);
  if (s_above <= Rat(0)) throw std::logic_error("positive branch weight above altitude 1");

  // A factor: the top of the split branch becomes leaf a; the copied chain
  // rescales so paths through a close at exactly 1.
  {
    Arena a = arena_from_raw(raw);
    Rat f = s_above / total;
    for (EdgeId e : b.edges) a.nodes[a.node_of_edge(e)].w *= f;
    int top = a.node_of_edge(b.edges.back());
    a.nodes[top].leaf = true;
    a.nodes[top].leaf_label = req.a;
    a.nodes[top].label = Elem{};
    a.nodes[top].kids.clear();
    out.first = arena_export(a, q);
  }
  // B factor: the chain becomes the new root branch; every weight above the
  // split point rescales proportionally so paths sum to 1.
  {
    Arena a = arena_from_raw(raw);
    a.root = a.node_of_edge(b.edges.front());
    a.nodes[a.root].parent = -1;
    for (int id : reachable_nodes(a)) a.nodes[id].w /= s_above;
    out.second = arena_export(a, q);
  }
  out.base = false;
  return out;
}

std::pair<BarPoint, BarPoint> decompose(const Operad& q, const BarPoint& p,
                                        const DecompositionRequest& req) {
  if (p.operad_name() != q.name())
    throw std::invalid_argument("point is not over this operad");
  std::vector<int> la(req.A.begin(), req.A.end()), lb(req.B.begin(), req.B.end());
  if (p.is_basepoint()) {
    validate_request(p.label_set(), req);
    return {BarPoint::basepoint(q, la), BarPoint::basepoint(q, lb)};
  }
  RawDecomposition rd = decompose_raw(q, RawBarPoint{p.tree(), p.weights(), p.labels()}, req);
  if (rd.base) return {BarPoint::basepoint(q, la), BarPoint::basepoint(q, lb)};
  BarPoint first = normalize(q, rd.first), second = normalize(q, rd.second);
  // smash pair: either factor at the basepoint collapses the whole pair
  if (first.is_basepoint() || second.is_basepoint())
    return {BarPoint::basepoint(q, la), BarPoint::basepoint(q, lb)};
  return {first, second};
}

std::pair<EquivariantPoint, EquivariantPoint> decompose_equivariant(
    const Operad& p_op, const EquivariantPoint& x, const DecompositionRequest& req) {
  std::vector<int> la(req.A.begin(), req.A.end()), lb(req.B.begin(), req.B.end());
  GroupPtr g = x.is_basepoint() ? builtin_group("trivial") : x.zeta().group_ptr();
  if (x.is_basepoint()) {
    validate_request(x.label_set(), req);
    return {EquivariantPoint::basepoint(p_op, g, la), EquivariantPoint::basepoint(p_op, g, lb)};
  }
  auto [pa, pb] = decompose(p_op, x.psi(), req);
  if (pa.is_basepoint() || pb.is_basepoint())
    return {EquivariantPoint::basepoint(p_op, g, la), EquivariantPoint::basepoint(p_op, g, lb)};
  // the word factor rides along diagonally
  return {EquivariantPoint::make(p_op, x.zeta(), pa), EquivariantPoint::make(p_op, x.zeta(), pb)};
}

namespace {
std::vector<int> cat(std::vector<int> xs, std::initializer_list<int> more) {
  for (int m : more) xs.push_back(m);
  return xs;
}
std::vector<int> cat2(std::vector<int> xs, const std::vector<int>& ys) {
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}
}  // namespace

namespace {
// Triples live in a three-fold smash: one basepoint factor absorbs all.
struct Triple {
  BarPoint f1, f2, f3;
  bool base() const {
    return f1.is_basepoint() || f2.is_basepoint() || f3.is_basepoint();
  }
};

bool triples_agree(const Triple& a, const Triple& b) {
  if (a.base() || b.base()) return a.base() == b.base();
  return equals(a.f1, b.f1) && equals(a.f2, b.f2) && equals(a.f3, b.f3);
}
}  // namespace

bool coassoc_nested(const Operad& q, const BarPoint& p, const std::vector<int>& X, int a,
                    const std::vector<int>& Y, int b, const std::vector<int>& Z) {
  // order 1: pull off Y u Z at a, then split that factor at b
  auto [pa, pyz] = decompose(q, p, {cat(X, {a}), a, cat2(Y, Z)});
  auto [py, pz] = decompose(q, pyz, {cat(Y, {b}), b, Z});
  // order 2: pull off Z at b first, then split the rest at a
  auto [pxy, qz] = decompose(q, p, {cat(cat2(X, Y), {b}), b, Z});
  auto [qx, qy] = decompose(q, pxy, {cat(X, {a}), a, cat(Y, {b})});
  return triples_agree({pa, py, pz}, {qx, qy, qz});
}

bool coassoc_parallel(const Operad& q, const BarPoint& p, const std::vector<int>& X, int a,
                      const std::vector<int>& Y, int a2, const std::vector<int>& Z) {
  auto [p1, py] = decompose(q, p, {cat(cat2(X, Z), {a}), a, Y});
  auto [pxa, pz] = decompose(q, p1, {cat(X, {a, a2}), a2, Z});
  auto [p2, qz] = decompose(q, p, {cat(cat2(X, Y), {a2}), a2, Z});
  auto [qxa, qy] = decompose(q, p2, {cat(X, {a2, a}), a, Y});
  return triples_agree({pxa, py, pz}, {qxa, qy, qz});
}

}  // namespace opbar
