#pragma once

#include "opbar/operad.hpp"
#include "opbar/tree.hpp"

#include <map>
#include <random>
#include <vector>

namespace opbar {

/// A not-necessarily-canonical point of the bar construction: a weighted
/// Q-labeled tree. Labels are indexed by vertex; basepoint labels are
/// permitted and collapse the point under normalization.
struct RawBarPoint {
  Tree tree;
  Weighting weights;
  std::vector<Elem> labels;
};

/// Arity/label mismatches and invalid weightings, one message each.
std::vector<std::string> validate_raw(const Operad& q, const RawBarPoint& raw);

/// A point of B(Q), stored canonically: either the basepoint or a weighted
/// labeled tree with no zero-weight edge, no unit-labeled unary vertex and
/// no basepoint label. Equality of points is structural equality of this
/// form; completeness rests on confluence of the rewriting, which the probe
/// suite enforces rather than assumes.
class BarPoint {
 public:
  BarPoint() = default;  // an inert basepoint over no operad
  static BarPoint basepoint(const Operad& q, std::vector<int> label_set);
  static BarPoint from_parts(const Operad& q, Tree t, Weighting w, std::vector<Elem> labels);

  bool is_basepoint() const { return base_; }
  int arity() const { return static_cast<int>(label_set_.size()); }
  const std::vector<int>& label_set() const { return label_set_; }
  const std::string& operad_name() const { return operad_name_; }

  const Tree& tree() const;
  const Weighting& weights() const;
  const std::vector<Elem>& labels() const;
  Elem label(int v) const { return labels().at(v); }

  std::string str(const Operad& q) const;

 private:
  friend BarPoint normalize(const Operad&, const RawBarPoint&, std::mt19937_64*);
  bool base_ = true;
  std::string operad_name_;
  std::vector<int> label_set_;
  Tree tree_;
  Weighting weights_;
  std::vector<Elem> labels_;
};

/// Rewrites a raw point to canonical form: basepoint collapse for zero
/// leaf/root branches or basepoint labels, composition across zero internal
/// edges, unit-vertex removal, and augmentation at zero end edges, iterated
/// to a fixpoint. With an rng the applicable rewrite is chosen at random
/// each step instead of by the default priority; all orders must agree
/// (checked by the confluence probe).
BarPoint normalize(const Operad& q, const RawBarPoint& raw, std::mt19937_64* rng = nullptr);

/// Structural equality of canonical forms; rejects cross-operad comparison.
bool equals(const BarPoint& p, const BarPoint& q);

/// Branches of (any representative of) the point that carry nonzero weight;
/// empty for the basepoint. On canonical forms every branch qualifies, so
/// this is the stable view of the stored tree.
std::vector<BranchInfo> branch_set(const BarPoint& p);

/// Leaf relabeling along a bijection of label sets (the symmetric action
/// when the sets are {1..n}).
BarPoint relabel_point(const Operad& q, const BarPoint& p, const std::map<int, int>& m);
BarPoint sym_act(const Operad& q, const Permutation& pi, const BarPoint& p);

/// Diagonal action on vertex labels for a G-operad Q.
BarPoint g_act(const Operad& q, int g, const BarPoint& p);

// ---------------------------------------------------------------------------
// Branch markings over the unary monoid Q(1)

/// A branch word: the unary labels along a branch with the in-between edge
/// weights scaled so the branch has total weight one.
struct BranchWord {
  std::vector<Rat> weights;   // m+1 entries, root side first
  std::vector<Elem> labels;   // m unary non-base elements of Q
  bool empty_word() const { return labels.empty(); }
  bool operator==(const BranchWord&) const = default;
};

/// A point presented as its underlying weighted stable Q-labeled tree plus
/// a word over Q(1) for each branch.
struct MarkingView {
  Tree stable;
  Weighting stable_w;
  std::vector<Elem> stable_labels;  // by stable vertex
  std::map<EdgeId, BranchWord> words;  // keyed by stable edge
  std::vector<int> label_set;
  bool base = false;
};

MarkingView to_marking_view(const Operad& q, const BarPoint& p);
BarPoint from_marking_view(const Operad& q, const MarkingView& v);

// ---------------------------------------------------------------------------
// Assembly and the standard form over a semi-direct product

/// Chain datum used to rebuild a raw tree from stable data: absolute edge
/// weights (root side first) interleaved with unary labels.
struct BranchChain {
  std::vector<Rat> weights;
  std::vector<Elem> labels;
};

/// Inverse of the stable decomposition: grows each stable edge back into a
/// chain. Chain weights must sum to path-compatible totals.
RawBarPoint assemble_from_stable(const Operad& q, const Tree& stable,
                                 const std::vector<Elem>& stable_labels,
                                 const std::map<EdgeId, BranchChain>& chains);

/// The standard form of a non-base point over P semidirect G: stable labels
/// have identity decorations, each pushed onto a unary vertex attached
/// above its slot by a zero-weight edge, and no other zero weights or
/// identity-labeled vertices occur.
RawBarPoint standard_representative(const SemidirectOperad& q, const BarPoint& p);

}  // namespace opbar
