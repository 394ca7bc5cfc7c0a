#pragma once

#include "opbar/barpoint.hpp"
#include "opbar/barword.hpp"
#include "opbar/operad.hpp"

#include <map>
#include <utility>

namespace opbar {

/// Group-valued branch marking of a point over P semidirect G: an EGt word
/// for every non-root branch (its left module is the slot decoration of the
/// stable vertex below) and a BG word for the root branch. Keyed by stable
/// edge.
struct GMarking {
  std::map<EdgeId, BarWord> words;
  bool operator==(const GMarking&) const = default;
};

/// A point of the G-coinvariants of EG x B(P): the basepoint, or a pair
/// (zeta, psi) with the translation freedom used up by making zeta's right
/// module the identity.
class EquivariantPoint {
 public:
  static EquivariantPoint basepoint(const Operad& p_op, GroupPtr g, std::vector<int> label_set);
  /// Canonicalizes: right-translates zeta to identity right module, pushing
  /// the translation onto psi through the diagonal action.
  static EquivariantPoint make(const Operad& p_op, const BarWord& zeta, const BarPoint& psi);

  bool is_basepoint() const { return base_; }
  const BarWord& zeta() const;
  const BarPoint& psi() const;
  const std::vector<int>& label_set() const { return label_set_; }
  int arity() const { return static_cast<int>(label_set_.size()); }

 private:
  bool base_ = true;
  BarWord zeta_ = BarWord::trivial(WordVariant::EG, builtin_group("trivial"));
  BarPoint psi_;
  std::vector<int> label_set_;
};

bool equals(const EquivariantPoint& a, const EquivariantPoint& b);
EquivariantPoint relabel_equivariant(const Operad& p_op, const EquivariantPoint& x,
                                     const std::map<int, int>& m);
EquivariantPoint sym_act_equivariant(const Operad& p_op, const Permutation& pi,
                                     const EquivariantPoint& x);

// ---------------------------------------------------------------------------
// The marking bijection and the equivalence maps

/// Splits a point over P semidirect G into its underlying point over P and
/// the group data of its branches. The basepoint maps to the basepoint with
/// the empty marking.
std::pair<BarPoint, GMarking> marking_bijection_fwd(const SemidirectOperad& q, const BarPoint& p);

/// Pastes branch words back over a point of B(P); inverse of the forward
/// direction on both sides.
BarPoint marking_bijection_bwd(const SemidirectOperad& q, const BarPoint& psi,
                               const GMarking& beta);

/// Ordered product of the branch-word totals along the path from the root
/// vertex up to stable vertex v (rootmost factor first). Vertices are
/// numbered in the stable tree of p.
int g_v(const SemidirectOperad& q, const BarPoint& p, int stable_vertex);

/// The equivalence map: marks the root branch with zeta and every other
/// branch with (the leaf projection of) gamma(zeta), then assembles.
/// Arities 0 and 1 are handled by the arity-1 identification instead.
BarPoint sigma(const SemidirectOperad& q, const EquivariantPoint& x);

/// Retraction of sigma: the root branch word, against the point of B(P)
/// whose labels absorb the group data through g_v.
EquivariantPoint pi(const SemidirectOperad& q, const BarPoint& p);

/// The straight-line homotopy from the identity (s=0) to sigma of pi (s=1):
/// fixed underlying weighted stable tree; vertices passed by s absorb their
/// g_v; branches met by s contract along the graft-and-scale segment toward
/// gamma of the root word.
BarPoint homotopy_h(const SemidirectOperad& q, const Rat& s, const BarPoint& p);

/// Arity-1 identification with BG words (plus the disjoint basepoint).
BarWord arity1_to_word(const SemidirectOperad& q, const BarPoint& p);
BarPoint word_to_arity1(const SemidirectOperad& q, const BarWord& w, int leaf_label = 1);

/// sigma and pi extended across every arity: arities 0 and 1 route through
/// the identification above, so the maps can be compared against the
/// cooperad structure on whole decompositions.
BarPoint sigma_extended(const SemidirectOperad& q, const EquivariantPoint& x);
EquivariantPoint pi_extended(const SemidirectOperad& q, const BarPoint& p);

}  // namespace opbar
