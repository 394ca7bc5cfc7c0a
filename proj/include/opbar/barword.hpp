#pragma once

#include "opbar/group.hpp"
#include "opbar/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace opbar {

/// Which one-sided bar construction a word lives in. Diagrams read root side
/// on the left, leaf side on the right; a module label sits at an end:
///   BG    — no modules
///   EG    — right (leaf-side) module
///   EGt   — left (root-side) module ("EG tilde")
///   BGGG  — modules at both ends
enum class WordVariant { BG, EG, EGt, BGGG };

std::string variant_name(WordVariant v);

/// A point of one of the diagrammatic bar constructions of a finite group:
/// weights t_0..t_k summing to 1 interleaved with labels g_1..g_k, plus the
/// module labels the variant calls for. Instances are kept in canonical
/// form: no identity label and no zero weight survives in the interior, and
/// zero end weights are resolved into the adjacent module (or dropped at a
/// module-free end).
class BarWord {
 public:
  BarWord(WordVariant variant, GroupPtr g, std::vector<Rat> weights, std::vector<int> labels,
          int left_module = -1, int right_module = -1);

  /// The length-zero word: single weight 1, identity modules where needed.
  static BarWord trivial(WordVariant variant, GroupPtr g);

  WordVariant variant() const { return variant_; }
  const GroupPtr& group_ptr() const { return g_; }
  const Group& group() const { return *g_; }
  int k() const { return static_cast<int>(labels_.size()); }
  const std::vector<Rat>& weights() const { return weights_; }
  const std::vector<int>& labels() const { return labels_; }
  bool has_left() const;
  bool has_right() const;
  int left_module() const;
  int right_module() const;

  bool operator==(const BarWord& o) const;
  std::string str() const;

 private:
  BarWord() = default;
  void normalize();
  friend BarWord normalize_word(WordVariant, GroupPtr, std::vector<Rat>, std::vector<int>, int,
                                int);
  WordVariant variant_ = WordVariant::BG;
  GroupPtr g_;
  std::vector<Rat> weights_;  // k+1 of them
  std::vector<int> labels_;   // k of them
  int left_ = -1, right_ = -1;
};

/// Canonicalize raw word data (weights must sum to 1). The constructor does
/// the same; this form exists for tests that feed deliberately raw data.
BarWord normalize_word(WordVariant variant, GroupPtr g, std::vector<Rat> weights,
                       std::vector<int> labels, int left_module = -1, int right_module = -1);

/// Total product left * g_1 * ... * g_k * right of a BGGG word; invariant
/// under normalization.
int mu(const BarWord& w);

/// Lift EG -> BGGG placing the inverse of the total product (labels and
/// right module) on the left, so that mu comes out to the identity.
BarWord gamma(const BarWord& zeta);

/// Forget the right module: BGGG -> EGt.
BarWord pr_r(const BarWord& w);
/// Forget the right module: EG -> BG.
BarWord pr_root(const BarWord& w);

/// Adjoin an identity right module: BG -> EG and EGt -> BGGG.
BarWord beta_e(const BarWord& w);

/// Free right action on EG and left action on EGt; left/right module
/// multiplication on BGGG.
BarWord act_right(const BarWord& w, int g);
BarWord act_left(int g, const BarWord& w);

/// The scaled concatenation with left part shrunk to u and right part to
/// 1-u; the junction label is left.right_module * right.left_module. The
/// left word needs a right module (EG or BGGG), the right word a left
/// module (EGt or BGGG). At u=0 the left word collapses into the junction;
/// at u=1 the right word does.
BarWord graft_scale(const BarWord& left, const BarWord& right, const Rat& u);

}  // namespace opbar
