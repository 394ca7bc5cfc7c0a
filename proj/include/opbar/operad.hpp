#pragma once

#include "opbar/group.hpp"
#include "opbar/permutation.hpp"
#include "opbar/tree.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace opbar {

/// An element of one arity component of an operad. id 0 is always the
/// basepoint of that component; meanings of other ids are backend-specific.
struct Elem {
  int arity = 0;
  std::int64_t id = 0;

  bool is_base() const { return id == 0; }
  auto operator<=>(const Elem&) const = default;
};

class Operad;
using OperadPtr = std::shared_ptr<const Operad>;

/// Finite pointed operad over a declared arity range 0..max_arity, with a
/// symmetric action, unit, arity-1 augmentation, and an action of a finite
/// group by operad automorphisms. Arity 0 is always the lone basepoint.
///
/// Implementations are immutable and all operations are pure, so specs can
/// be shared freely across threads.
class Operad {
 public:
  virtual ~Operad() = default;

  virtual const std::string& name() const = 0;
  virtual int max_arity() const = 0;

  /// False for backends with unbounded components (the free operad on a
  /// signature with unary generators); such specs are excluded from
  /// exhaustive checks.
  virtual bool enumerable() const { return true; }
  /// Number of elements of arity n including the basepoint.
  virtual std::int64_t size(int n) const = 0;

  virtual Elem unit() const = 0;
  virtual Elem compose(const Elem& x, int i, const Elem& y) const = 0;
  virtual Elem sym(const Permutation& pi, const Elem& x) const = 0;

  virtual const GroupPtr& group() const = 0;
  virtual Elem act(int g, const Elem& x) const = 0;

  /// Arity-1 augmentation to S^0: true when the element maps to the
  /// non-base point. Basepoint input is rejected.
  virtual bool augments_to_unit(const Elem& x) const = 0;
  virtual bool strongly_augmented() const = 0;
  virtual bool reduced() const = 0;

  virtual std::string elem_name(const Elem& x) const = 0;
  virtual std::optional<Elem> find_elem(int arity, const std::string& name) const = 0;

  Elem base(int n) const { return Elem{n, 0}; }

  void require_arity(int n) const;
  void require_elem(const Elem& x) const;
};

// -- Built-in instances ------------------------------------------------------

/// The trivial operad: S^0 in arity 1, basepoints elsewhere.
OperadPtr make_trivial_operad(GroupPtr g = nullptr, int max_arity = 6);

/// Com+: one non-base element c{n} per arity >= 1. Any group acts trivially.
OperadPtr make_com_operad(GroupPtr g = nullptr, int max_arity = 6);

/// Ass+: non-base elements of arity n are the n! orderings of the inputs,
/// with the symmetric groups acting by renaming. Any group acts trivially.
OperadPtr make_ass_operad(GroupPtr g = nullptr, int max_arity = 6);

/// Z/2-operad with two swappable non-base elements in each arity >= 2.
/// Composition adds parities; the generator of Z/2 flips parity exactly in
/// even arities (the unique nontrivial assignment compatible with
/// equivariance).
OperadPtr make_sign_operad(int max_arity = 6);

struct FreeGenerator {
  std::string name;
  int arity = 0;  // >= 1
};

/// Free operad on a finite signature. Elements are canonical trees with
/// vertices labeled by generators; composition is grafting. Not enumerable
/// when the signature has unary generators; the free operad is used where
/// composition, not enumeration, is needed.
OperadPtr make_free_operad(std::vector<FreeGenerator> signature, GroupPtr g = nullptr,
                           int max_arity = 6);

/// Look up a built-in by name: "I", "com", "ass", "sign", "free-demo".
OperadPtr builtin_operad(const std::string& name, GroupPtr g = nullptr);
/// Built-in groups: "trivial", "z2", "z3", "z4", "s3" (and "z<k>" generally).
GroupPtr builtin_group(const std::string& name);

// -- Semi-direct product -----------------------------------------------------

/// P semi-direct G for a reduced G-operad P: arity n is P(n) ^ (G+)^n, i.e.
/// non-base elements are tuples (p; g_1..g_n), composed with the usual
/// twist: the G decoration of the slot being composed acts on the incoming
/// element and multiplies onto its decorations. Strongly augmented.
class SemidirectOperad final : public Operad {
 public:
  SemidirectOperad(OperadPtr p, GroupPtr g);

  const std::string& name() const override { return name_; }
  int max_arity() const override { return p_->max_arity(); }
  bool enumerable() const override { return p_->enumerable(); }
  std::int64_t size(int n) const override;
  Elem unit() const override;
  Elem compose(const Elem& x, int i, const Elem& y) const override;
  Elem sym(const Permutation& pi, const Elem& x) const override;
  const GroupPtr& group() const override { return trivial_outer_; }
  Elem act(int g, const Elem& x) const override;
  bool augments_to_unit(const Elem& x) const override;
  bool strongly_augmented() const override { return true; }
  bool reduced() const override;
  std::string elem_name(const Elem& x) const override;
  std::optional<Elem> find_elem(int arity, const std::string& name) const override;

  const OperadPtr& base_operad() const { return p_; }
  const GroupPtr& twist_group() const { return g_; }

  /// Tuple view of a non-base element.
  Elem p_part(const Elem& x) const;
  std::vector<int> g_coords(const Elem& x) const;
  Elem make_elem(const Elem& p, const std::vector<int>& gs) const;
  /// Arity-1 convenience: the element (unit_P; g).
  Elem unary(int g) const;
  int unary_group_elem(const Elem& x) const;

 private:
  OperadPtr p_;
  GroupPtr g_;
  GroupPtr trivial_outer_;
  std::string name_;
};

std::shared_ptr<const SemidirectOperad> make_semidirect(OperadPtr p, GroupPtr g);

// -- Reduction functors ------------------------------------------------------

/// Right reduction: arity 1 replaced by {*, unit}, higher arities untouched,
/// trivial structure maps through arity 1.
OperadPtr reduce_R(OperadPtr q);

/// Left reduction: quotient of each arity >= 2 by the closure of
/// x o_i m ~ x and m o_1 x ~ x over non-base unary m, computed by
/// union-find; arity 1 becomes {*, unit}.
class LQuotient final : public Operad {
 public:
  explicit LQuotient(OperadPtr q);

  const std::string& name() const override { return name_; }
  int max_arity() const override { return q_->max_arity(); }
  std::int64_t size(int n) const override;
  Elem unit() const override { return Elem{1, 1}; }
  Elem compose(const Elem& x, int i, const Elem& y) const override;
  Elem sym(const Permutation& pi, const Elem& x) const override;
  const GroupPtr& group() const override { return q_->group(); }
  Elem act(int g, const Elem& x) const override;
  bool augments_to_unit(const Elem& x) const override;
  bool strongly_augmented() const override { return true; }
  bool reduced() const override { return true; }
  std::string elem_name(const Elem& x) const override;
  std::optional<Elem> find_elem(int arity, const std::string& name) const override;

  /// The cocone map from the source operad onto classes.
  Elem project(const Elem& x) const;
  /// Chosen class representative back in the source operad.
  Elem representative(const Elem& x) const;
  /// True when re-scanning the generating relations finds no instance
  /// crossing class boundaries.
  bool saturated() const;

 private:
  Elem lift1(const Elem& x) const;  // arity-1 {*,unit} into the source
  OperadPtr q_;
  std::string name_;
  // per arity n >= 2: source id -> class id (1-based, 0 = basepoint)
  std::vector<std::vector<std::int64_t>> cls_;
  std::vector<std::vector<std::int64_t>> reps_;  // class id -> source id
};

std::shared_ptr<const LQuotient> quotient_L(OperadPtr q);

// -- Whole-operad utilities --------------------------------------------------

/// Every axiom violation found by exhaustive checking over arities
/// 0..axiom_arity (capped by the declared range). Empty result = pass.
std::vector<std::string> check_operad_axioms(const Operad& q, int axiom_arity = 4);

/// Elementwise agreement of two enumerable specs up to an arity bound
/// (sizes, unit, composition, symmetric action, group action).
bool operads_agree(const Operad& a, const Operad& b, int up_to_arity);

/// Total composite of a Q-labeled tree whose leaves are labeled {1..n}:
/// the iterated slot composition, renamed along the leaf labeling. The
/// empty tree evaluates to the unit; any basepoint label collapses the
/// result to the basepoint.
Elem evaluate_tree_composition(const Operad& q, const Tree& t, const std::vector<Elem>& labels);

}  // namespace opbar
