#pragma once

#include "opbar/operad.hpp"

#include <map>
#include <tuple>

namespace opbar {

/// Operad backed by explicit tables, the form operad specs take on disk.
/// Symmetric actions are tabulated on the adjacent transpositions, which
/// generate; arbitrary permutations are applied by decomposition.
class TableOperad final : public Operad {
 public:
  struct Data {
    std::string name = "table";
    int max_arity = 0;
    GroupPtr grp;  // trivial when absent
    // elem_names[n] lists the elements of arity n; index 0 must be "*".
    std::vector<std::vector<std::string>> elem_names;
    std::int64_t unit_id = 1;
    // compose[{n,i,m}][x][y] = id of x o_i y, for n,m >= 1 with n+m-1 in range.
    std::map<std::tuple<int, int, int>, std::vector<std::vector<std::int64_t>>> compose;
    // sym[n][k-1][x] = id of the adjacent transposition (k k+1) applied to x.
    std::map<int, std::vector<std::vector<std::int64_t>>> sym;
    // act[{g,n}][x] = id of g acting on x. Empty means the trivial action.
    std::map<std::pair<int, int>, std::vector<std::int64_t>> act;
    // augment_unit[x] for arity-1 ids: does x augment to the non-base point?
    std::vector<bool> augment_unit;
    bool strongly_augmented = true;
    bool reduced = false;
  };

  explicit TableOperad(Data d);

  /// Tabulates any enumerable spec up to an arity bound; round-trips through
  /// JSON and is the seam where tests inject corrupted entries.
  static Data snapshot(const Operad& q, int up_to_arity);

  const std::string& name() const override { return d_.name; }
  int max_arity() const override { return d_.max_arity; }
  std::int64_t size(int n) const override;
  Elem unit() const override { return Elem{1, d_.unit_id}; }
  Elem compose(const Elem& x, int i, const Elem& y) const override;
  Elem sym(const Permutation& pi, const Elem& x) const override;
  const GroupPtr& group() const override { return d_.grp; }
  Elem act(int g, const Elem& x) const override;
  bool augments_to_unit(const Elem& x) const override;
  bool strongly_augmented() const override { return d_.strongly_augmented; }
  bool reduced() const override { return d_.reduced; }
  std::string elem_name(const Elem& x) const override;
  std::optional<Elem> find_elem(int arity, const std::string& n) const override;

  const Data& data() const { return d_; }

 private:
  Data d_;
};

}  // namespace opbar
