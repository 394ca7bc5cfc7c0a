#include "opbar/table_operad.hpp"

#include <stdexcept>

namespace opbar {

namespace {
GroupPtr ensure_group(GroupPtr g) {
  if (g) return g;
  static const GroupPtr t = std::make_shared<Group>(Group::trivial());
  return t;
}
}  // namespace

TableOperad::TableOperad(Data d) : d_(std::move(d)) {
  d_.grp = ensure_group(d_.grp);
  if (static_cast<int>(d_.elem_names.size()) != d_.max_arity + 1)
    throw std::invalid_argument("element table must cover arities 0..max_arity");
  for (const auto& names : d_.elem_names) {
    if (names.empty() || names[0] != "*")
      throw std::invalid_argument("every arity needs '*' as element 0");
  }
  if (d_.elem_names[0].size() != 1)
    throw std::invalid_argument("arity 0 must be the lone basepoint");
  if (d_.max_arity < 1 || d_.unit_id < 1 ||
      d_.unit_id >= static_cast<std::int64_t>(d_.elem_names[1].size()))
    throw std::invalid_argument("unit id out of range");
  if (d_.augment_unit.size() != d_.elem_names[1].size())
    throw std::invalid_argument("augmentation table must cover arity 1");
}

std::int64_t TableOperad::size(int n) const {
  require_arity(n);
  return static_cast<std::int64_t>(d_.elem_names[n].size());
}

Elem TableOperad::compose(const Elem& x, int i, const Elem& y) const {
  require_elem(x);
  require_elem(y);
  if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
  int n = x.arity, m = y.arity;
  require_arity(n + m - 1);
  if (x.is_base() || y.is_base()) return base(n + m - 1);
  auto it = d_.compose.find({n, i, m});
  if (it == d_.compose.end())
    throw std::invalid_argument(name() + ": missing compose table (" + std::to_string(n) + "," +
                                std::to_string(i) + "," + std::to_string(m) + ")");
  return Elem{n + m - 1, it->second.at(x.id).at(y.id)};
}

Elem TableOperad::sym(const Permutation& pi, const Elem& x) const {
  require_elem(x);
  if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
  if (x.is_base() || x.arity <= 1) return x;
  auto it = d_.sym.find(x.arity);
  if (it == d_.sym.end()) throw std::invalid_argument(name() + ": missing sym table");
  // Apply pi as a product of adjacent transpositions. Bubble-sorting the
  // one-line form right-multiplies by each swap, so pi equals the reversed
  // word; under a left action that means applying the swaps to x in
  // discovery order.
  std::vector<int> img = pi.images();
  Elem cur = x;
  for (bool moved = true; moved;) {
    moved = false;
    for (int k = 0; k + 1 < static_cast<int>(img.size()); ++k)
      if (img[k] > img[k + 1]) {
        std::swap(img[k], img[k + 1]);
        cur.id = it->second.at(k).at(cur.id);
        moved = true;
      }
  }
  return cur;
}

Elem TableOperad::act(int g, const Elem& x) const {
  require_elem(x);
  if (g < 0 || g >= d_.grp->order()) throw std::invalid_argument("unknown group element");
  if (x.is_base()) return x;
  if (d_.act.empty()) return x;
  auto it = d_.act.find({g, x.arity});
  if (it == d_.act.end()) throw std::invalid_argument(name() + ": missing act table");
  return Elem{x.arity, it->second.at(x.id)};
}

bool TableOperad::augments_to_unit(const Elem& x) const {
  require_elem(x);
  if (x.arity != 1 || x.is_base())
    throw std::invalid_argument("augmentation applies to non-base arity-1 elements");
  return d_.augment_unit.at(x.id);
}

std::string TableOperad::elem_name(const Elem& x) const {
  require_elem(x);
  return d_.elem_names[x.arity][x.id];
}

std::optional<Elem> TableOperad::find_elem(int arity, const std::string& n) const {
  if (arity < 0 || arity > d_.max_arity) return std::nullopt;
  const auto& names = d_.elem_names[arity];
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return Elem{arity, static_cast<std::int64_t>(i)};
  return std::nullopt;
}

TableOperad::Data TableOperad::snapshot(const Operad& q, int up_to_arity) {
  if (!q.enumerable()) throw std::invalid_argument("cannot tabulate a non-enumerable operad");
  Data d;
  d.name = q.name();
  d.max_arity = std::min(up_to_arity, q.max_arity());
  d.grp = q.group();
  d.unit_id = q.unit().id;
  d.strongly_augmented = q.strongly_augmented();
  d.reduced = q.reduced();
  for (int n = 0; n <= d.max_arity; ++n) {
    std::vector<std::string> names;
    for (std::int64_t x = 0; x < q.size(n); ++x) names.push_back(q.elem_name(Elem{n, x}));
    d.elem_names.push_back(std::move(names));
  }
  for (std::int64_t x = 0; x < q.size(1); ++x)
    d.augment_unit.push_back(x == 0 ? false : q.augments_to_unit(Elem{1, x}));
  for (int n = 1; n <= d.max_arity; ++n)
    for (int m = 1; n + m - 1 <= d.max_arity; ++m)
      for (int i = 1; i <= n; ++i) {
        auto& tab = d.compose[{n, i, m}];
        tab.assign(q.size(n), std::vector<std::int64_t>(q.size(m)));
        for (std::int64_t x = 0; x < q.size(n); ++x)
          for (std::int64_t y = 0; y < q.size(m); ++y)
            tab[x][y] = q.compose(Elem{n, x}, i, Elem{m, y}).id;
      }
  for (int n = 2; n <= d.max_arity; ++n) {
    auto& tabs = d.sym[n];
    for (int k = 1; k < n; ++k) {
      auto img = Permutation::identity(n).images();
      std::swap(img[k - 1], img[k]);
      Permutation tk{std::move(img)};
      std::vector<std::int64_t> tab(q.size(n));
      for (std::int64_t x = 0; x < q.size(n); ++x) tab[x] = q.sym(tk, Elem{n, x}).id;
      tabs.push_back(std::move(tab));
    }
  }
  if (q.group()->order() > 1)
    for (int g = 0; g < q.group()->order(); ++g)
      for (int n = 1; n <= d.max_arity; ++n) {
        std::vector<std::int64_t> tab(q.size(n));
        for (std::int64_t x = 0; x < q.size(n); ++x) tab[x] = q.act(g, Elem{n, x}).id;
        d.act[{g, n}] = std::move(tab);
      }
  return d;
}

}  // namespace opbar
