#include "opbar/operad.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opbar {

void Operad::require_arity(int n) const {
  if (n < 0 || n > max_arity())
    throw std::invalid_argument(name() + ": arity " + std::to_string(n) +
                                " outside declared range 0.." + std::to_string(max_arity()));
}

void Operad::require_elem(const Elem& x) const {
  require_arity(x.arity);
  if (x.id < 0 || (enumerable() && x.id >= size(x.arity)))
    throw std::invalid_argument(name() + ": no element with id " + std::to_string(x.id) +
                                " at arity " + std::to_string(x.arity));
}

namespace {

GroupPtr trivial_group_ptr() {
  static const GroupPtr g = std::make_shared<Group>(Group::trivial());
  return g;
}

/// Common scaffolding for the built-in table-free instances: a declared
/// range, a group acting (trivially unless overridden), strong augmentation.
class BasicOperad : public Operad {
 public:
  BasicOperad(std::string name, int max_arity, GroupPtr g)
      : name_(std::move(name)), max_arity_(max_arity),
        group_(g ? std::move(g) : trivial_group_ptr()) {}

  const std::string& name() const override { return name_; }
  int max_arity() const override { return max_arity_; }
  const GroupPtr& group() const override { return group_; }
  Elem act(int g, const Elem& x) const override {
    if (g < 0 || g >= group_->order()) throw std::invalid_argument("unknown group element");
    require_elem(x);
    return x;
  }
  bool augments_to_unit(const Elem& x) const override {
    require_elem(x);
    if (x.arity != 1 || x.is_base())
      throw std::invalid_argument("augmentation applies to non-base arity-1 elements");
    return true;
  }
  bool strongly_augmented() const override { return true; }

  std::optional<Elem> find_elem(int arity, const std::string& n) const override {
    if (arity < 0 || arity > max_arity_) return std::nullopt;
    for (std::int64_t id = 0; id < size(arity); ++id)
      if (elem_name(Elem{arity, id}) == n) return Elem{arity, id};
    return std::nullopt;
  }

 protected:
  std::string name_;
  int max_arity_;
  GroupPtr group_;
};

// -- I -----------------------------------------------------------------------

class TrivialOperad final : public BasicOperad {
 public:
  TrivialOperad(GroupPtr g, int max_arity) : BasicOperad("I", max_arity, std::move(g)) {}
  std::int64_t size(int n) const override {
    require_arity(n);
    return n == 1 ? 2 : 1;
  }
  Elem unit() const override { return Elem{1, 1}; }
  Elem compose(const Elem& x, int i, const Elem& y) const override {
    require_elem(x);
    require_elem(y);
    if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
    require_arity(x.arity + y.arity - 1);
    if (x.is_base() || y.is_base()) return base(x.arity + y.arity - 1);
    return unit();  // both non-base forces arity 1 on 1
  }
  Elem sym(const Permutation& pi, const Elem& x) const override {
    require_elem(x);
    if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
    return x;
  }
  bool reduced() const override { return true; }
  std::string elem_name(const Elem& x) const override {
    require_elem(x);
    return x.is_base() ? "*" : "1";
  }
};

// -- Com+ --------------------------------------------------------------------

class ComOperad final : public BasicOperad {
 public:
  ComOperad(GroupPtr g, int max_arity) : BasicOperad("com", max_arity, std::move(g)) {}
  std::int64_t size(int n) const override {
    require_arity(n);
    return n == 0 ? 1 : 2;
  }
  Elem unit() const override { return Elem{1, 1}; }
  Elem compose(const Elem& x, int i, const Elem& y) const override {
    require_elem(x);
    require_elem(y);
    if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
    int n = x.arity + y.arity - 1;
    require_arity(n);
    if (x.is_base() || y.is_base()) return base(n);
    return Elem{n, 1};
  }
  Elem sym(const Permutation& pi, const Elem& x) const override {
    require_elem(x);
    if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
    return x;
  }
  bool reduced() const override { return true; }  // com(1) = {*, c1}
  std::string elem_name(const Elem& x) const override {
    require_elem(x);
    return x.is_base() ? "*" : "c" + std::to_string(x.arity);
  }
};

// -- Ass+ --------------------------------------------------------------------

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Lehmer rank/unrank over sequences listing {1..n}.
std::vector<int> unrank_perm(std::int64_t r, int n) {
  std::vector<int> pool(n), out;
  std::iota(pool.begin(), pool.end(), 1);
  for (int k = n; k >= 1; --k) {
    std::int64_t f = factorial(k - 1);
    int idx = static_cast<int>(r / f);
    r %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  return out;
}

std::int64_t rank_perm(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size());
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::int64_t r = 0;
  for (int k = 0; k < n; ++k) {
    auto it = std::find(pool.begin(), pool.end(), seq[k]);
    r += (it - pool.begin()) * factorial(n - k - 1);
    pool.erase(it);
  }
  return r;
}

class AssOperad final : public BasicOperad {
 public:
  AssOperad(GroupPtr g, int max_arity) : BasicOperad("ass", max_arity, std::move(g)) {}
  std::int64_t size(int n) const override {
    require_arity(n);
    return n == 0 ? 1 : factorial(n) + 1;
  }
  Elem unit() const override { return Elem{1, 1}; }

  std::vector<int> seq(const Elem& x) const { return unrank_perm(x.id - 1, x.arity); }
  Elem from_seq(const std::vector<int>& s) const {
    return Elem{static_cast<int>(s.size()), rank_perm(s) + 1};
  }

  Elem compose(const Elem& x, int i, const Elem& y) const override {
    require_elem(x);
    require_elem(y);
    if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
    int n = x.arity, m = y.arity;
    require_arity(n + m - 1);
    if (x.is_base() || y.is_base()) return base(n + m - 1);
    std::vector<int> sx = seq(x), sy = seq(y), out;
    out.reserve(n + m - 1);
    for (int v : sx) {
      if (v == i)
        for (int w : sy) out.push_back(i + w - 1);
      else
        out.push_back(v < i ? v : v + m - 1);
    }
    return from_seq(out);
  }
  Elem sym(const Permutation& pi, const Elem& x) const override {
    require_elem(x);
    if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
    if (x.is_base()) return x;
    std::vector<int> s = seq(x);
    for (int& v : s) v = pi(v);
    return from_seq(s);
  }
  bool reduced() const override { return true; }  // ass(1) = {*, a1}
  std::string elem_name(const Elem& x) const override {
    require_elem(x);
    if (x.is_base()) return "*";
    std::string out = "a";
    for (int v : seq(x)) out += std::to_string(v);
    return out;
  }
};

// -- Sign operad -------------------------------------------------------------

class SignOperad final : public BasicOperad {
 public:
  explicit SignOperad(int max_arity)
      : BasicOperad("sign", max_arity, std::make_shared<Group>(Group::cyclic(2))) {}
  std::int64_t size(int n) const override {
    require_arity(n);
    if (n == 0) return 1;
    return n == 1 ? 2 : 3;
  }
  Elem unit() const override { return Elem{1, 1}; }
  Elem compose(const Elem& x, int i, const Elem& y) const override {
    require_elem(x);
    require_elem(y);
    if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
    int n = x.arity + y.arity - 1;
    require_arity(n);
    if (x.is_base() || y.is_base()) return base(n);
    int parity = (parity_of(x) + parity_of(y)) % 2;
    return n == 1 ? unit() : Elem{n, 1 + parity};
  }
  Elem sym(const Permutation& pi, const Elem& x) const override {
    require_elem(x);
    if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
    return x;
  }
  Elem act(int g, const Elem& x) const override {
    if (g < 0 || g > 1) throw std::invalid_argument("unknown group element");
    require_elem(x);
    if (g == 0 || x.is_base() || x.arity < 2 || x.arity % 2 == 1) return x;
    return Elem{x.arity, x.id == 1 ? 2 : 1};
  }
  bool reduced() const override { return true; }  // sign(1) = {*, u1}
  std::string elem_name(const Elem& x) const override {
    require_elem(x);
    if (x.is_base()) return "*";
    if (x.arity == 1) return "u1";
    return (x.id == 1 ? "p" : "m") + std::to_string(x.arity);
  }

 private:
  int parity_of(const Elem& x) const { return x.arity >= 2 && x.id == 2 ? 1 : 0; }
};

// -- Free operad -------------------------------------------------------------

struct FNode {
  bool is_leaf = false;
  int label = 0;  // leaf label
  int gen = -1;   // generator index
  std::vector<FNode> kids;
};

int fnode_min_leaf(const FNode& f) {
  if (f.is_leaf) return f.label;
  int m = 0;
  for (const auto& k : f.kids) m = m == 0 ? fnode_min_leaf(k) : std::min(m, fnode_min_leaf(k));
  return m;
}

void fnode_canon(FNode& f) {
  if (f.is_leaf) return;
  for (auto& k : f.kids) fnode_canon(k);
  std::sort(f.kids.begin(), f.kids.end(),
            [](const FNode& a, const FNode& b) { return fnode_min_leaf(a) < fnode_min_leaf(b); });
}

int fnode_leaves(const FNode& f) {
  if (f.is_leaf) return 1;
  int n = 0;
  for (const auto& k : f.kids) n += fnode_leaves(k);
  return n;
}

std::string fnode_key(const FNode& f) {
  if (f.is_leaf) return std::to_string(f.label);
  std::string s = "g" + std::to_string(f.gen) + "(";
  for (std::size_t i = 0; i < f.kids.size(); ++i) {
    if (i) s += ',';
    s += fnode_key(f.kids[i]);
  }
  return s + ")";
}

class FreeOperad final : public BasicOperad {
 public:
  FreeOperad(std::vector<FreeGenerator> sig, GroupPtr g, int max_arity)
      : BasicOperad("free", max_arity, std::move(g)), sig_(std::move(sig)) {
    for (const auto& gen : sig_)
      if (gen.arity < 1 || gen.arity > max_arity)
        throw std::invalid_argument("free operad generator arity out of range");
    intern(FNode{true, 1, -1, {}});  // id 1: the unit (empty tree on one leaf)
  }

  bool enumerable() const override { return false; }
  std::int64_t size(int) const override {
    throw std::logic_error("free operad components are not enumerable");
  }
  Elem unit() const override { return Elem{1, 1}; }

  Elem generator(const std::string& gname) const {
    for (std::size_t gi = 0; gi < sig_.size(); ++gi)
      if (sig_[gi].name == gname) {
        FNode f{false, 0, static_cast<int>(gi), {}};
        for (int l = 1; l <= sig_[gi].arity; ++l) f.kids.push_back(FNode{true, l, -1, {}});
        return Elem{sig_[gi].arity, intern(f)};
      }
    throw std::invalid_argument("unknown generator " + gname);
  }

  Elem compose(const Elem& x, int i, const Elem& y) const override {
    if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
    int n = x.arity, m = y.arity;
    require_arity(n + m - 1);
    if (x.is_base() || y.is_base()) return base(n + m - 1);
    FNode fx = body(x), fy = body(y);
    // Leaves of fy move to the block at i, leaves of fx above i shift up.
    std::function<void(FNode&, int, int)> shift = [&](FNode& f, int from, int by) {
      if (f.is_leaf) {
        if (f.label >= from) f.label += by;
        return;
      }
      for (auto& k : f.kids) shift(k, from, by);
    };
    shift(fy, 1, i - 1);
    std::function<FNode(const FNode&)> splice = [&](const FNode& f) -> FNode {
      if (f.is_leaf) {
        if (f.label == i) return fy;
        return FNode{true, f.label < i ? f.label : f.label + m - 1, -1, {}};
      }
      FNode out{false, 0, f.gen, {}};
      for (const auto& k : f.kids) out.kids.push_back(splice(k));
      return out;
    };
    FNode out = splice(fx);
    fnode_canon(out);
    return Elem{n + m - 1, intern(out)};
  }

  Elem sym(const Permutation& pi, const Elem& x) const override {
    if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
    if (x.is_base()) return x;
    FNode f = body(x);
    std::function<void(FNode&)> ren = [&](FNode& n) {
      if (n.is_leaf) {
        n.label = pi(n.label);
        return;
      }
      for (auto& k : n.kids) ren(k);
    };
    ren(f);
    fnode_canon(f);
    return Elem{x.arity, intern(f)};
  }

  std::string elem_name(const Elem& x) const override {
    if (x.is_base()) return "*";
    FNode f = body(x);
    std::function<std::string(const FNode&)> render = [&](const FNode& n) -> std::string {
      if (n.is_leaf) return std::to_string(n.label);
      std::string s = sig_[n.gen].name + "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) s += ',';
        s += render(n.kids[i]);
      }
      return s + ")";
    };
    return render(f);
  }

  std::optional<Elem> find_elem(int arity, const std::string& n) const override {
    if (n == "*") return base(arity);
    if (arity == 1 && n == "1") return unit();
    std::size_t pos = 0;
    auto f = parse_fnode(n, pos);
    if (!f || pos != n.size()) return std::nullopt;
    if (fnode_leaves(*f) != arity) return std::nullopt;
    FNode body = *f;
    fnode_canon(body);
    return Elem{arity, intern(body)};
  }

  bool reduced() const override {
    for (const auto& g : sig_)
      if (g.arity == 1) return false;
    return true;
  }

 private:
  // expr := INT | genname "(" expr ("," expr)* ")"
  std::optional<FNode> parse_fnode(const std::string& s, std::size_t& pos) const {
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      int label = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        label = label * 10 + (s[pos++] - '0');
      return FNode{true, label, -1, {}};
    }
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != '(' && s[pos] != ',' && s[pos] != ')') ++pos;
    std::string gname = s.substr(start, pos - start);
    int gi = -1;
    for (std::size_t k = 0; k < sig_.size(); ++k)
      if (sig_[k].name == gname) gi = static_cast<int>(k);
    if (gi < 0 || pos >= s.size() || s[pos] != '(') return std::nullopt;
    ++pos;
    FNode out{false, 0, gi, {}};
    while (true) {
      auto kid = parse_fnode(s, pos);
      if (!kid) return std::nullopt;
      out.kids.push_back(std::move(*kid));
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ')') {
        ++pos;
        break;
      }
      return std::nullopt;
    }
    if (static_cast<int>(out.kids.size()) != sig_[gi].arity) return std::nullopt;
    return out;
  }

  std::int64_t intern(const FNode& f) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::string key = fnode_key(f);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    std::int64_t id = static_cast<std::int64_t>(bodies_.size()) + 1;
    bodies_.push_back(f);
    ids_.emplace(std::move(key), id);
    return id;
  }
  FNode body(const Elem& x) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (x.id < 1 || x.id > static_cast<std::int64_t>(bodies_.size()))
      throw std::invalid_argument("unknown free operad element");
    const FNode& f = bodies_[x.id - 1];
    if (fnode_leaves(f) != x.arity) throw std::invalid_argument("free element arity mismatch");
    return f;
  }

  std::vector<FreeGenerator> sig_;
  mutable std::mutex mu_;
  mutable std::vector<FNode> bodies_;
  mutable std::map<std::string, std::int64_t> ids_;
};

}  // namespace

OperadPtr make_trivial_operad(GroupPtr g, int max_arity) {
  return std::make_shared<TrivialOperad>(std::move(g), max_arity);
}
OperadPtr make_com_operad(GroupPtr g, int max_arity) {
  return std::make_shared<ComOperad>(std::move(g), max_arity);
}
OperadPtr make_ass_operad(GroupPtr g, int max_arity) {
  return std::make_shared<AssOperad>(std::move(g), max_arity);
}
OperadPtr make_sign_operad(int max_arity) { return std::make_shared<SignOperad>(max_arity); }
OperadPtr make_free_operad(std::vector<FreeGenerator> signature, GroupPtr g, int max_arity) {
  return std::make_shared<FreeOperad>(std::move(signature), std::move(g), max_arity);
}

OperadPtr builtin_operad(const std::string& name, GroupPtr g) {
  if (name == "I") return make_trivial_operad(std::move(g));
  if (name == "com") return make_com_operad(std::move(g));
  if (name == "ass") return make_ass_operad(std::move(g));
  if (name == "sign") {
    auto s = make_sign_operad();
    if (g && !(*g == *s->group()))
      throw std::invalid_argument("the sign operad acts through z2 only");
    return s;
  }
  if (name == "free-demo")
    return make_free_operad({{"b", 2}, {"u", 1}}, std::move(g));
  throw std::invalid_argument("unknown built-in operad: " + name);
}

GroupPtr builtin_group(const std::string& name) {
  if (name == "trivial") return trivial_group_ptr();
  if (name == "s3") return std::make_shared<Group>(Group::symmetric3());
  if (name.size() >= 2 && name[0] == 'z') {
    int k = std::stoi(name.substr(1));
    return std::make_shared<Group>(Group::cyclic(k));
  }
  throw std::invalid_argument("unknown built-in group: " + name);
}

// -- Semi-direct product -----------------------------------------------------

SemidirectOperad::SemidirectOperad(OperadPtr p, GroupPtr g)
    : p_(std::move(p)), g_(std::move(g)), trivial_outer_(trivial_group_ptr()) {
  if (!p_ || !g_) throw std::invalid_argument("null operad or group");
  if (!p_->reduced())
    throw std::invalid_argument("semidirect: " + p_->name() + " is not reduced");
  if (!(*p_->group() == *g_))
    throw std::invalid_argument("semidirect: " + p_->name() + " is not a " + g_->name() +
                                "-operad (declared action group differs)");
  name_ = p_->name() + "|x" + g_->name();
}

std::int64_t SemidirectOperad::size(int n) const {
  require_arity(n);
  if (n == 0) return 1;
  std::int64_t gn = 1;
  for (int k = 0; k < n; ++k) gn *= g_->order();
  return 1 + (p_->size(n) - 1) * gn;
}

Elem SemidirectOperad::unit() const {
  return make_elem(p_->unit(), {g_->identity()});
}

Elem SemidirectOperad::p_part(const Elem& x) const {
  if (x.is_base() || x.arity == 0) throw std::invalid_argument("basepoint has no tuple parts");
  std::int64_t gn = 1;
  for (int k = 0; k < x.arity; ++k) gn *= g_->order();
  return Elem{x.arity, 1 + (x.id - 1) / gn};
}

std::vector<int> SemidirectOperad::g_coords(const Elem& x) const {
  if (x.is_base() || x.arity == 0) throw std::invalid_argument("basepoint has no tuple parts");
  std::vector<int> gs(x.arity);
  std::int64_t rest = (x.id - 1);
  for (int k = 0; k < x.arity; ++k) {
    gs[k] = static_cast<int>(rest % g_->order());
    rest /= g_->order();
  }
  return gs;
}

Elem SemidirectOperad::make_elem(const Elem& p, const std::vector<int>& gs) const {
  p_->require_elem(p);
  if (p.is_base()) return base(p.arity);
  if (static_cast<int>(gs.size()) != p.arity)
    throw std::invalid_argument("decoration count must match arity");
  std::int64_t id = 0;
  for (int k = p.arity - 1; k >= 0; --k) {
    if (gs[k] < 0 || gs[k] >= g_->order()) throw std::invalid_argument("unknown group element");
    id = id * g_->order() + gs[k];
  }
  std::int64_t gn = 1;
  for (int k = 0; k < p.arity; ++k) gn *= g_->order();
  return Elem{p.arity, 1 + (p.id - 1) * gn + id};
}

Elem SemidirectOperad::unary(int g) const { return make_elem(p_->unit(), {g}); }

int SemidirectOperad::unary_group_elem(const Elem& x) const {
  if (x.arity != 1 || x.is_base()) throw std::invalid_argument("not a non-base unary element");
  return g_coords(x)[0];
}

Elem SemidirectOperad::compose(const Elem& x, int i, const Elem& y) const {
  require_elem(x);
  require_elem(y);
  if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
  int n = x.arity, m = y.arity;
  require_arity(n + m - 1);
  if (x.is_base() || y.is_base()) return base(n + m - 1);
  Elem a = p_part(x), b = p_part(y);
  std::vector<int> gs = g_coords(x), hs = g_coords(y);
  Elem ab = p_->compose(a, i, p_->act(gs[i - 1], b));
  if (ab.is_base()) return base(n + m - 1);
  std::vector<int> out;
  out.reserve(n + m - 1);
  for (int k = 0; k < i - 1; ++k) out.push_back(gs[k]);
  for (int k = 0; k < m; ++k) out.push_back(g_->mult(gs[i - 1], hs[k]));
  for (int k = i; k < n; ++k) out.push_back(gs[k]);
  return make_elem(ab, out);
}

Elem SemidirectOperad::sym(const Permutation& pi, const Elem& x) const {
  require_elem(x);
  if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
  if (x.is_base()) return x;
  Elem a = p_->sym(pi, p_part(x));
  std::vector<int> gs = g_coords(x), out(x.arity);
  for (int k = 1; k <= x.arity; ++k) out[pi(k) - 1] = gs[k - 1];
  return make_elem(a, out);
}

Elem SemidirectOperad::act(int g, const Elem& x) const {
  if (g != 0) throw std::invalid_argument("no outer action is declared on a semidirect product");
  require_elem(x);
  return x;
}

bool SemidirectOperad::augments_to_unit(const Elem& x) const {
  require_elem(x);
  if (x.arity != 1 || x.is_base())
    throw std::invalid_argument("augmentation applies to non-base arity-1 elements");
  return true;  // G maps to the non-base point of S^0
}

bool SemidirectOperad::reduced() const { return g_->order() == 1 && p_->reduced(); }

std::string SemidirectOperad::elem_name(const Elem& x) const {
  require_elem(x);
  if (x.is_base()) return "*";
  std::string s = "(" + p_->elem_name(p_part(x)) + ";";
  std::vector<int> gs = g_coords(x);
  for (std::size_t k = 0; k < gs.size(); ++k) {
    if (k) s += ',';
    s += g_->elem_name(gs[k]);
  }
  return s + ")";
}

std::optional<Elem> SemidirectOperad::find_elem(int arity, const std::string& n) const {
  if (arity < 0 || arity > max_arity()) return std::nullopt;
  if (n == "*") return base(arity);
  if (n.size() < 4 || n.front() != '(' || n.back() != ')') return std::nullopt;
  auto semi = n.find(';');
  if (semi == std::string::npos) return std::nullopt;
  auto p = p_->find_elem(arity, n.substr(1, semi - 1));
  if (!p || p->is_base()) return std::nullopt;
  std::vector<int> gs;
  std::stringstream ss(n.substr(semi + 1, n.size() - semi - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto g = g_->find(tok);
    if (!g) return std::nullopt;
    gs.push_back(*g);
  }
  if (static_cast<int>(gs.size()) != arity) return std::nullopt;
  return make_elem(*p, gs);
}

std::shared_ptr<const SemidirectOperad> make_semidirect(OperadPtr p, GroupPtr g) {
  return std::make_shared<SemidirectOperad>(std::move(p), std::move(g));
}

// -- reduce_R ----------------------------------------------------------------

namespace {

class RWrap final : public Operad {
 public:
  explicit RWrap(OperadPtr q) : q_(std::move(q)), name_("R(" + q_->name() + ")") {}

  const std::string& name() const override { return name_; }
  int max_arity() const override { return q_->max_arity(); }
  bool enumerable() const override { return q_->enumerable(); }
  std::int64_t size(int n) const override {
    require_arity(n);
    return n == 1 ? 2 : q_->size(n);
  }
  Elem unit() const override { return Elem{1, 1}; }
  Elem compose(const Elem& x, int i, const Elem& y) const override {
    require_elem(x);
    require_elem(y);
    if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
    int n = x.arity + y.arity - 1;
    require_arity(n);
    if (x.is_base() || y.is_base()) return base(n);
    Elem r = q_->compose(lift(x), i, lift(y));
    return lower(r);
  }
  Elem sym(const Permutation& pi, const Elem& x) const override {
    require_elem(x);
    if (x.arity == 1) {
      if (pi.degree() != 1) throw std::invalid_argument("permutation degree mismatch");
      return x;
    }
    return q_->sym(pi, x);
  }
  const GroupPtr& group() const override { return q_->group(); }
  Elem act(int g, const Elem& x) const override {
    require_elem(x);
    if (x.arity == 1) {
      if (g < 0 || g >= q_->group()->order()) throw std::invalid_argument("unknown group element");
      return x;
    }
    return q_->act(g, x);
  }
  bool augments_to_unit(const Elem& x) const override {
    require_elem(x);
    if (x.arity != 1 || x.is_base())
      throw std::invalid_argument("augmentation applies to non-base arity-1 elements");
    return true;
  }
  bool strongly_augmented() const override { return true; }
  bool reduced() const override { return true; }
  std::string elem_name(const Elem& x) const override {
    require_elem(x);
    if (x.arity == 1) return x.is_base() ? "*" : "1";
    return q_->elem_name(x);
  }
  std::optional<Elem> find_elem(int arity, const std::string& n) const override {
    if (arity == 1) {
      if (n == "*") return base(1);
      if (n == "1") return unit();
      return std::nullopt;
    }
    return q_->find_elem(arity, n);
  }

 private:
  Elem lift(const Elem& x) const { return x.arity == 1 && x.id == 1 ? q_->unit() : x; }
  Elem lower(const Elem& r) const {
    if (r.arity != 1) return r;
    return r.is_base() ? base(1) : Elem{1, 1};
  }
  OperadPtr q_;
  std::string name_;
};

}  // namespace

OperadPtr reduce_R(OperadPtr q) { return std::make_shared<RWrap>(std::move(q)); }

// -- quotient_L --------------------------------------------------------------

namespace {
struct Dsu {
  std::vector<std::int64_t> up;
  explicit Dsu(std::int64_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  std::int64_t find(std::int64_t a) {
    while (up[a] != a) a = up[a] = up[up[a]];
    return a;
  }
  void join(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) up[std::max(a, b)] = std::min(a, b);
  }
};
}  // namespace

LQuotient::LQuotient(OperadPtr q) : q_(std::move(q)), name_("L(" + q_->name() + ")") {
  if (!q_->enumerable())
    throw std::invalid_argument("quotient_L requires an enumerable operad");
  if (!q_->strongly_augmented())
    throw std::invalid_argument("quotient_L requires a strongly augmented operad");
  cls_.resize(max_arity() + 1);
  reps_.resize(max_arity() + 1);
  for (int n = 2; n <= max_arity(); ++n) {
    Dsu dsu(q_->size(n));
    for (std::int64_t m = 1; m < q_->size(1); ++m) {
      Elem me{1, m};
      for (std::int64_t x = 1; x < q_->size(n); ++x) {
        Elem xe{n, x};
        for (int i = 1; i <= n; ++i) dsu.join(x, q_->compose(xe, i, me).id);
        dsu.join(x, q_->compose(me, 1, xe).id);
      }
    }
    auto& cls = cls_[n];
    auto& reps = reps_[n];
    cls.assign(q_->size(n), -1);
    cls[0] = 0;
    reps.push_back(0);
    for (std::int64_t x = 1; x < q_->size(n); ++x) {
      std::int64_t r = dsu.find(x);
      if (dsu.find(0) == r) {  // collapsed onto the basepoint
        cls[x] = 0;
        continue;
      }
      if (cls[r] < 0) {
        cls[r] = static_cast<std::int64_t>(reps.size());
        reps.push_back(r);
      }
      cls[x] = cls[r];
    }
  }
}

std::int64_t LQuotient::size(int n) const {
  require_arity(n);
  if (n == 0) return 1;
  if (n == 1) return 2;
  return static_cast<std::int64_t>(reps_[n].size());
}

Elem LQuotient::project(const Elem& x) const {
  q_->require_elem(x);
  if (x.arity == 0) return base(0);
  if (x.arity == 1) {
    if (x.is_base()) return base(1);
    return unit();  // strong augmentation sends all non-base unaries to the unit's class
  }
  return Elem{x.arity, cls_[x.arity][x.id]};
}

Elem LQuotient::representative(const Elem& x) const {
  require_elem(x);
  if (x.arity <= 1) return lift1(x);
  return Elem{x.arity, reps_[x.arity][x.id]};
}

Elem LQuotient::lift1(const Elem& x) const {
  if (x.arity == 1) return x.is_base() ? q_->base(1) : q_->unit();
  return x;
}

Elem LQuotient::compose(const Elem& x, int i, const Elem& y) const {
  require_elem(x);
  require_elem(y);
  if (i < 1 || i > x.arity) throw std::invalid_argument("slot out of range");
  require_arity(x.arity + y.arity - 1);
  if (x.is_base() || y.is_base()) return base(x.arity + y.arity - 1);
  return project(q_->compose(representative(x), i, representative(y)));
}

Elem LQuotient::sym(const Permutation& pi, const Elem& x) const {
  require_elem(x);
  if (pi.degree() != x.arity) throw std::invalid_argument("permutation degree mismatch");
  if (x.arity <= 1) return x;
  return project(q_->sym(pi, representative(x)));
}

Elem LQuotient::act(int g, const Elem& x) const {
  require_elem(x);
  if (x.arity <= 1) {
    if (g < 0 || g >= group()->order()) throw std::invalid_argument("unknown group element");
    return x;
  }
  return project(q_->act(g, representative(x)));
}

bool LQuotient::augments_to_unit(const Elem& x) const {
  require_elem(x);
  if (x.arity != 1 || x.is_base())
    throw std::invalid_argument("augmentation applies to non-base arity-1 elements");
  return true;
}

std::string LQuotient::elem_name(const Elem& x) const {
  require_elem(x);
  if (x.is_base()) return "*";
  if (x.arity == 1) return "1";
  return "[" + q_->elem_name(representative(x)) + "]";
}

std::optional<Elem> LQuotient::find_elem(int arity, const std::string& n) const {
  if (arity < 0 || arity > max_arity()) return std::nullopt;
  if (n == "*") return base(arity);
  if (arity == 1) return n == "1" ? std::optional<Elem>(unit()) : std::nullopt;
  if (n.size() >= 2 && n.front() == '[' && n.back() == ']') {
    auto e = q_->find_elem(arity, n.substr(1, n.size() - 2));
    if (e) return project(*e);
  }
  return std::nullopt;
}

bool LQuotient::saturated() const {
  // Class composition must not depend on the member chosen; verified against
  // the stored representative for every member and both composition sides.
  for (int n = 2; n <= max_arity(); ++n) {
    for (std::int64_t x = 1; x < q_->size(n); ++x) {
      Elem xe{n, x};
      Elem xr = representative(project(xe));
      if (project(xe).is_base()) continue;
      for (int m = 1; m <= max_arity(); ++m) {
        if (n + m - 1 > max_arity()) continue;
        for (std::int64_t yc = 1; yc < size(m); ++yc) {
          Elem yr = representative(Elem{m, yc});
          for (int i = 1; i <= n; ++i)
            if (project(q_->compose(xe, i, yr)) != project(q_->compose(xr, i, yr)))
              return false;
          if (m >= 2 && m + n - 1 <= max_arity())
            for (int i = 1; i <= m; ++i)
              if (project(q_->compose(yr, i, xe)) != project(q_->compose(yr, i, xr)))
                return false;
        }
      }
      for (int g = 0; g < q_->group()->order(); ++g)
        if (project(q_->act(g, xe)) != project(q_->act(g, xr))) return false;
    }
  }
  return true;
}

std::shared_ptr<const LQuotient> quotient_L(OperadPtr q) {
  return std::make_shared<LQuotient>(std::move(q));
}

// -- Axiom checking ----------------------------------------------------------

namespace {
constexpr std::size_t kMaxReports = 200;

void report(std::vector<std::string>& bad, std::string msg) {
  if (bad.size() < kMaxReports) bad.push_back(std::move(msg));
}

std::vector<Permutation> perm_sample(int n, bool full) {
  if (full) return Permutation::all(n);
  std::vector<Permutation> out{Permutation::identity(n)};
  for (int k = 1; k < n; ++k) {  // adjacent transpositions generate
    auto img = Permutation::identity(n).images();
    std::swap(img[k - 1], img[k]);
    out.push_back(Permutation(std::move(img)));
  }
  return out;
}
}  // namespace

std::vector<std::string> check_operad_axioms(const Operad& q, int axiom_arity) {
  if (!q.enumerable())
    throw std::invalid_argument("axiom check requires an enumerable operad");
  std::vector<std::string> bad;
  const int A = std::min(axiom_arity, q.max_arity());
  auto nm = [&](const Elem& x) { return q.elem_name(x) + "@" + std::to_string(x.arity); };

  if (q.size(0) != 1) report(bad, "arity 0 must be a single basepoint");
  Elem u = q.unit();
  if (u.arity != 1 || u.is_base()) report(bad, "unit must be a non-base arity-1 element");

  // Basepoint absorption and unit laws.
  for (int n = 1; n <= A; ++n) {
    for (std::int64_t x = 0; x < q.size(n); ++x) {
      Elem xe{n, x};
      for (int m = 1; n + m - 1 <= A; ++m)
        for (int i = 1; i <= n; ++i) {
          if (!q.compose(xe, i, q.base(m)).is_base())
            report(bad, "composing with a basepoint is not base at " + nm(xe));
          if (!q.compose(q.base(m), 1, xe).is_base() && m == 1)
            report(bad, "composing under a basepoint is not base at " + nm(xe));
        }
      if (q.compose(u, 1, xe) != xe) report(bad, "left unit law fails at " + nm(xe));
      for (int i = 1; i <= n; ++i)
        if (q.compose(xe, i, u) != xe)
          report(bad, "right unit law fails at " + nm(xe) + " slot " + std::to_string(i));
    }
  }

  // Associativity, both shapes.
  for (int n = 1; n <= A; ++n)
    for (int m = 1; n + m - 1 <= A; ++m)
      for (int k = 1; n + m + k - 2 <= A; ++k)
        for (std::int64_t x = 1; x < q.size(n); ++x)
          for (std::int64_t y = 1; y < q.size(m); ++y)
            for (std::int64_t z = 1; z < q.size(k); ++z) {
              Elem xe{n, x}, ye{m, y}, ze{k, z};
              for (int i = 1; i <= n; ++i) {
                Elem xy = q.compose(xe, i, ye);
                for (int j = i; j <= i + m - 1; ++j)
                  if (q.compose(xy, j, ze) != q.compose(xe, i, q.compose(ye, j - i + 1, ze)))
                    report(bad, "nested associativity fails at (" + nm(xe) + "," + nm(ye) + "," +
                                    nm(ze) + ") i=" + std::to_string(i) +
                                    " j=" + std::to_string(j));
                for (int j = 1; j < i; ++j)
                  if (q.compose(xy, j, ze) != q.compose(q.compose(xe, j, ze), i + k - 1, ye))
                    report(bad, "parallel associativity fails at (" + nm(xe) + "," + nm(ye) + "," +
                                    nm(ze) + ") i=" + std::to_string(i) +
                                    " j=" + std::to_string(j));
              }
            }

  // Symmetric action laws.
  for (int n = 1; n <= A; ++n) {
    auto perms = perm_sample(n, n <= 4);
    Permutation id = Permutation::identity(n);
    for (std::int64_t x = 0; x < q.size(n); ++x) {
      Elem xe{n, x};
      if (q.sym(id, xe) != xe) report(bad, "sym(id) is not the identity at " + nm(xe));
      if (x == 0 && !q.sym(perms.back(), xe).is_base())
        report(bad, "sym does not fix the basepoint at arity " + std::to_string(n));
      for (const auto& s : perms)
        for (const auto& t : perms)
          if (q.sym(s, q.sym(t, xe)) != q.sym(s * t, xe))
            report(bad, "sym is not a left action at " + nm(xe));
    }
  }

  // Equivariance of composition.
  for (int n = 1; n <= A; ++n)
    for (int m = 1; n + m - 1 <= A; ++m) {
      auto ss = perm_sample(n, n <= 4);
      auto ts = perm_sample(m, m <= 3);
      for (std::int64_t x = 1; x < q.size(n); ++x)
        for (std::int64_t y = 1; y < q.size(m); ++y) {
          Elem xe{n, x}, ye{m, y};
          for (const auto& s : ss)
            for (const auto& t : ts)
              for (int i = 1; i <= n; ++i)
                if (q.compose(q.sym(s, xe), s(i), q.sym(t, ye)) !=
                    q.sym(block_perm(s, i, t), q.compose(xe, i, ye)))
                  report(bad, "equivariance fails at (" + nm(xe) + "," + nm(ye) +
                                  ") slot " + std::to_string(i));
        }
    }

  // Group action laws.
  const Group& G = *q.group();
  for (int n = 0; n <= A; ++n) {
    auto perms = perm_sample(n == 0 ? 1 : n, false);
    for (std::int64_t x = 0; x < q.size(n); ++x) {
      Elem xe{n, x};
      if (q.act(G.identity(), xe) != xe) report(bad, "act(e) is not the identity at " + nm(xe));
      for (int g = 0; g < G.order(); ++g) {
        if (x == 0 && !q.act(g, xe).is_base())
          report(bad, "act does not fix the basepoint at arity " + std::to_string(n));
        for (int h = 0; h < G.order(); ++h)
          if (q.act(g, q.act(h, xe)) != q.act(G.mult(g, h), xe))
            report(bad, "act is not a left action at " + nm(xe));
        if (n >= 1 && x != 0)
          for (const auto& s : perms)
            if (q.act(g, q.sym(s, xe)) != q.sym(s, q.act(g, xe)))
              report(bad, "act does not commute with sym at " + nm(xe));
      }
    }
  }
  for (int g = 0; g < G.order(); ++g) {
    if (q.act(g, u) != u) report(bad, "act does not fix the unit");
    for (int n = 1; n <= A; ++n)
      for (int m = 1; n + m - 1 <= A; ++m)
        for (std::int64_t x = 1; x < q.size(n); ++x)
          for (std::int64_t y = 1; y < q.size(m); ++y) {
            Elem xe{n, x}, ye{m, y};
            for (int i = 1; i <= n; ++i)
              if (q.act(g, q.compose(xe, i, ye)) != q.compose(q.act(g, xe), i, q.act(g, ye)))
                report(bad, "act is not an operad map at (" + nm(xe) + "," + nm(ye) + ")");
          }
  }

  // Augmentation at arity 1.
  if (q.size(1) >= 2) {
    if (!q.augments_to_unit(u)) report(bad, "augmentation does not send the unit to 1");
    for (std::int64_t x = 1; x < q.size(1); ++x)
      for (std::int64_t y = 1; y < q.size(1); ++y) {
        Elem xe{1, x}, ye{1, y}, xy = q.compose(xe, 1, ye);
        if (!xy.is_base() &&
            q.augments_to_unit(xy) != (q.augments_to_unit(xe) && q.augments_to_unit(ye)))
          report(bad, "augmentation is not multiplicative at (" + nm(xe) + "," + nm(ye) + ")");
      }
    if (q.strongly_augmented())
      for (std::int64_t x = 1; x < q.size(1); ++x)
        if (!q.augments_to_unit(Elem{1, x}))
          report(bad, "declared strongly augmented but " + nm(Elem{1, x}) + " augments to *");
  }
  if (q.reduced() && q.size(1) != 2)
    report(bad, "declared reduced but arity 1 is not a two-point set");

  return bad;
}

bool operads_agree(const Operad& a, const Operad& b, int up_to_arity) {
  if (!a.enumerable() || !b.enumerable()) return false;
  int A = std::min({up_to_arity, a.max_arity(), b.max_arity()});
  for (int n = 0; n <= A; ++n)
    if (a.size(n) != b.size(n)) return false;
  if (a.unit() != b.unit()) return false;
  if (a.group()->order() != b.group()->order()) return false;
  for (int n = 1; n <= A; ++n)
    for (int m = 1; n + m - 1 <= A; ++m)
      for (std::int64_t x = 0; x < a.size(n); ++x)
        for (std::int64_t y = 0; y < a.size(m); ++y)
          for (int i = 1; i <= n; ++i)
            if (a.compose(Elem{n, x}, i, Elem{m, y}) != b.compose(Elem{n, x}, i, Elem{m, y}))
              return false;
  for (int n = 1; n <= A; ++n)
    for (const auto& s : perm_sample(n, n <= 4))
      for (std::int64_t x = 0; x < a.size(n); ++x)
        if (a.sym(s, Elem{n, x}) != b.sym(s, Elem{n, x})) return false;
  for (int n = 1; n <= A; ++n)
    for (int g = 0; g < a.group()->order(); ++g)
      for (std::int64_t x = 0; x < a.size(n); ++x)
        if (a.act(g, Elem{n, x}) != b.act(g, Elem{n, x})) return false;
  return true;
}

Elem evaluate_tree_composition(const Operad& q, const Tree& t, const std::vector<Elem>& labels) {
  const int n = t.n_leaves();
  auto lbl = t.labels();
  for (std::size_t k = 0; k < lbl.size(); ++k)
    if (lbl[k] != static_cast<int>(k) + 1)
      throw std::invalid_argument("evaluation requires leaf labels 1..n");
  if (t.is_empty()) return q.unit();
  if (static_cast<int>(labels.size()) != t.n_vertices())
    throw std::invalid_argument("one label per vertex required");
  for (int v = 0; v < t.n_vertices(); ++v)
    if (labels[v].arity != t.arity(v))
      throw std::invalid_argument("label arity mismatch at vertex " + std::to_string(v));

  // Planar composite: fold children right to left so slot indices of the
  // pending children stay put.
  std::function<Elem(int)> eval = [&](int v) -> Elem {
    Elem x = labels[v];
    const auto& ch = t.children(v);
    for (int k = static_cast<int>(ch.size()); k >= 1; --k)
      if (!ch[k - 1].leaf) x = q.compose(x, k, eval(ch[k - 1].id));
    return x;
  };
  Elem planar = eval(0);
  if (planar.is_base()) return q.base(n);

  // Rename planar positions to the actual leaf labels.
  std::vector<int> order;
  std::function<void(int)> leaves = [&](int v) {
    for (const Child& c : t.children(v)) {
      if (c.leaf) order.push_back(c.id);
      else leaves(c.id);
    }
  };
  leaves(0);
  return q.sym(Permutation(order), planar);
}

}  // namespace opbar
