#include "opbar/probes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace opbar {

RawBarPoint path_point(const DegenerationPath& path, const Rat& eps) {
  RawBarPoint raw;
  raw.tree = path.tree;
  raw.labels = path.labels;
  for (const auto& [e, a] : path.weights) raw.weights[e] = a.at(eps);
  return raw;
}

std::vector<std::string> validate_path(const Operad& q, const DegenerationPath& path, int k) {
  std::vector<std::string> bad;
  Rat eps(1);
  for (int i = 0; i <= k; ++i) {
    if (i > 0) eps /= Rat(2);
    Rat e = i == 0 ? Rat(0) : eps;
    RawBarPoint raw = path_point(path, e);
    for (const auto& msg : validate_raw(q, raw))
      bad.push_back(path.name + " at eps=" + rat_to_string(e) + ": " + msg);
    if (path.has_word) {
      Rat sum(0);
      for (const auto& a : path.word_weights) {
        Rat w = a.at(e);
        if (!in_unit_interval(w)) bad.push_back(path.name + ": word weight outside [0,1]");
        sum += w;
      }
      if (sum != Rat(1)) bad.push_back(path.name + ": word weights do not sum to 1");
    }
  }
  return bad;
}

std::string MapUnderProbe::str() const {
  switch (kind) {
    case Normalize: return "normalize";
    case Sigma: return "sigma";
    case Pi: return "pi";
    case Homotopy: return "H(" + rat_to_string(s) + ")";
    case Decompose: {
      std::string out = "decompose(a=" + std::to_string(req.a) + ",B={";
      for (std::size_t i = 0; i < req.B.size(); ++i)
        out += (i ? "," : "") + std::to_string(req.B[i]);
      return out + "})";
    }
  }
  return "?";
}

namespace {

// The result of one map application, in a shape that supports signature
// comparison, weight extraction and rebuilding at substituted weights.
struct Outcome {
  int kind = 0;  // 0 point, 1 equivariant, 2 pair of points
  BarPoint p1, p2;
  std::optional<EquivariantPoint> eq;

  static Outcome of(BarPoint p) {
    Outcome o;
    o.kind = 0;
    o.p1 = std::move(p);
    return o;
  }
  static Outcome of(EquivariantPoint e) {
    Outcome o;
    o.kind = 1;
    o.eq = std::move(e);
    return o;
  }
  static Outcome of(std::pair<BarPoint, BarPoint> pr) {
    Outcome o;
    o.kind = 2;
    o.p1 = std::move(pr.first);
    o.p2 = std::move(pr.second);
    return o;
  }
};

std::string point_sig(const BarPoint& p) {
  if (p.is_basepoint()) return "*";
  std::string s = p.tree().str() + "|";
  for (const Elem& e : p.labels()) s += std::to_string(e.arity) + ":" + std::to_string(e.id) + ",";
  return s;
}

void point_weights(const BarPoint& p, std::vector<Rat>& out) {
  if (p.is_basepoint()) return;
  for (const auto& [e, w] : p.weights()) out.push_back(w);
}

std::string word_sig(const BarWord& w) {
  std::string s = variant_name(w.variant()) + "[";
  for (int l : w.labels()) s += std::to_string(l) + ",";
  if (w.has_left()) s += "|l" + std::to_string(w.left_module());
  if (w.has_right()) s += "|r" + std::to_string(w.right_module());
  return s + "]";
}

std::string outcome_sig(const Outcome& o) {
  switch (o.kind) {
    case 0: return "P:" + point_sig(o.p1);
    case 1:
      if (o.eq->is_basepoint()) return "E:*";
      return "E:" + word_sig(o.eq->zeta()) + "^" + point_sig(o.eq->psi());
    default: return "PP:" + point_sig(o.p1) + "&" + point_sig(o.p2);
  }
}

std::vector<Rat> outcome_weights(const Outcome& o) {
  std::vector<Rat> out;
  if (o.kind == 0) point_weights(o.p1, out);
  else if (o.kind == 1) {
    if (!o.eq->is_basepoint()) {
      for (const Rat& t : o.eq->zeta().weights()) out.push_back(t);
      point_weights(o.eq->psi(), out);
    }
  } else {
    point_weights(o.p1, out);
    point_weights(o.p2, out);
  }
  return out;
}

BarPoint rebuild_point(const Operad& q, const BarPoint& shape, const std::vector<Rat>& w,
                       std::size_t& at) {
  if (shape.is_basepoint()) return shape;
  Weighting ws;
  for (const auto& [e, old] : shape.weights()) {
    (void)old;
    ws[e] = w.at(at++);
  }
  return normalize(q, RawBarPoint{shape.tree(), std::move(ws), shape.labels()});
}

// Substitutes a fresh weight vector into the outcome's structure and
// re-canonicalizes; the way eps -> 0 limits are realized.
Outcome rebuild(const SemidirectOperad& q, const Outcome& shape, const std::vector<Rat>& w) {
  std::size_t at = 0;
  if (shape.kind == 0) return Outcome::of(rebuild_point(q, shape.p1, w, at));
  if (shape.kind == 1) {
    if (shape.eq->is_basepoint()) return shape;
    const BarWord& z = shape.eq->zeta();
    std::vector<Rat> zw;
    for (std::size_t i = 0; i < z.weights().size(); ++i) zw.push_back(w.at(at++));
    BarWord nz(z.variant(), z.group_ptr(), std::move(zw), z.labels(), -1, z.right_module());
    BarPoint np = rebuild_point(*q.base_operad(), shape.eq->psi(), w, at);
    return Outcome::of(EquivariantPoint::make(*q.base_operad(), nz, np));
  }
  Outcome o;
  o.kind = 2;
  o.p1 = rebuild_point(q, shape.p1, w, at);
  o.p2 = rebuild_point(q, shape.p2, w, at);
  if (o.p1.is_basepoint() || o.p2.is_basepoint()) {
    // smash pair absorption, as in the structure maps themselves
    o.p1 = BarPoint::basepoint(q, shape.p1.label_set());
    o.p2 = BarPoint::basepoint(q, shape.p2.label_set());
  }
  return o;
}

bool outcome_same(const Outcome& a, const Outcome& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == 0) return equals(a.p1, b.p1);
  if (a.kind == 1) return equals(*a.eq, *b.eq);
  return equals(a.p1, b.p1) && equals(a.p2, b.p2);
}

// Exact fit of the sample set by one rational function of the given
// degree; returns its value (limit) at 0. Solved as a homogeneous linear
// system over the coefficients, then verified on every sample.
std::optional<Rat> rational_fit_limit(const std::vector<std::pair<Rat, Rat>>& samples, int deg) {
  const int cols = 2 * (deg + 1);
  const int rows = std::min<int>(2 * deg + 1, static_cast<int>(samples.size()));
  if (rows < 1) return std::nullopt;
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols, Rat(0)));
  for (int r = 0; r < rows; ++r) {
    const auto& [e, y] = samples[r];
    Rat p(1);
    for (int d = 0; d <= deg; ++d) {
      m[r][d] = p;
      m[r][deg + 1 + d] = -y * p;
      p *= e;
    }
  }
  // Gaussian elimination to echelon form
  std::vector<int> pivot_of_col(cols, -1);
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (!is_zero(m[r][col])) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    for (int r = 0; r < rows; ++r) {
      if (r == row || is_zero(m[r][col])) continue;
      Rat f = m[r][col] / m[row][col];
      for (int c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_of_col[col] = row++;
  }
  // one nonzero nullspace vector: set the first free column to 1
  int free_col = -1;
  for (int c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) {
      free_col = c;
      break;
    }
  if (free_col < 0) return std::nullopt;
  std::vector<Rat> sol(cols, Rat(0));
  sol[free_col] = Rat(1);
  for (int c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0)
      sol[c] = -m[pivot_of_col[c]][free_col] / m[pivot_of_col[c]][c];
  // verify on every sample, denominators staying away from zero
  for (const auto& [e, y] : samples) {
    Rat num(0), den(0), p(1);
    for (int d = 0; d <= deg; ++d) {
      num += sol[d] * p;
      den += sol[deg + 1 + d] * p;
      p *= e;
    }
    if (is_zero(den) || num != y * den) return std::nullopt;
  }
  // value at 0: strip common factors of the parameter first
  std::vector<Rat> num(sol.begin(), sol.begin() + deg + 1);
  std::vector<Rat> den(sol.begin() + deg + 1, sol.end());
  while (num.size() > 1 && is_zero(num.front()) && is_zero(den.front())) {
    num.erase(num.begin());
    den.erase(den.begin());
  }
  if (is_zero(den.front())) return std::nullopt;
  return num.front() / den.front();
}

std::optional<Rat> mobius_limit(const std::vector<std::pair<Rat, Rat>>& samples) {
  if (samples.empty()) return std::nullopt;
  bool all_equal = true;
  for (const auto& [e, y] : samples) all_equal = all_equal && y == samples[0].second;
  if (all_equal) return samples[0].second;
  if (auto l = rational_fit_limit(samples, 1)) return l;
  return rational_fit_limit(samples, 2);
}

Outcome apply_map(const SemidirectOperad& q, const MapUnderProbe& f,
                  const DegenerationPath& path, const Rat& eps) {
  const Operad& P = *q.base_operad();
  if (f.kind == MapUnderProbe::Sigma) {
    if (!path.has_word) throw std::invalid_argument("sigma probes need a word factor");
    std::vector<Rat> zw;
    for (const auto& a : path.word_weights) zw.push_back(a.at(eps));
    BarWord zeta(WordVariant::EG, q.twist_group(), std::move(zw), path.word_labels, -1,
                 path.word_right);
    BarPoint psi = normalize(P, path_point(path, eps));
    return Outcome::of(sigma_extended(q, EquivariantPoint::make(P, zeta, psi)));
  }
  BarPoint p = normalize(q, path_point(path, eps));
  switch (f.kind) {
    case MapUnderProbe::Normalize: return Outcome::of(p);
    case MapUnderProbe::Pi: return Outcome::of(pi_extended(q, p));
    case MapUnderProbe::Homotopy: return Outcome::of(homotopy_h(q, f.s, p));
    case MapUnderProbe::Decompose: return Outcome::of(decompose(q, p, f.req));
    default: throw std::logic_error("unhandled map");
  }
}

ProbeReport tail_limit_check(const SemidirectOperad& q, const std::string& name,
                             const std::function<Outcome(const Rat&)>& at, int k,
                             int stable_from) {
  ProbeReport rep;
  rep.name = name;
  std::vector<Rat> eps;
  {
    Rat e(1);
    for (int i = 1; i <= k; ++i) {
      e /= Rat(2);
      eps.push_back(e);
    }
  }
  std::vector<Outcome> outs;
  for (const Rat& e : eps) outs.push_back(at(e));
  Outcome target = at(Rat(0));

  // shape stabilization index
  int start = -1;
  for (int i = std::max(stable_from - 1, 0); i < k; ++i) {
    bool ok = true;
    for (int j = i + 1; j < k; ++j) ok = ok && outcome_sig(outs[i]) == outcome_sig(outs[j]);
    if (ok) {
      start = i;
      break;
    }
  }
  if (start < 0) {
    rep.detail = "canonical shape never stabilizes along the tail";
    return rep;
  }

  std::vector<std::vector<Rat>> tails;
  for (int i = start; i < k; ++i) tails.push_back(outcome_weights(outs[i]));
  std::vector<Rat> limit(tails[0].size());
  for (std::size_t c = 0; c < limit.size(); ++c) {
    std::vector<std::pair<Rat, Rat>> samples;
    for (std::size_t i = 0; i < tails.size(); ++i) samples.push_back({eps[start + i], tails[i][c]});
    auto l = mobius_limit(samples);
    if (!l) {
      rep.detail = "weight " + std::to_string(c) + " does not follow a rational function; " +
                   "first divergent sample eps=" + rat_to_string(eps[start]);
      return rep;
    }
    if (!in_unit_interval(*l)) {
      rep.detail = "weight " + std::to_string(c) + " has limit outside [0,1]";
      return rep;
    }
    limit[c] = *l;
  }
  Outcome lim;
  try {
    lim = rebuild(q, outs[start], limit);
  } catch (const std::exception& ex) {
    rep.detail = std::string("limit does not assemble: ") + ex.what();
    return rep;
  }
  if (!outcome_same(lim, target)) {
    rep.detail = "tail limit disagrees with the value on the degenerate input";
    return rep;
  }
  rep.pass = true;
  rep.detail = "tail stabilizes at sample " + std::to_string(start + 1) + " of " +
               std::to_string(k);
  return rep;
}

}  // namespace

ProbeReport continuity_probe(const SemidirectOperad& q, const MapUnderProbe& f,
                             const DegenerationPath& path, int k, int stable_from) {
  const Operad& dom = path.has_word ? *q.base_operad() : static_cast<const Operad&>(q);
  auto bad = validate_path(dom, path, k);
  if (!bad.empty()) throw std::invalid_argument("invalid path: " + bad.front());
  return tail_limit_check(
      q, f.str() + " / " + path.name, [&](const Rat& e) { return apply_map(q, f, path, e); }, k,
      stable_from);
}

ProbeReport h_crossing_probe(const SemidirectOperad& q, const BarPoint& p, const Rat& s_star,
                             int k, int stable_from) {
  if (!in_unit_interval(s_star) || is_zero(s_star))
    throw std::invalid_argument("crossing parameter must lie in (0,1]");
  return tail_limit_check(
      q, "H crossing at s=" + rat_to_string(s_star),
      [&](const Rat& e) { return Outcome::of(homotopy_h(q, s_star - e * s_star, p)); }, k,
      stable_from);
}

ProbeReport confluence_probe(const Operad& q, const RawBarPoint& raw, int orders,
                             std::uint64_t seed) {
  ProbeReport rep;
  rep.name = "confluence";
  BarPoint ref = normalize(q, raw);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < orders; ++i) {
    BarPoint alt = normalize(q, raw, &rng);
    if (!equals(alt, ref)) {
      rep.detail = "rule order " + std::to_string(i) + " reaches a different normal form: " +
                   alt.str(q) + " vs " + ref.str(q);
      return rep;
    }
  }
  rep.pass = true;
  rep.detail = std::to_string(orders) + " shuffled orders agree";
  return rep;
}

namespace {
bool in_reduced_image(const BarPoint& p) {
  if (p.is_basepoint()) return true;
  for (int v = 0; v < p.tree().n_vertices(); ++v)
    if (p.tree().arity(v) == 1) return false;
  return true;
}
}  // namespace

ProbeReport reduced_membership_probe(const SemidirectOperad& q, int arity, int samples,
                                     std::uint64_t seed) {
  ProbeReport rep;
  rep.name = "reduced membership at arity " + std::to_string(arity);
  Generator gen(std::make_shared<SemidirectOperad>(q.base_operad(), q.twist_group()), seed);
  const Group& G = *q.twist_group();
  for (int i = 0; i < samples; ++i) {
    // stable points land in the image
    BarPoint psi = gen.psi_point(arity);
    std::vector<Elem> lifted;
    for (int v = 0; v < psi.tree().n_vertices(); ++v) {
      std::vector<int> gs;
      for (int kk = 0; kk < psi.tree().arity(v); ++kk) gs.push_back(gen.u(G.order()));
      lifted.push_back(q.make_elem(psi.label(v), gs));
    }
    BarPoint p = BarPoint::from_parts(q, psi.tree(), psi.weights(), lifted);
    if (!in_reduced_image(p)) {
      rep.detail = "stable sample " + std::to_string(i) + " left the image";
      return rep;
    }
    // wedging a non-identity unary label leaves the image
    if (G.order() > 1) {
      MarkingView mv = to_marking_view(q, p);
      auto& word = mv.words.begin()->second;
      Rat t0 = word.weights.front() / Rat(2);
      word.weights.front() = t0;
      word.weights.insert(word.weights.begin(), t0);
      word.labels.insert(word.labels.begin(), q.unary(1 + gen.u(G.order() - 1)));
      BarPoint marked = from_marking_view(q, mv);
      if (in_reduced_image(marked)) {
        rep.detail = "sample " + std::to_string(i) + " with a group-labeled vertex stayed in "
                     "the image";
        return rep;
      }
    }
    // the degrafting structure maps preserve membership
    if (arity >= 2) {
      std::vector<int> B;
      int bsize = 1 + gen.u(arity - 1);
      std::set<int> chosen;
      while (static_cast<int>(chosen.size()) < bsize) chosen.insert(1 + gen.u(arity));
      B.assign(chosen.begin(), chosen.end());
      std::vector<int> A{arity + 1};
      for (int l = 1; l <= arity; ++l)
        if (!chosen.count(l)) A.push_back(l);
      auto [fa, fb] = decompose(q, p, DecompositionRequest{A, arity + 1, B});
      if (!in_reduced_image(fa) || !in_reduced_image(fb)) {
        rep.detail = "degrafting left the image at sample " + std::to_string(i);
        return rep;
      }
    }
  }
  rep.pass = true;
  rep.detail = std::to_string(samples) + " samples checked";
  return rep;
}

// ---------------------------------------------------------------------------

Generator::Generator(std::shared_ptr<const SemidirectOperad> q, std::uint64_t seed)
    : q_(std::move(q)), rng_(seed) {}

std::uint64_t Generator::bits() { return rng_(); }
int Generator::u(int m) { return m <= 1 ? 0 : static_cast<int>(rng_() % m); }

Tree Generator::stable_tree(int n) {
  if (n < 2) throw std::invalid_argument("stable trees need at least two leaves");
  int next_label = 1;
  std::function<TreeBuilder(int)> shape = [&](int leaves) -> TreeBuilder {
    if (leaves == 1) return TreeBuilder::leaf(next_label++);
    int max_ar = std::min(leaves, 4);
    int ar = 2 + u(max_ar - 1);
    std::vector<int> parts(ar, 1);
    for (int extra = leaves - ar; extra > 0; --extra) parts[u(ar)] += 1;
    TreeBuilder b = TreeBuilder::node({});
    for (int p : parts) b.children.push_back(shape(p));
    return b;
  };
  Tree t(shape(n));
  // random leaf relabeling
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[u(i + 1)]);
  std::map<int, int> m;
  for (int i = 0; i < n; ++i) m[i + 1] = perm[i];
  return t.relabel(m);
}

Rat Generator::rnd_alt(int lo64, int hi64) { return rat(lo64 + u(hi64 - lo64 + 1), 64); }

BarPoint Generator::psi_point(int n) {
  const Operad& P = base();
  if (n == 1)
    return BarPoint::from_parts(P, Tree::empty(1), {{EdgeId::leaf_edge(1), Rat(1)}}, {});
  Tree t = stable_tree(n);
  // strictly increasing altitudes on the 64 grid, leaving room below 64
  std::vector<int> depth_below(t.n_vertices(), 0);
  for (int v = t.n_vertices() - 1; v >= 0; --v)
    for (const Child& c : t.children(v))
      if (!c.leaf) depth_below[v] = std::max(depth_below[v], depth_below[c.id] + 1);
  std::vector<int> alt(t.n_vertices());
  Weighting w;
  for (int v = 0; v < t.n_vertices(); ++v) {
    int lo = (t.parent(v) < 0 ? 0 : alt[t.parent(v)]) + 1;
    int hi = 63 - depth_below[v];
    alt[v] = lo + u(std::max(hi - lo, 0) + 1);
    w[EdgeId::vertex_edge(v)] = rat(alt[v] - (t.parent(v) < 0 ? 0 : alt[t.parent(v)]), 64);
  }
  for (int l : t.labels()) w[EdgeId::leaf_edge(l)] = rat(64 - alt[t.leaf_parent(l)], 64);
  std::vector<Elem> labels;
  for (int v = 0; v < t.n_vertices(); ++v) labels.push_back(base_elem(t.arity(v)));
  return BarPoint::from_parts(P, std::move(t), std::move(w), std::move(labels));
}

Elem Generator::base_elem(int arity) {
  const Operad& P = base();
  return Elem{arity, 1 + u(static_cast<int>(P.size(arity)) - 1)};
}

BarWord Generator::word(WordVariant v, int max_labels) {
  int kk = u(max_labels + 1);
  std::set<int> cuts;
  while (static_cast<int>(cuts.size()) < kk) cuts.insert(1 + u(63));
  std::vector<Rat> ws;
  int prev = 0;
  for (int c : cuts) {
    ws.push_back(rat(c - prev, 64));
    prev = c;
  }
  ws.push_back(rat(64 - prev, 64));
  std::vector<int> ls;
  const Group& G = *grp();
  for (int i = 0; i < kk; ++i) ls.push_back(u(G.order()));
  bool hl = v == WordVariant::EGt || v == WordVariant::BGGG;
  bool hr = v == WordVariant::EG || v == WordVariant::BGGG;
  // draw in a fixed sequence; argument evaluation order is unspecified
  int left = hl ? u(G.order()) : -1;
  int right = hr ? u(G.order()) : -1;
  return BarWord(v, grp(), std::move(ws), std::move(ls), left, right);
}

EquivariantPoint Generator::equivariant(int n) {
  BarWord zeta = word(WordVariant::EG);
  BarPoint psi = psi_point(n);
  return EquivariantPoint::make(base(), zeta, psi);
}

RawBarPoint Generator::raw_point(int n, bool degenerate) {
  // stable scaffold with unary vertices sprinkled along edges
  Tree st = n >= 2 ? stable_tree(n) : Tree::empty(1);
  int inserted = 0;
  std::function<TreeBuilder(const TreeBuilder&)> deco = [&](const TreeBuilder& b) {
    TreeBuilder out = b;
    if (!b.is_leaf) {
      out.children.clear();
      for (const auto& c : b.children) out.children.push_back(deco(c));
    }
    while (inserted < 3 && u(3) == 0) {
      out = TreeBuilder::node({out});
      ++inserted;
    }
    return out;
  };
  std::function<TreeBuilder(const Tree&, int)> exportv = [&](const Tree& t, int v) {
    TreeBuilder b = TreeBuilder::node({});
    for (const Child& c : t.children(v))
      b.children.push_back(c.leaf ? TreeBuilder::leaf(c.id) : exportv(t, c.id));
    return b;
  };
  TreeBuilder builder =
      st.is_empty() ? deco(TreeBuilder::leaf(st.empty_leaf_label())) : deco(exportv(st, 0));
  Tree t = st.is_empty() && builder.is_leaf ? Tree::empty(st.empty_leaf_label()) : Tree(builder);

  Weighting w;
  std::vector<int> alt(std::max(t.n_vertices(), 1), 0);
  for (int v = 0; v < t.n_vertices(); ++v) {
    int below = t.parent(v) < 0 ? 0 : alt[t.parent(v)];
    int step;
    if (degenerate)
      step = u(3) == 0 ? 0 : u(64 - below + 1);
    else
      step = 1 + u(4);  // depth stays well under the 64 grid
    alt[v] = below + step;
    w[EdgeId::vertex_edge(v)] = rat(step, 64);
  }
  for (int l : t.labels()) {
    int below = t.is_empty() ? 0 : alt[t.leaf_parent(l)];
    w[EdgeId::leaf_edge(l)] = rat(64 - below, 64);
  }

  const Group& G = *grp();
  std::vector<Elem> labels;
  for (int v = 0; v < t.n_vertices(); ++v) {
    int ar = t.arity(v);
    if (degenerate && u(40) == 0) {
      labels.push_back(q_->base(ar));
      continue;
    }
    if (ar == 1) {
      labels.push_back(q_->unary(degenerate ? u(G.order()) : u(G.order())));
    } else {
      std::vector<int> gs;
      for (int kk = 0; kk < ar; ++kk) gs.push_back(u(G.order()));
      labels.push_back(q_->make_elem(base_elem(ar), gs));
    }
  }
  return RawBarPoint{std::move(t), std::move(w), std::move(labels)};
}

BarPoint Generator::point(int n) {
  for (int tries = 0; tries < 64; ++tries) {
    BarPoint p = normalize(*q_, raw_point(n, false));
    if (!p.is_basepoint()) return p;
  }
  throw std::logic_error("generator failed to produce a non-base point");
}

// ---------------------------------------------------------------------------
// The continuity suite

namespace {

using AW = std::map<EdgeId, AffineRat>;

AffineRat cns(int num, int den = 8) { return AffineRat::constant(rat(num, den)); }
AffineRat aff(Rat c0, Rat c1) { return {std::move(c0), std::move(c1)}; }

// Shared 4-leaf shape with chains on the root branch, the internal branch
// and leaf 1's branch:
//   vertices: 0 root chain vertex, 1 = 3-ary stable, 2 = chain vertex,
//   3 = binary stable over leaves 1,2, 4 = chain vertex over leaf 1.
struct ShapeA {
  Tree tree;
  std::vector<Elem> labels;
  AW base;  // all constant
};

ShapeA make_shape_a(Generator& gen) {
  using TB = TreeBuilder;
  ShapeA s;
  s.tree = Tree(TB::node({TB::node({TB::node({TB::node({TB::node({TB::leaf(1)}), TB::leaf(2)})}),
                                    TB::leaf(3), TB::leaf(4)})}));
  const SemidirectOperad& q = gen.sdp();
  const Group& G = *gen.grp();
  auto nz = [&] { return G.order() > 1 ? 1 + gen.u(G.order() - 1) : 0; };
  std::vector<int> g3{gen.u(G.order()), gen.u(G.order()), gen.u(G.order())};
  std::vector<int> g2{gen.u(G.order()), gen.u(G.order())};
  s.labels = {q.unary(nz()), q.make_elem(gen.base_elem(3), g3), q.unary(nz()),
              q.make_elem(gen.base_elem(2), g2), q.unary(nz())};
  s.base[EdgeId::vertex_edge(0)] = cns(1);   // root edge
  s.base[EdgeId::vertex_edge(1)] = cns(1);   // below the 3-ary vertex
  s.base[EdgeId::vertex_edge(2)] = cns(1);   // internal chain
  s.base[EdgeId::vertex_edge(3)] = cns(1);   // below the binary vertex
  s.base[EdgeId::vertex_edge(4)] = cns(2);   // leaf-1 chain
  s.base[EdgeId::leaf_edge(1)] = cns(2);
  s.base[EdgeId::leaf_edge(2)] = cns(4);
  s.base[EdgeId::leaf_edge(3)] = cns(6);
  s.base[EdgeId::leaf_edge(4)] = cns(6);
  return s;
}

DegenerationPath path_from(const ShapeA& s, const std::string& name, const AW& overrides) {
  DegenerationPath p;
  p.name = name;
  p.tree = s.tree;
  p.labels = s.labels;
  p.weights = s.base;
  for (const auto& [e, a] : overrides) p.weights[e] = a;
  return p;
}

// Stable 4-leaf shape over the base operad for the sigma paths:
// vertex 0 = 3-ary root, vertex 1 = binary over leaves 1,2.
struct ShapeB {
  Tree tree;
  std::vector<Elem> labels;
  AW base;
};

ShapeB make_shape_b(Generator& gen) {
  using TB = TreeBuilder;
  ShapeB s;
  s.tree = Tree(TB::node({TB::node({TB::leaf(1), TB::leaf(2)}), TB::leaf(3), TB::leaf(4)}));
  s.labels = {gen.base_elem(3), gen.base_elem(2)};
  s.base[EdgeId::vertex_edge(0)] = cns(2);
  s.base[EdgeId::vertex_edge(1)] = cns(2);
  s.base[EdgeId::leaf_edge(1)] = cns(4);
  s.base[EdgeId::leaf_edge(2)] = cns(4);
  s.base[EdgeId::leaf_edge(3)] = cns(6);
  s.base[EdgeId::leaf_edge(4)] = cns(6);
  return s;
}

}  // namespace

std::vector<ProbeCase> continuity_suite(Generator& gen) {
  std::vector<ProbeCase> cases;
  const Group& G = *gen.grp();
  auto nz = [&] { return G.order() > 1 ? 1 + gen.u(G.order() - 1) : 0; };

  ShapeA sa = make_shape_a(gen);
  std::vector<std::pair<std::string, AW>> tree_classes = {
      {"leaf branch to zero",
       {{EdgeId::vertex_edge(4), aff(Rat(0), rat(1, 2))},
        {EdgeId::leaf_edge(1), aff(Rat(0), rat(1, 2))},
        {EdgeId::leaf_edge(2), aff(Rat(0), Rat(1))},
        {EdgeId::vertex_edge(3), aff(rat(5, 8), Rat(-1))}}},
      {"root branch to zero",
       {{EdgeId::vertex_edge(0), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(1), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(2), aff(rat(3, 8), rat(-1, 4))},
        {EdgeId::leaf_edge(3), aff(Rat(1), rat(-1, 4))},
        {EdgeId::leaf_edge(4), aff(Rat(1), rat(-1, 4))}}},
      {"internal branch to zero",
       {{EdgeId::vertex_edge(2), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(3), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(4), aff(rat(4, 8), rat(-1, 4))},
        {EdgeId::leaf_edge(2), aff(rat(6, 8), rat(-1, 4))}}},
      {"edge inside a branch to zero",
       {{EdgeId::vertex_edge(2), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(3), aff(rat(2, 8), rat(-1, 8))}}},
      {"edge below a stable vertex to zero",
       {{EdgeId::vertex_edge(3), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(2), aff(rat(2, 8), rat(-1, 8))}}},
      {"edge below the least stable vertex to zero",
       {{EdgeId::vertex_edge(1), aff(Rat(0), rat(1, 8))},
        {EdgeId::vertex_edge(0), aff(rat(2, 8), rat(-1, 8))}}},
      {"constant path", {}},
  };
  DecompositionRequest split_internal{{5, 3, 4}, 5, {1, 2}};
  DecompositionRequest split_root{{5}, 5, {1, 2, 3, 4}};
  for (const auto& [name, overrides] : tree_classes) {
    DegenerationPath p = path_from(sa, name, overrides);
    cases.push_back({MapUnderProbe::normalize_map(), p});
    cases.push_back({MapUnderProbe::pi_map(), p});
    cases.push_back({MapUnderProbe::homotopy_map(rat(1, 2)), p});
    cases.push_back({MapUnderProbe::decompose_map(split_internal), p});
  }
  cases.push_back(
      {MapUnderProbe::decompose_map(split_root), path_from(sa, "root branch to zero (root split)",
                                                           tree_classes[1].second)});

  // sigma paths: point factor over the base operad plus a word factor
  ShapeB sb = make_shape_b(gen);
  auto sigma_path = [&](const std::string& name, const AW& overrides,
                        std::vector<AffineRat> ww) {
    DegenerationPath p;
    p.name = name;
    p.tree = sb.tree;
    p.labels = sb.labels;
    p.weights = sb.base;
    for (const auto& [e, a] : overrides) p.weights[e] = a;
    p.has_word = true;
    p.word_weights = std::move(ww);
    p.word_labels = {nz(), nz()};
    p.word_right = G.identity();
    return p;
  };
  std::vector<AffineRat> word_const{cns(2), cns(2), cns(4)};
  cases.push_back({MapUnderProbe::sigma_map(),
                   sigma_path("point leaf branch to zero",
                              {{EdgeId::leaf_edge(1), aff(Rat(0), Rat(1))},
                               {EdgeId::leaf_edge(2), aff(Rat(0), Rat(1))},
                               {EdgeId::vertex_edge(1), aff(rat(6, 8), Rat(-1))}},
                              word_const)});
  cases.push_back({MapUnderProbe::sigma_map(),
                   sigma_path("point root branch to zero",
                              {{EdgeId::vertex_edge(0), aff(Rat(0), Rat(1))},
                               {EdgeId::vertex_edge(1), aff(rat(4, 8), Rat(-1))},
                               {EdgeId::leaf_edge(3), aff(Rat(1), Rat(-1))},
                               {EdgeId::leaf_edge(4), aff(Rat(1), Rat(-1))}},
                              word_const)});
  cases.push_back({MapUnderProbe::sigma_map(),
                   sigma_path("point internal branch to zero",
                              {{EdgeId::vertex_edge(1), aff(Rat(0), Rat(1))},
                               {EdgeId::leaf_edge(1), aff(rat(6, 8), Rat(-1))},
                               {EdgeId::leaf_edge(2), aff(rat(6, 8), Rat(-1))}},
                              word_const)});
  cases.push_back({MapUnderProbe::sigma_map(),
                   sigma_path("word root edge to zero", {},
                              {aff(Rat(0), Rat(1)), aff(rat(4, 8), Rat(-1)), cns(4)})});
  cases.push_back({MapUnderProbe::sigma_map(),
                   sigma_path("word interior edge to zero", {},
                              {cns(2), aff(Rat(0), Rat(1)), aff(rat(6, 8), Rat(-1))})});
  cases.push_back({MapUnderProbe::sigma_map(),
                   sigma_path("word module edge to zero", {},
                              {cns(2), aff(rat(6, 8), Rat(-1)), aff(Rat(0), Rat(1))})});
  cases.push_back({MapUnderProbe::sigma_map(), sigma_path("constant path", {}, word_const)});

  return cases;
}

}  // namespace opbar
