#include "opbar/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace opbar {

namespace {

// Decomposition of a point over P semidirect G into stable data plus its
// group marking; the shared scratch behind fwd, g_v, pi and the homotopy.
struct SdpView {
  StableView sv;
  Weighting stable_w;
  std::vector<Elem> p_labels;  // pure P part, by stable vertex
  GMarking beta;
};

int slot_of_branch(const Tree& t, const BranchInfo& b) {
  EdgeId first = b.edges.front();
  Child want{first.leaf, first.id};
  const auto& kids = t.children(b.stable_below);
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (kids[i] == want) return static_cast<int>(i);
  throw std::logic_error("branch start not among the children of its stable vertex");
}

SdpView sdp_view(const SemidirectOperad& q, const BarPoint& p) {
  if (p.operad_name() != q.name())
    throw std::invalid_argument("point is not over this operad");
  if (p.is_basepoint()) throw std::logic_error("no view of the basepoint");
  SdpView v;
  v.sv = stable_view(p.tree());
  v.stable_w = stable_weights(p.tree(), v.sv, p.weights());
  const GroupPtr& G = q.twist_group();
  for (int ov : v.sv.stable_to_orig) v.p_labels.push_back(q.p_part(p.label(ov)));
  for (const BranchInfo& b : v.sv.branches) {
    Rat total = v.stable_w.at(b.stable_edge);
    std::vector<Rat> ws;
    std::vector<int> gs;
    for (EdgeId e : b.edges) ws.push_back(p.weights().at(e) / total);
    for (int uv : b.unary_vertices) gs.push_back(q.unary_group_elem(p.label(uv)));
    if (b.is_root) {
      v.beta.words.emplace(b.stable_edge, BarWord(WordVariant::BG, G, ws, gs));
    } else {
      int slot = slot_of_branch(p.tree(), b);
      int left = q.g_coords(p.label(b.stable_below))[slot];
      v.beta.words.emplace(b.stable_edge, BarWord(WordVariant::EGt, G, ws, gs, left));
    }
  }
  return v;
}

// Chain for assemble_from_stable: the word scaled to the branch weight,
// with any module labels realized as unary vertices at distance zero from
// the stable vertices they touch.
BranchChain chain_from_word(const SemidirectOperad& q, const BarWord& w, const Rat& total) {
  BranchChain c;
  if (w.has_left()) {
    c.weights.push_back(Rat(0));
    c.labels.push_back(q.unary(w.left_module()));
  }
  for (int i = 0; i <= w.k(); ++i) {
    c.weights.push_back(w.weights()[i] * total);
    if (i < w.k()) c.labels.push_back(q.unary(w.labels()[i]));
  }
  if (w.has_right()) {
    c.labels.push_back(q.unary(w.right_module()));
    c.weights.push_back(Rat(0));
  }
  return c;
}

// g_v for every stable vertex at once, accumulating from the root vertex.
std::vector<int> all_g_v(const SemidirectOperad& q, const SdpView& v) {
  const Group& G = *q.twist_group();
  int n = v.sv.stable.n_vertices();
  std::vector<int> out(std::max(n, 1), G.identity());
  for (int sv = 1; sv < n; ++sv) {
    int parent = v.sv.stable.parent(sv);
    const BarWord& w = v.beta.words.at(EdgeId::vertex_edge(sv));
    out[sv] = G.mult(out[parent], mu(beta_e(w)));
  }
  return out;
}

BarPoint empty_point_over(const Operad& p_op, int leaf_label) {
  return BarPoint::from_parts(p_op, Tree::empty(leaf_label),
                              {{EdgeId::leaf_edge(leaf_label), Rat(1)}}, {});
}

}  // namespace

EquivariantPoint EquivariantPoint::basepoint(const Operad& p_op, GroupPtr g,
                                             std::vector<int> label_set) {
  EquivariantPoint x;
  x.base_ = true;
  x.zeta_ = BarWord::trivial(WordVariant::EG, std::move(g));
  x.psi_ = BarPoint::basepoint(p_op, label_set);
  std::sort(label_set.begin(), label_set.end());
  x.label_set_ = std::move(label_set);
  return x;
}

EquivariantPoint EquivariantPoint::make(const Operad& p_op, const BarWord& zeta,
                                        const BarPoint& psi) {
  if (zeta.variant() != WordVariant::EG)
    throw std::invalid_argument("the word factor must live in EG");
  if (zeta.group().order() != p_op.group()->order())
    throw std::invalid_argument("word group does not act on the operad");
  if (psi.is_basepoint()) return basepoint(p_op, zeta.group_ptr(), psi.label_set());
  EquivariantPoint x;
  x.base_ = false;
  int h = zeta.right_module();
  if (zeta.group().is_identity(h)) {
    x.zeta_ = zeta;
    x.psi_ = psi;
  } else {
    x.zeta_ = act_right(zeta, zeta.group().inverse(h));
    x.psi_ = g_act(p_op, h, psi);
  }
  x.label_set_ = psi.label_set();
  return x;
}

const BarWord& EquivariantPoint::zeta() const {
  if (base_) throw std::logic_error("basepoint has no word factor");
  return zeta_;
}
const BarPoint& EquivariantPoint::psi() const {
  if (base_) throw std::logic_error("basepoint has no point factor");
  return psi_;
}

bool equals(const EquivariantPoint& a, const EquivariantPoint& b) {
  if (a.is_basepoint() || b.is_basepoint()) return a.is_basepoint() == b.is_basepoint();
  return a.zeta() == b.zeta() && equals(a.psi(), b.psi());
}

EquivariantPoint relabel_equivariant(const Operad& p_op, const EquivariantPoint& x,
                                     const std::map<int, int>& m) {
  if (x.is_basepoint()) {
    std::vector<int> ls;
    for (int l : x.label_set()) ls.push_back(m.at(l));
    return EquivariantPoint::basepoint(p_op, x.zeta().group_ptr(), std::move(ls));
  }
  return EquivariantPoint::make(p_op, x.zeta(), relabel_point(p_op, x.psi(), m));
}

EquivariantPoint sym_act_equivariant(const Operad& p_op, const Permutation& pi,
                                     const EquivariantPoint& x) {
  std::map<int, int> m;
  for (int l : x.label_set()) m[l] = pi(l);
  return relabel_equivariant(p_op, x, m);
}

// ---------------------------------------------------------------------------

std::pair<BarPoint, GMarking> marking_bijection_fwd(const SemidirectOperad& q,
                                                    const BarPoint& p) {
  if (p.operad_name() != q.name()) throw std::invalid_argument("point is not over this operad");
  const Operad& P = *q.base_operad();
  if (p.is_basepoint()) return {BarPoint::basepoint(P, p.label_set()), GMarking{}};
  SdpView v = sdp_view(q, p);
  BarPoint psi = BarPoint::from_parts(P, v.sv.stable, v.stable_w, v.p_labels);
  return {std::move(psi), std::move(v.beta)};
}

BarPoint marking_bijection_bwd(const SemidirectOperad& q, const BarPoint& psi,
                               const GMarking& beta) {
  const Operad& P = *q.base_operad();
  if (psi.operad_name() != P.name())
    throw std::invalid_argument("the underlying point must live over the base operad");
  if (psi.is_basepoint()) {
    if (!beta.words.empty())
      throw std::invalid_argument("the basepoint admits only the empty marking");
    return BarPoint::basepoint(q, psi.label_set());
  }
  std::vector<Elem> labels;
  for (int vtx = 0; vtx < psi.tree().n_vertices(); ++vtx) {
    std::vector<int> gs(psi.tree().arity(vtx), q.twist_group()->identity());
    labels.push_back(q.make_elem(psi.label(vtx), gs));
  }
  std::map<EdgeId, BranchChain> chains;
  for (EdgeId e : psi.tree().edges()) {
    auto it = beta.words.find(e);
    if (it == beta.words.end()) throw std::invalid_argument("missing marking for " + e.str());
    bool is_root = e == psi.tree().root_edge();
    if (is_root ? it->second.variant() != WordVariant::BG
                : it->second.variant() != WordVariant::EGt)
      throw std::invalid_argument("marking variant does not match branch position at " + e.str());
    chains[e] = chain_from_word(q, it->second, psi.weights().at(e));
  }
  return normalize(q, assemble_from_stable(q, psi.tree(), labels, chains));
}

int g_v(const SemidirectOperad& q, const BarPoint& p, int stable_vertex) {
  if (p.is_basepoint()) throw std::invalid_argument("the basepoint has no vertices");
  SdpView v = sdp_view(q, p);
  if (stable_vertex < 0 || stable_vertex >= v.sv.stable.n_vertices())
    throw std::invalid_argument("unknown stable vertex");
  return all_g_v(q, v)[stable_vertex];
}

BarPoint sigma(const SemidirectOperad& q, const EquivariantPoint& x) {
  if (x.is_basepoint()) return BarPoint::basepoint(q, x.label_set());
  if (x.arity() < 2)
    throw std::invalid_argument("sigma is defined through the arity-1 identification below 2");
  const BarPoint& psi = x.psi();
  const BarWord& zeta = x.zeta();
  BarWord g = gamma(zeta);
  BarWord leaf_word = pr_r(g);

  std::vector<Elem> labels;
  for (int v = 0; v < psi.tree().n_vertices(); ++v) {
    std::vector<int> gs(psi.tree().arity(v), q.twist_group()->identity());
    labels.push_back(q.make_elem(psi.label(v), gs));
  }
  std::map<EdgeId, BranchChain> chains;
  for (EdgeId e : psi.tree().edges()) {
    const Rat& total = psi.weights().at(e);
    if (e == psi.tree().root_edge()) chains[e] = chain_from_word(q, zeta, total);
    else if (e.leaf) chains[e] = chain_from_word(q, leaf_word, total);
    else chains[e] = chain_from_word(q, g, total);
  }
  return normalize(q, assemble_from_stable(q, psi.tree(), labels, chains));
}

EquivariantPoint pi(const SemidirectOperad& q, const BarPoint& p) {
  const Operad& P = *q.base_operad();
  if (p.is_basepoint())
    return EquivariantPoint::basepoint(P, q.twist_group(), p.label_set());
  if (p.arity() < 2)
    throw std::invalid_argument("pi is defined through the arity-1 identification below 2");
  SdpView v = sdp_view(q, p);
  BarWord zeta = beta_e(v.beta.words.at(v.sv.stable.root_edge()));
  std::vector<int> gv = all_g_v(q, v);
  std::vector<Elem> labels;
  for (int sv = 0; sv < v.sv.stable.n_vertices(); ++sv)
    labels.push_back(P.act(gv[sv], v.p_labels[sv]));
  BarPoint psi = BarPoint::from_parts(P, v.sv.stable, v.stable_w, std::move(labels));
  return EquivariantPoint::make(P, zeta, psi);
}

BarPoint homotopy_h(const SemidirectOperad& q, const Rat& s, const BarPoint& p) {
  if (!in_unit_interval(s)) throw std::invalid_argument("homotopy parameter outside [0,1]");
  if (p.is_basepoint()) return p;
  if (p.arity() < 2)
    throw std::invalid_argument("the homotopy is defined on arities with a stable vertex");
  SdpView v = sdp_view(q, p);
  const Tree& st = v.sv.stable;
  BarWord rhat = beta_e(v.beta.words.at(st.root_edge()));
  BarWord g = gamma(rhat);
  std::vector<int> gv = all_g_v(q, v);
  const Operad& P = *q.base_operad();

  std::vector<Elem> labels;
  for (int sv = 0; sv < st.n_vertices(); ++sv) {
    Elem pv = v.p_labels[sv];
    if (altitude(st, v.stable_w, sv) <= s) pv = P.act(gv[sv], pv);
    std::vector<int> gs(st.arity(sv), q.twist_group()->identity());
    labels.push_back(q.make_elem(pv, gs));
  }

  std::map<EdgeId, BranchChain> chains;
  for (EdgeId e : st.edges()) {
    const BarWord& word = v.beta.words.at(e);
    const Rat& total = v.stable_w.at(e);
    if (e == st.root_edge()) {
      chains[e] = chain_from_word(q, word, total);
      continue;
    }
    // The segment applies on the closed interval from the lower altitude:
    // at the instant the vertex below crosses, its g_v factor has already
    // pushed through onto the words above (the semidirect identification
    // of the two boundary expressions).
    Rat low = lower_altitude(st, v.stable_w, e);
    if (upper_altitude(st, v.stable_w, e) <= s) {
      chains[e] = chain_from_word(q, e.leaf ? pr_r(g) : g, total);
    } else if (s < low) {
      chains[e] = chain_from_word(q, word, total);
    } else {
      int below = st.vertex_below(e);
      BarWord seg = graft_scale(g, act_left(gv[below], beta_e(word)), (s - low) / total);
      chains[e] = chain_from_word(q, e.leaf ? pr_r(seg) : seg, total);
    }
  }
  return normalize(q, assemble_from_stable(q, st, labels, chains));
}

BarWord arity1_to_word(const SemidirectOperad& q, const BarPoint& p) {
  if (p.is_basepoint() || p.arity() != 1)
    throw std::invalid_argument("the identification applies to non-base arity-1 points");
  StableView sv = stable_view(p.tree());
  const BranchInfo& b = sv.branches.front();
  std::vector<Rat> ws;
  std::vector<int> gs;
  for (EdgeId e : b.edges) ws.push_back(p.weights().at(e));
  for (int uv : b.unary_vertices) gs.push_back(q.unary_group_elem(p.label(uv)));
  return BarWord(WordVariant::BG, q.twist_group(), std::move(ws), std::move(gs));
}

BarPoint word_to_arity1(const SemidirectOperad& q, const BarWord& w, int leaf_label) {
  if (w.variant() != WordVariant::BG)
    throw std::invalid_argument("arity-1 points correspond to BG words");
  std::map<EdgeId, BranchChain> chains;
  chains[EdgeId::leaf_edge(leaf_label)] = chain_from_word(q, w, Rat(1));
  return normalize(q, assemble_from_stable(q, Tree::empty(leaf_label), {}, chains));
}

BarPoint sigma_extended(const SemidirectOperad& q, const EquivariantPoint& x) {
  if (x.is_basepoint()) return BarPoint::basepoint(q, x.label_set());
  if (x.arity() >= 2) return sigma(q, x);
  // arity 1: the point factor is the empty-tree point and the word carries
  // everything through the identification with BG
  return word_to_arity1(q, pr_root(x.zeta()), x.label_set().front());
}

EquivariantPoint pi_extended(const SemidirectOperad& q, const BarPoint& p) {
  const Operad& P = *q.base_operad();
  if (p.is_basepoint())
    return EquivariantPoint::basepoint(P, q.twist_group(), p.label_set());
  if (p.arity() >= 2) return pi(q, p);
  BarWord zeta = beta_e(arity1_to_word(q, p));
  return EquivariantPoint::make(P, zeta, empty_point_over(P, p.label_set().front()));
}

}  // namespace opbar
