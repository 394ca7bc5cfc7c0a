#include "opbar/suites.hpp"

#include "opbar/table_operad.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace opbar {

std::vector<std::shared_ptr<const SemidirectOperad>> bundled_pairs() {
  auto z2 = builtin_group("z2");
  auto z3 = builtin_group("z3");
  auto z4 = builtin_group("z4");
  return {
      make_semidirect(make_com_operad(z2), z2),
      make_semidirect(make_com_operad(z4), z4),
      make_semidirect(make_ass_operad(z3), z3),
      make_semidirect(make_sign_operad(), builtin_group("z2")),
  };
}

namespace {

SuiteResult fail(SuiteResult r, std::string why) {
  r.pass = false;
  r.detail = std::move(why);
  return r;
}

SuiteResult ok(SuiteResult r, const std::string& what) {
  r.pass = true;
  r.detail = std::to_string(r.checked) + " " + what;
  return r;
}

// All canonical stable trees on a label set (at least two labels).
std::vector<TreeBuilder> stable_builders_on(const std::vector<int>& labels) {
  if (labels.size() == 1) return {TreeBuilder::leaf(labels[0])};
  std::vector<TreeBuilder> out;
  // set partitions via restricted growth strings
  int n = static_cast<int>(labels.size());
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      int blocks = maxb + 1;
      if (blocks < 2) return;
      std::vector<std::vector<int>> part(blocks);
      for (int j = 0; j < n; ++j) part[rgs[j]].push_back(labels[j]);
      // cartesian product of the sub-builders per block
      std::vector<std::vector<TreeBuilder>> options;
      for (const auto& block : part) options.push_back(stable_builders_on(block));
      std::vector<int> pick(blocks, 0);
      while (true) {
        TreeBuilder node = TreeBuilder::node({});
        for (int b = 0; b < blocks; ++b) node.children.push_back(options[b][pick[b]]);
        out.push_back(node);
        int c = blocks - 1;
        while (c >= 0 && ++pick[c] == static_cast<int>(options[c].size())) pick[c--] = 0;
        if (c < 0) break;
      }
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  rec(1, 0);  // first label fixed in block 0
  return out;
}

// Every strictly increasing altitude assignment over the /den grid.
void enumerate_weightings(const Tree& t, int den, const std::function<void(const Weighting&)>& f) {
  std::vector<int> alt(t.n_vertices());
  Weighting w;
  std::function<void(int)> rec = [&](int v) {
    if (v == t.n_vertices()) {
      for (int l : t.labels()) w[EdgeId::leaf_edge(l)] = rat(den - alt[t.leaf_parent(l)], den);
      f(w);
      return;
    }
    int lo = (t.parent(v) < 0 ? 0 : alt[t.parent(v)]) + 1;
    for (int a = lo; a <= den - 1; ++a) {
      alt[v] = a;
      w[EdgeId::vertex_edge(v)] = rat(a - (t.parent(v) < 0 ? 0 : alt[t.parent(v)]), den);
      rec(v + 1);
    }
  };
  rec(0);
}

struct Pattern {
  std::vector<int> X, Y, Z;
};

std::vector<Pattern> nested_patterns(int n) {
  std::vector<Pattern> out;
  std::vector<int> assign(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Pattern p;
      for (int j = 0; j < n; ++j)
        (assign[j] == 0 ? p.X : assign[j] == 1 ? p.Y : p.Z).push_back(j + 1);
      if (!p.Z.empty()) out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b < 3; ++b) {
      assign[i] = b;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<Pattern> parallel_patterns(int n) {
  std::vector<Pattern> out;
  for (const Pattern& p : nested_patterns(n))
    if (!p.Y.empty()) out.push_back(p);
  return out;
}

}  // namespace

SuiteResult suite_axioms(std::uint64_t, int) {
  SuiteResult r{"axioms", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    auto bad = check_operad_axioms(*q, 4);
    r.checked += 1;
    if (!bad.empty())
      return fail(r, q->name() + ": " + bad.front() + " (+" + std::to_string(bad.size() - 1) +
                         " more)");
    auto gbad = q->twist_group()->check_axioms();
    if (!gbad.empty()) return fail(r, q->twist_group()->name() + ": " + gbad.front());
  }
  return ok(r, "specs pass the exhaustive axiom check on arities 0..4");
}

SuiteResult suite_retraction(std::uint64_t seed, int count) {
  SuiteResult r{"retraction", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, seed);
    for (int i = 0; i < count; ++i) {
      int n = 2 + gen.u(4);
      EquivariantPoint x = gen.equivariant(n);
      if (!equals(pi(*q, sigma(*q, x)), x))
        return fail(r, q->name() + ": pi(sigma(x)) != x at sample " + std::to_string(i));
      ++r.checked;
    }
  }
  return ok(r, "points satisfy pi after sigma = id exactly");
}

SuiteResult suite_homotopy(std::uint64_t seed, int count) {
  SuiteResult r{"homotopy", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, seed);
    for (int i = 0; i < count; ++i) {
      int n = 2 + gen.u(4);
      BarPoint p = gen.point(n);
      if (!equals(homotopy_h(*q, Rat(0), p), p))
        return fail(r, q->name() + ": H(0,p) != p at sample " + std::to_string(i));
      if (!equals(homotopy_h(*q, Rat(1), p), sigma(*q, pi(*q, p))))
        return fail(r, q->name() + ": H(1,p) != sigma(pi(p)) at sample " + std::to_string(i));
      StableView sv = stable_view(p.tree());
      Weighting sw = stable_weights(p.tree(), sv, p.weights());
      for (int k = 1; k <= 8; ++k) {
        BarPoint hp = homotopy_h(*q, rat(k, 8), p);
        if (hp.is_basepoint())
          return fail(r, q->name() + ": H collapsed a point at s=" + std::to_string(k) + "/8");
        StableView hv = stable_view(hp.tree());
        if (!(hv.stable == sv.stable) ||
            stable_weights(hp.tree(), hv, hp.weights()) != sw)
          return fail(r, q->name() + ": H moved the stable weighted tree at s=" +
                             std::to_string(k) + "/8, sample " + std::to_string(i));
      }
      ++r.checked;
    }
  }
  return ok(r, "points satisfy both homotopy endpoints and tree preservation");
}

SuiteResult suite_morphism(std::uint64_t seed, int count) {
  SuiteResult r{"morphism", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    const Operad& P = *q->base_operad();
    Generator gen(q, seed);
    for (int i = 0; i < count; ++i) {
      int n = 2 + gen.u(3);  // arities 2..4
      EquivariantPoint x = gen.equivariant(n);
      BarPoint sx = sigma(*q, x);
      // every nonempty B, including the full set (the root degrafting)
      for (int mask = 1; mask < (1 << n); ++mask) {
        DecompositionRequest req;
        req.a = n + 1;
        req.A.push_back(n + 1);
        for (int l = 1; l <= n; ++l)
          ((mask >> (l - 1)) & 1 ? req.B : req.A).push_back(l);
        auto [left, right] = decompose(*q, sx, req);
        auto [xl, xr] = decompose_equivariant(P, x, req);
        if (!equals(left, sigma_extended(*q, xl)) || !equals(right, sigma_extended(*q, xr)))
          return fail(r, q->name() + ": degrafting does not commute with sigma at sample " +
                             std::to_string(i));
        ++r.checked;
      }
    }
  }
  return ok(r, "degraftings commute with sigma exactly");
}

SuiteResult suite_coassoc(std::uint64_t seed, int count) {
  SuiteResult r{"coassociativity", false, 0, ""};
  auto z2 = builtin_group("z2");
  auto q = make_semidirect(make_com_operad(z2), z2);
  Generator gen(q, seed);

  auto check_patterns = [&](const BarPoint& p, int n, bool all_patterns) -> bool {
    auto nested = nested_patterns(n);
    auto parallel = parallel_patterns(n);
    auto run_one = [&](const Pattern& pt, bool is_nested) {
      if (is_nested)
        return coassoc_nested(*q, p, pt.X, n + 1, pt.Y, n + 2, pt.Z);
      return coassoc_parallel(*q, p, pt.X, n + 1, pt.Y, n + 2, pt.Z);
    };
    if (all_patterns) {
      for (const auto& pt : nested)
        if (!run_one(pt, true)) return false;
      for (const auto& pt : parallel)
        if (!run_one(pt, false)) return false;
      r.checked += static_cast<long long>(nested.size() + parallel.size());
    } else {
      for (int t = 0; t < 8; ++t) {
        bool use_nested = gen.u(2) == 0;
        const auto& pool = use_nested ? nested : parallel;
        if (!run_one(pool[gen.u(static_cast<int>(pool.size()))], use_nested)) return false;
        ++r.checked;
      }
    }
    return true;
  };

  // Exhaustive over the 4-leaf stable shapes and all /8 weightings, with
  // generator-drawn decorations; one full pattern sweep per shape.
  auto shapes = stable_builders_on({1, 2, 3, 4});
  for (const auto& sb : shapes) {
    Tree t(sb);
    bool first_weighting = true;
    bool good = true;
    enumerate_weightings(t, 8, [&](const Weighting& w) {
      if (!good) return;
      std::vector<Elem> labels;
      for (int v = 0; v < t.n_vertices(); ++v) {
        std::vector<int> gs;
        for (int k = 0; k < t.arity(v); ++k) gs.push_back(gen.u(2));
        labels.push_back(q->make_elem(
            q->base_operad()->find_elem(t.arity(v), "c" + std::to_string(t.arity(v))).value(),
            gs));
      }
      BarPoint p = BarPoint::from_parts(*q, t, w, labels);
      good = check_patterns(p, 4, first_weighting);
      first_weighting = false;
    });
    if (!good) return fail(r, "iterated degrafting orders disagree on shape " + t.str());
  }

  // random 5-leaf cases with chains
  for (int i = 0; i < count; ++i) {
    BarPoint p = gen.point(5);
    if (!check_patterns(p, 5, false))
      return fail(r, "iterated degrafting orders disagree on a 5-leaf sample " +
                         std::to_string(i));
  }
  return ok(r, "iterated degrafting pairs agree");
}

SuiteResult suite_bijection(std::uint64_t seed, int count) {
  SuiteResult r{"marking bijection", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, seed);
    // the basepoint corresponds to the empty marking
    auto [bpsi, bbeta] = marking_bijection_fwd(*q, BarPoint::basepoint(*q, {1, 2}));
    if (!bpsi.is_basepoint() || !bbeta.words.empty())
      return fail(r, q->name() + ": basepoint did not map to the empty marking");
    for (int i = 0; i < count; ++i) {
      int n = 2 + gen.u(4);
      // backward then forward from a random marking
      BarPoint psi = gen.psi_point(n);
      GMarking beta;
      for (EdgeId e : psi.tree().edges())
        beta.words.emplace(e, gen.word(e == psi.tree().root_edge() ? WordVariant::BG
                                                                   : WordVariant::EGt));
      BarPoint glued = marking_bijection_bwd(*q, psi, beta);
      auto [psi2, beta2] = marking_bijection_fwd(*q, glued);
      if (!equals(psi2, psi) || !(beta2 == beta))
        return fail(r, q->name() + ": fwd(bwd) != id at sample " + std::to_string(i));
      // forward then backward from a random point
      BarPoint p = gen.point(n);
      auto [psi3, beta3] = marking_bijection_fwd(*q, p);
      if (!equals(marking_bijection_bwd(*q, psi3, beta3), p))
        return fail(r, q->name() + ": bwd(fwd) != id at sample " + std::to_string(i));
      ++r.checked;
    }
  }
  return ok(r, "marking round trips hold in both directions");
}

SuiteResult suite_arity1(std::uint64_t seed, int count) {
  SuiteResult r{"arity-1 identification", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, seed);
    for (int i = 0, valid = 0; valid < count && i < 4 * count; ++i) {
      RawBarPoint raw = gen.raw_point(1, true);
      BarPoint p = normalize(*q, raw);
      if (p.is_basepoint()) continue;  // a basepoint label; the words never see it
      ++valid;
      // read the raw chain directly as word data and normalize as a word
      std::vector<Rat> ws;
      std::vector<int> gs;
      StableView sv = stable_view(raw.tree);
      for (EdgeId e : sv.branches.front().edges) ws.push_back(raw.weights.at(e));
      for (int uv : sv.branches.front().unary_vertices)
        gs.push_back(q->unary_group_elem(raw.labels[uv]));
      BarWord direct(WordVariant::BG, q->twist_group(), ws, gs);
      if (!(arity1_to_word(*q, p) == direct))
        return fail(r, q->name() + ": normalize-then-identify != identify-then-normalize at " +
                           std::to_string(i));
      if (!equals(word_to_arity1(*q, direct, raw.tree.labels().front()), p))
        return fail(r, q->name() + ": word does not rebuild the chain at " + std::to_string(i));
      ++r.checked;
    }
  }
  return ok(r, "chains and words identify compatibly with normalization");
}

SuiteResult suite_confluence(std::uint64_t seed, int count) {
  SuiteResult r{"confluence", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, seed);
    for (int i = 0; i < count; ++i) {
      int n = 1 + gen.u(5);
      RawBarPoint raw = gen.raw_point(n, true);
      ProbeReport rep = confluence_probe(*q, raw, 5, seed ^ (i * 0x9e3779b97f4a7c15ull));
      if (!rep.pass) return fail(r, q->name() + ": " + rep.detail);
      ++r.checked;
    }
  }
  return ok(r, "raw points normalize identically under shuffled rule orders");
}

std::vector<ProbeReport> continuity_reports(std::uint64_t seed, int k) {
  if (k <= 0) k = 10;
  std::vector<ProbeReport> out;
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, seed);
    for (const ProbeCase& c : continuity_suite(gen)) {
      ProbeReport rep = continuity_probe(*q, c.map, c.path, k);
      rep.name = q->name() + ": " + rep.name;
      out.push_back(std::move(rep));
    }
    // crossing the vertex altitudes from below
    for (int i = 0; i < 5; ++i) {
      BarPoint p = gen.point(3 + gen.u(2));
      StableView sv = stable_view(p.tree());
      Weighting sw = stable_weights(p.tree(), sv, p.weights());
      for (int v = 0; v < sv.stable.n_vertices(); ++v) {
        ProbeReport rep = h_crossing_probe(*q, p, altitude(sv.stable, sw, v), k);
        rep.name = q->name() + ": " + rep.name + " (point " + std::to_string(i) + ")";
        out.push_back(std::move(rep));
      }
    }
    // the gamma lift multiplies to the identity
    {
      ProbeReport rep;
      rep.name = q->name() + ": mu of gamma on random words";
      rep.pass = true;
      int n = 0;
      for (int i = 0; i < 250; ++i) {
        BarWord z = gen.word(WordVariant::EG);
        if (mu(gamma(z)) != gen.grp()->identity()) {
          rep.pass = false;
          rep.detail = "mu(gamma(zeta)) != e at sample " + std::to_string(i);
          break;
        }
        ++n;
      }
      if (rep.pass) rep.detail = std::to_string(n) + " words multiply to the identity";
      out.push_back(std::move(rep));
    }
  }
  return out;
}

SuiteResult suite_continuity(std::uint64_t seed, int k) {
  SuiteResult r{"continuity", false, 0, ""};
  for (const ProbeReport& rep : continuity_reports(seed, k)) {
    if (!rep.pass) return fail(r, rep.name + ": " + rep.detail);
    r.checked += rep.name.find("gamma") != std::string::npos ? 250 : 1;
  }
  return ok(r, "degeneration classes, crossings and gamma products check out");
}

SuiteResult suite_reduced(std::uint64_t seed, int count) {
  SuiteResult r{"reduced membership", false, 0, ""};
  for (const auto& q : bundled_pairs()) {
    for (int n = 2; n <= 4; ++n) {
      ProbeReport rep = reduced_membership_probe(*q, n, count / 3 + 1, seed + n);
      if (!rep.pass) return fail(r, q->name() + ": " + rep.detail);
      r.checked += count / 3 + 1;
    }
  }
  // functor triangles on the reduced bundled specs
  std::vector<OperadPtr> reduced_specs = {make_trivial_operad(), make_com_operad(),
                                          make_ass_operad(), make_sign_operad()};
  for (const auto& p : reduced_specs) {
    if (!operads_agree(*quotient_L(p), *p, 4))
      return fail(r, p->name() + ": left reduction is not the identity");
    if (!operads_agree(*reduce_R(p), *p, 4))
      return fail(r, p->name() + ": right reduction is not the identity");
    if (!operads_agree(*quotient_L(reduce_R(p)), *p, 4) ||
        !operads_agree(*reduce_R(quotient_L(p)), *p, 4))
      return fail(r, p->name() + ": reduction triangles fail");
    ++r.checked;
  }
  return ok(r, "image characterization, degrafting stability and triangles hold");
}

std::vector<SuiteResult> run_acceptance(std::uint64_t seed) {
  return {
      suite_retraction(seed, 500), suite_homotopy(seed, 500),  suite_morphism(seed, 200),
      suite_coassoc(seed, 300),    suite_bijection(seed, 500), suite_arity1(seed, 200),
      suite_axioms(seed, 0),       suite_confluence(seed, 500), suite_continuity(seed, 10),
      suite_reduced(seed, 300),
  };
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count) {
  auto pick = [&](int dflt) { return count >= 0 ? count : dflt; };
  if (name == "axioms") return suite_axioms(seed, 0);
  if (name == "retraction") return suite_retraction(seed, pick(500));
  if (name == "homotopy") return suite_homotopy(seed, pick(500));
  if (name == "morphism") return suite_morphism(seed, pick(200));
  if (name == "coassoc") return suite_coassoc(seed, pick(300));
  if (name == "bijection") return suite_bijection(seed, pick(500));
  if (name == "arity1") return suite_arity1(seed, pick(200));
  if (name == "confluence") return suite_confluence(seed, pick(500));
  if (name == "continuity") return suite_continuity(seed, pick(10));
  if (name == "reduced") return suite_reduced(seed, pick(300));
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace opbar
