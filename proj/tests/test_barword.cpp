#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/barword.hpp"
#include "opbar/operad.hpp"

#include <random>
#include <set>
#include <tuple>

using namespace opbar;

namespace {

// Independent oracle: a raw word state plus an exhaustive search over every
// maximal rewrite sequence. Normal forms collected this way are compared
// against what BarWord produces.
struct RawWord {
  std::vector<Rat> w;
  std::vector<int> l;
  int left = -1, right = -1;
  bool operator<(const RawWord& o) const {
    return std::tie(w, l, left, right) < std::tie(o.w, o.l, o.left, o.right);
  }
  bool operator==(const RawWord& o) const = default;
};

void all_normal_forms(const Group& G, RawWord r, std::set<RawWord>& out) {
  std::vector<RawWord> nexts;
  int k = static_cast<int>(r.l.size());
  for (int i = 0; i < k; ++i)
    if (G.is_identity(r.l[i])) {
      RawWord n = r;
      n.w[i] += n.w[i + 1];
      n.w.erase(n.w.begin() + i + 1);
      n.l.erase(n.l.begin() + i);
      nexts.push_back(n);
    }
  for (int i = 1; i + 1 <= k; ++i)
    if (is_zero(r.w[i])) {
      RawWord n = r;
      n.l[i - 1] = G.mult(n.l[i - 1], n.l[i]);
      n.l.erase(n.l.begin() + i);
      n.w.erase(n.w.begin() + i);
      nexts.push_back(n);
    }
  if (k >= 1 && is_zero(r.w.front())) {
    RawWord n = r;
    if (n.left >= 0) n.left = G.mult(n.left, n.l.front());
    n.w.erase(n.w.begin());
    n.l.erase(n.l.begin());
    nexts.push_back(n);
  }
  if (k >= 1 && is_zero(r.w.back())) {
    RawWord n = r;
    if (n.right >= 0) n.right = G.mult(n.l.back(), n.right);
    n.w.pop_back();
    n.l.pop_back();
    nexts.push_back(n);
  }
  if (nexts.empty()) {
    out.insert(r);
    return;
  }
  for (auto& n : nexts) all_normal_forms(G, std::move(n), out);
}

BarWord wrap(WordVariant v, GroupPtr g, const RawWord& r) {
  return normalize_word(v, g, r.w, r.l, r.left, r.right);
}

}  // namespace

TEST_CASE("normalization drops identities and end faces") {
  auto z2 = builtin_group("z2");
  // (1/3, e, 2/3) in BG collapses to the empty word.
  BarWord w1 = normalize_word(WordVariant::BG, z2, {rat(1, 3), rat(2, 3)}, {0});
  CHECK(w1.k() == 0);
  CHECK(w1.weights() == std::vector<Rat>{Rat(1)});

  // (0, g, 1) in BG: the end face drops g.
  BarWord w2 = normalize_word(WordVariant::BG, z2, {rat(0), rat(1)}, {1});
  CHECK(w2 == BarWord::trivial(WordVariant::BG, z2));

  // (0, g, 1) in EGt with left module m multiplies g into the module.
  auto z4 = builtin_group("z4");
  BarWord w3 = normalize_word(WordVariant::EGt, z4, {rat(0), rat(1)}, {1}, 2);
  CHECK(w3.k() == 0);
  CHECK(w3.left_module() == 3);  // 2 + 1 in z4

  CHECK_THROWS(normalize_word(WordVariant::BG, z2, {rat(1, 2), rat(1, 3)}, {1}));  // bad sum
  CHECK_THROWS(normalize_word(WordVariant::EG, z2, {rat(1)}, {}));  // missing module
}

TEST_CASE("word rewriting is confluent and matches the exhaustive oracle") {
  auto z4 = builtin_group("z4");
  std::mt19937_64 rng(7);
  auto pick = [&](int m) { return static_cast<int>(rng() % m); };
  for (int variant = 0; variant < 4; ++variant) {
    WordVariant v = static_cast<WordVariant>(variant);
    bool hl = v == WordVariant::EGt || v == WordVariant::BGGG;
    bool hr = v == WordVariant::EG || v == WordVariant::BGGG;
    for (int trial = 0; trial < 300; ++trial) {
      int k = pick(4);
      RawWord r;
      r.left = hl ? pick(4) : -1;
      r.right = hr ? pick(4) : -1;
      for (int i = 0; i < k; ++i) r.l.push_back(pick(4));
      // weights with a deliberate bias toward zeros, kept summing to 1
      int slots = k + 1;
      std::vector<int> parts(slots, 0);
      for (int u = 0; u < 8; ++u) parts[pick(slots)] += 1;
      for (int i = 0; i < slots; ++i) r.w.push_back(rat(parts[i], 8));
      std::set<RawWord> forms;
      all_normal_forms(*z4, r, forms);
      REQUIRE(forms.size() == 1);  // confluence of the word rewriting
      BarWord got = wrap(v, z4, r);
      const RawWord& nf = *forms.begin();
      CHECK(got.weights() == nf.w);
      CHECK(got.labels() == nf.l);
      if (hl) CHECK(got.left_module() == nf.left);
      if (hr) CHECK(got.right_module() == nf.right);
      // idempotence
      CHECK(wrap(v, z4, RawWord{got.weights(), got.labels(), nf.left, nf.right}) == got);
    }
  }
}

TEST_CASE("mu multiplies through and survives normalization") {
  auto z4 = builtin_group("z4");
  BarWord w(WordVariant::BGGG, z4, {rat(1, 2), rat(1, 2)}, {3}, 1, 2);
  CHECK(mu(w) == (1 + 3 + 2) % 4);
  BarWord no_labels(WordVariant::BGGG, z4, {rat(1)}, {}, 1, 2);
  CHECK(mu(no_labels) == 3);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto pick = [&](int m) { return static_cast<int>(rng() % m); };
    int k = pick(4);
    std::vector<int> l;
    for (int i = 0; i < k; ++i) l.push_back(pick(4));
    std::vector<int> parts(k + 1, 0);
    for (int u = 0; u < 6; ++u) parts[pick(k + 1)] += 1;
    std::vector<Rat> w2;
    for (int i = 0; i <= k; ++i) w2.push_back(rat(parts[i], 6));
    int raw_mu = pick(4);
    // compute mu on the raw data first
    int m = raw_mu;
    for (int x : l) m = z4->mult(m, x);
    int rmod = pick(4);
    m = z4->mult(m, rmod);
    BarWord word = normalize_word(WordVariant::BGGG, z4, w2, l, raw_mu, rmod);
    CHECK(mu(word) == m);
  }
}

TEST_CASE("gamma forces mu to the identity") {
  auto z4 = builtin_group("z4");
  CHECK(gamma(BarWord::trivial(WordVariant::EG, z4)).left_module() == 0);
  // (1/2, g, 1/2) with right module e over z4, g of order 4
  BarWord zeta(WordVariant::EG, z4, {rat(1, 2), rat(1, 2)}, {1}, -1, 0);
  BarWord g = gamma(zeta);
  CHECK(g.left_module() == 3);  // the inverse of the product
  CHECK(mu(g) == 0);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto pick = [&](int m) { return static_cast<int>(rng() % m); };
    int k = pick(3);
    std::vector<int> l;
    for (int i = 0; i < k; ++i) l.push_back(1 + pick(3));  // avoid identity labels
    std::vector<Rat> w;
    for (int i = 0; i <= k; ++i) w.push_back(rat(1, k + 1));
    BarWord z(WordVariant::EG, z4, w, l, -1, pick(4));
    CHECK(mu(gamma(z)) == 0);
  }
}

TEST_CASE("projections and lifts") {
  auto z4 = builtin_group("z4");
  BarWord zeta(WordVariant::EG, z4, {rat(1, 2), rat(1, 2)}, {1}, -1, 0);
  CHECK(pr_root(zeta) == BarWord(WordVariant::BG, z4, {rat(1, 2), rat(1, 2)}, {1}));
  CHECK(beta_e(pr_root(zeta)) == zeta);

  BarWord egt(WordVariant::EGt, z4, {rat(1, 2), rat(1, 2)}, {1}, 2);
  BarWord lifted = beta_e(egt);
  CHECK(lifted.variant() == WordVariant::BGGG);
  CHECK(lifted.right_module() == 0);
  CHECK(mu(lifted) == z4->mult(2, 1));
  CHECK(pr_r(lifted) == egt);
}

TEST_CASE("module actions are free") {
  auto z3 = builtin_group("z3");
  BarWord w(WordVariant::EG, z3, {rat(1, 2), rat(1, 2)}, {1}, -1, 2);
  CHECK(act_right(w, 0) == w);
  CHECK(act_right(w, 1).right_module() == 0);
  // freeness over all words with at most 2 labels
  std::vector<BarWord> corpus;
  for (int a = 0; a < 3; ++a) {
    corpus.push_back(BarWord(WordVariant::EG, z3, {Rat(1)}, {}, -1, a));
    for (int l1 = 1; l1 < 3; ++l1) {
      corpus.push_back(BarWord(WordVariant::EG, z3, {rat(1, 2), rat(1, 2)}, {l1}, -1, a));
      for (int l2 = 1; l2 < 3; ++l2)
        corpus.push_back(
            BarWord(WordVariant::EG, z3, {rat(1, 3), rat(1, 3), rat(1, 3)}, {l1, l2}, -1, a));
    }
  }
  for (const auto& w2 : corpus)
    for (int g = 1; g < 3; ++g) CHECK(!(act_right(w2, g) == w2));
  // the quotient to BG forgets the action
  for (const auto& w2 : corpus)
    for (int g = 0; g < 3; ++g) CHECK(pr_root(act_right(w2, g)) == pr_root(w2));
}

TEST_CASE("graft_scale endpoints") {
  auto z4 = builtin_group("z4");
  BarWord zeta(WordVariant::EG, z4, {rat(1, 2), rat(1, 2)}, {1}, -1, 0);
  BarWord g = gamma(zeta);  // BGGG, mu = e
  BarWord branch(WordVariant::BGGG, z4, {rat(1, 4), rat(3, 4)}, {2}, 3, 0);

  // u = 0: the left word's mu lands in the right word's left module; for a
  // gamma word that is the identity, so the branch word comes back intact.
  CHECK(graft_scale(g, branch, rat(0)) == branch);

  // u = 1: the right word's mu multiplies into the left word's right module.
  BarWord at1 = graft_scale(g, branch, rat(1));
  int expected = z4->mult(0, mu(branch));
  CHECK(at1.weights() == g.weights());
  CHECK(at1.labels() == g.labels());
  CHECK(at1.left_module() == g.left_module());
  CHECK(at1.right_module() == expected);

  // strictly between: weights scale linearly, nothing else moves
  BarWord mid = graft_scale(g, branch, rat(1, 2));
  CHECK(mid.k() == g.k() + 1 + branch.k());
  Rat total(0);
  for (const Rat& t : mid.weights()) total += t;
  CHECK(total == Rat(1));

  // weight-linearity between two interior parameters
  BarWord a = graft_scale(g, branch, rat(1, 4));
  BarWord b = graft_scale(g, branch, rat(3, 4));
  REQUIRE(a.k() == b.k());
  for (int i = 0; i <= a.k(); ++i) {
    // affine in u: w(u) = c0 + c1 u, so w(1/2) = (w(1/4)+w(3/4))/2
    CHECK(mid.weights()[i] == (a.weights()[i] + b.weights()[i]) / Rat(2));
  }
}

TEST_CASE("graft_scale contracts like the appendix homotopy") {
  // Contracting EG to a point: graft the target beyond the right module.
  auto z4 = builtin_group("z4");
  BarWord p(WordVariant::EG, z4, {rat(1, 3), rat(2, 3)}, {2}, -1, 1);
  BarWord target = BarWord::trivial(WordVariant::BGGG, z4);
  // s = 1 collapses p entirely: everything falls off the bare left end.
  BarWord end = graft_scale(p, target, rat(0));
  CHECK(end == BarWord::trivial(WordVariant::EG, z4));
  // s = 0 leaves p intact (the grafted point has weight zero).
  BarWord start = graft_scale(p, target, rat(1));
  CHECK(start.weights() == p.weights());
  CHECK(start.labels() == p.labels());
  CHECK(start.right_module() == z4->mult(p.right_module(), 0));
}
