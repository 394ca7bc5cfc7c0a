#include "opbar/barword.hpp"

#include <stdexcept>

namespace opbar {

std::string variant_name(WordVariant v) {
  switch (v) {
    case WordVariant::BG: return "BG";
    case WordVariant::EG: return "EG";
    case WordVariant::EGt: return "EGt";
    case WordVariant::BGGG: return "BGGG";
  }
  return "?";
}

bool BarWord::has_left() const {
  return variant_ == WordVariant::EGt || variant_ == WordVariant::BGGG;
}
bool BarWord::has_right() const {
  return variant_ == WordVariant::EG || variant_ == WordVariant::BGGG;
}
int BarWord::left_module() const {
  if (!has_left()) throw std::logic_error("word has no left module");
  return left_;
}
int BarWord::right_module() const {
  if (!has_right()) throw std::logic_error("word has no right module");
  return right_;
}

BarWord::BarWord(WordVariant variant, GroupPtr g, std::vector<Rat> weights,
                 std::vector<int> labels, int left_module, int right_module)
    : variant_(variant), g_(std::move(g)), weights_(std::move(weights)),
      labels_(std::move(labels)), left_(left_module), right_(right_module) {
  if (!g_) throw std::invalid_argument("word needs a group");
  if (weights_.size() != labels_.size() + 1)
    throw std::invalid_argument("need k+1 weights for k labels");
  if (has_left() && (left_ < 0 || left_ >= g_->order()))
    throw std::invalid_argument("missing or unknown left module");
  if (has_right() && (right_ < 0 || right_ >= g_->order()))
    throw std::invalid_argument("missing or unknown right module");
  if (!has_left()) left_ = -1;
  if (!has_right()) right_ = -1;
  Rat sum(0);
  for (const Rat& t : weights_) {
    if (!in_unit_interval(t)) throw std::invalid_argument("word weight outside [0,1]");
    sum += t;
  }
  if (sum != Rat(1)) throw std::invalid_argument("word weights must sum to 1");
  for (int l : labels_)
    if (l < 0 || l >= g_->order()) throw std::invalid_argument("unknown label");
  normalize();
}

BarWord BarWord::trivial(WordVariant variant, GroupPtr g) {
  int e = g->identity();
  bool l = variant == WordVariant::EGt || variant == WordVariant::BGGG;
  bool r = variant == WordVariant::EG || variant == WordVariant::BGGG;
  return BarWord(variant, std::move(g), {Rat(1)}, {}, l ? e : -1, r ? e : -1);
}

void BarWord::normalize() {
  const Group& G = *g_;
  bool changed = true;
  while (changed) {
    changed = false;
    // identity labels: merge the adjacent weights
    for (int i = 0; i < k(); ++i)
      if (G.is_identity(labels_[i])) {
        weights_[i] += weights_[i + 1];
        weights_.erase(weights_.begin() + i + 1);
        labels_.erase(labels_.begin() + i);
        changed = true;
        break;
      }
    if (changed) continue;
    // zero interior weight: compose across it
    for (int i = 1; i + 1 <= k(); ++i)
      if (is_zero(weights_[i])) {
        labels_[i - 1] = G.mult(labels_[i - 1], labels_[i]);
        labels_.erase(labels_.begin() + i);
        weights_.erase(weights_.begin() + i);
        changed = true;
        break;
      }
    if (changed) continue;
    // zero left end: a module absorbs the label, a bare end drops it
    if (k() >= 1 && is_zero(weights_.front())) {
      if (has_left()) left_ = G.mult(left_, labels_.front());
      weights_.erase(weights_.begin());
      labels_.erase(labels_.begin());
      changed = true;
      continue;
    }
    // zero right end
    if (k() >= 1 && is_zero(weights_.back())) {
      if (has_right()) right_ = G.mult(labels_.back(), right_);
      weights_.pop_back();
      labels_.pop_back();
      changed = true;
      continue;
    }
  }
}

bool BarWord::operator==(const BarWord& o) const {
  return variant_ == o.variant_ && weights_ == o.weights_ && labels_ == o.labels_ &&
         left_ == o.left_ && right_ == o.right_ && g_->order() == o.g_->order();
}

std::string BarWord::str() const {
  std::string s = variant_name(variant_) + "[";
  if (has_left()) s += g_->elem_name(left_) + "|";
  for (int i = 0; i <= k(); ++i) {
    if (i) s += " " + g_->elem_name(labels_[i - 1]) + " ";
    s += rat_to_string(weights_[i]);
  }
  if (has_right()) s += "|" + g_->elem_name(right_);
  return s + "]";
}

BarWord normalize_word(WordVariant variant, GroupPtr g, std::vector<Rat> weights,
                       std::vector<int> labels, int left_module, int right_module) {
  return BarWord(variant, std::move(g), std::move(weights), std::move(labels), left_module,
                 right_module);
}

int mu(const BarWord& w) {
  if (w.variant() != WordVariant::BGGG) throw std::invalid_argument("mu needs a BGGG word");
  const Group& G = w.group();
  int p = w.left_module();
  for (int l : w.labels()) p = G.mult(p, l);
  return G.mult(p, w.right_module());
}

BarWord gamma(const BarWord& zeta) {
  if (zeta.variant() != WordVariant::EG) throw std::invalid_argument("gamma needs an EG word");
  const Group& G = zeta.group();
  int p = G.identity();
  for (int l : zeta.labels()) p = G.mult(p, l);
  p = G.mult(p, zeta.right_module());
  return BarWord(WordVariant::BGGG, zeta.group_ptr(), zeta.weights(), zeta.labels(),
                 G.inverse(p), zeta.right_module());
}

BarWord pr_r(const BarWord& w) {
  if (w.variant() != WordVariant::BGGG) throw std::invalid_argument("pr_r needs a BGGG word");
  return BarWord(WordVariant::EGt, w.group_ptr(), w.weights(), w.labels(), w.left_module());
}

BarWord pr_root(const BarWord& w) {
  if (w.variant() != WordVariant::EG) throw std::invalid_argument("pr_root needs an EG word");
  return BarWord(WordVariant::BG, w.group_ptr(), w.weights(), w.labels());
}

BarWord beta_e(const BarWord& w) {
  int e = w.group().identity();
  if (w.variant() == WordVariant::BG)
    return BarWord(WordVariant::EG, w.group_ptr(), w.weights(), w.labels(), -1, e);
  if (w.variant() == WordVariant::EGt)
    return BarWord(WordVariant::BGGG, w.group_ptr(), w.weights(), w.labels(), w.left_module(), e);
  throw std::invalid_argument("beta_e lifts BG or EGt words");
}

BarWord act_right(const BarWord& w, int g) {
  if (!w.has_right()) throw std::invalid_argument("word has no right module");
  return BarWord(w.variant(), w.group_ptr(), w.weights(), w.labels(),
                 w.has_left() ? w.left_module() : -1, w.group().mult(w.right_module(), g));
}

BarWord act_left(int g, const BarWord& w) {
  if (!w.has_left()) throw std::invalid_argument("word has no left module");
  return BarWord(w.variant(), w.group_ptr(), w.weights(), w.labels(),
                 w.group().mult(g, w.left_module()),
                 w.has_right() ? w.right_module() : -1);
}

BarWord graft_scale(const BarWord& left, const BarWord& right, const Rat& u) {
  if (!in_unit_interval(u)) throw std::invalid_argument("graft parameter outside [0,1]");
  if (!left.has_right() || !right.has_left())
    throw std::invalid_argument("graft_scale needs a right module on the left word and a left "
                                "module on the right word");
  if (left.group().order() != right.group().order())
    throw std::invalid_argument("graft_scale: group mismatch");
  const Group& G = left.group();

  std::vector<Rat> weights;
  std::vector<int> labels;
  for (const Rat& t : left.weights()) weights.push_back(u * t);
  for (int l : left.labels()) labels.push_back(l);
  labels.push_back(G.mult(left.right_module(), right.left_module()));
  for (const Rat& t : right.weights()) weights.push_back((Rat(1) - u) * t);
  for (int l : right.labels()) labels.push_back(l);
  WordVariant v;
  if (left.has_left()) v = right.has_right() ? WordVariant::BGGG : WordVariant::EGt;
  else v = right.has_right() ? WordVariant::EG : WordVariant::BG;
  return BarWord(v, left.group_ptr(), std::move(weights), std::move(labels),
                 left.has_left() ? left.left_module() : -1,
                 right.has_right() ? right.right_module() : -1);
}

}  // namespace opbar
