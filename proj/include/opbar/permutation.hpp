#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace opbar {

/// Permutation of {1..n}, stored as the image sequence: img_[k-1] is where
/// input k goes. Composition is (a*b)(k) = a(b(k)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
      if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
        throw std::invalid_argument("not a permutation");
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int k) const { return img_.at(k - 1); }

  Permutation inverse() const {
    std::vector<int> img(img_.size());
    for (int k = 1; k <= degree(); ++k) img[(*this)(k)-1] = k;
    return Permutation(std::move(img));
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
    std::vector<int> img(a.degree());
    for (int k = 1; k <= a.degree(); ++k) img[k - 1] = a(b(k));
    return Permutation(std::move(img));
  }

  bool operator==(const Permutation& o) const = default;

  const std::vector<int>& images() const { return img_; }

  /// All of S_n in lexicographic image order. Only used for small n.
  static std::vector<Permutation> all(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::vector<Permutation> out;
    do out.push_back(Permutation(img));
    while (std::next_permutation(img.begin(), img.end()));
    return out;
  }

 private:
  std::vector<int> img_;
};

/// The permutation of {1..n+m-1} induced on x∘_i y when x is relabeled by
/// sigma (degree n) and y by tau (degree m): inputs of y occupy the block at
/// position sigma(i), inputs of x move around it order-preservingly.
inline Permutation block_perm(const Permutation& sigma, int i, const Permutation& tau) {
  const int n = sigma.degree(), m = tau.degree();
  if (i < 1 || i > n) throw std::invalid_argument("slot out of range");
  std::vector<int> img(n + m - 1);
  auto out_label = [&](int x_target) {
    return x_target < sigma(i) ? x_target : x_target + m - 1;
  };
  for (int k = 1; k <= n + m - 1; ++k) {
    if (k < i) img[k - 1] = out_label(sigma(k));
    else if (k <= i + m - 1) img[k - 1] = sigma(i) + tau(k - i + 1) - 1;
    else img[k - 1] = out_label(sigma(k - m + 1));
  }
  return Permutation(std::move(img));
}

}  // namespace opbar
