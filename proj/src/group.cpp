#include "opbar/group.hpp"

#include <set>

namespace opbar {

Group::Group(std::string name, std::vector<std::string> elem_names,
             std::vector<std::vector<int>> mult_table)
    : name_(std::move(name)), names_(std::move(elem_names)), mult_(std::move(mult_table)) {
  const int n = order();
  if (n == 0) throw std::invalid_argument("group must be nonempty");
  if (static_cast<int>(mult_.size()) != n)
    throw std::invalid_argument("mult table has wrong number of rows");
  for (const auto& row : mult_) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("mult table row has wrong length");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("mult table entry out of range");
  }
  std::set<std::string> uniq(names_.begin(), names_.end());
  if (static_cast<int>(uniq.size()) != n)
    throw std::invalid_argument("duplicate element names");

  // Locate the two-sided identity; its existence is a schema requirement,
  // the remaining axioms are reported by check_axioms.
  e_ = -1;
  for (int a = 0; a < n; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && mult(a, b) == b && mult(b, a) == b;
    if (ok) { e_ = a; break; }
  }
  if (e_ < 0) throw std::invalid_argument("no identity element in mult table");

  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mult(a, b) == e_ && mult(b, a) == e_) inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv_[a] < 0) throw std::invalid_argument("element without inverse: " + names_[a]);
}

std::optional<int> Group::find(const std::string& n) const {
  for (int a = 0; a < order(); ++a)
    if (names_[a] == n) return a;
  return std::nullopt;
}

std::vector<std::string> Group::check_axioms() const {
  std::vector<std::string> bad;
  const int n = order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          bad.push_back("associativity fails at (" + names_[a] + "," + names_[b] + "," +
                        names_[c] + ")");
  return bad;
}

Group Group::trivial() { return Group("trivial", {"e"}, {{0}}); }

Group Group::cyclic(int k) {
  if (k < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> mult(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < k; ++b) mult[a][b] = (a + b) % k;
  }
  return Group("z" + std::to_string(k), std::move(names), std::move(mult));
}

Group Group::symmetric3() {
  // Elements as permutations of {0,1,2} in one-line notation.
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  const char* names[6] = {"e", "r", "rr", "s", "rs", "rrs"};
  std::vector<std::vector<int>> mult(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int comp[3];
      for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
      for (int c = 0; c < 6; ++c)
        if (comp[0] == perms[c][0] && comp[1] == perms[c][1] && comp[2] == perms[c][2])
          mult[a][b] = c;
    }
  return Group("s3", std::vector<std::string>(names, names + 6), std::move(mult));
}

}  // namespace opbar
