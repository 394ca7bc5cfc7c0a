#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opbar {

/// Finite group given by explicit tables. Elements are dense indices
/// 0..order-1; names are carried for IO. Immutable once built.
class Group {
 public:
  Group(std::string name, std::vector<std::string> elem_names,
        std::vector<std::vector<int>> mult_table);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(names_.size()); }
  int identity() const { return e_; }
  int mult(int a, int b) const { return mult_.at(a).at(b); }
  int inverse(int a) const { return inv_.at(a); }
  bool is_identity(int a) const { return a == e_; }

  const std::string& elem_name(int a) const { return names_.at(a); }
  std::optional<int> find(const std::string& n) const;

  /// Every axiom violation found by exhaustive table checking; empty means
  /// the tables really define a group.
  std::vector<std::string> check_axioms() const;

  static Group trivial();
  static Group cyclic(int k);    // Z/k, elements "0".."k-1"
  static Group symmetric3();     // S3, the smallest nonabelian test group

  bool operator==(const Group& o) const {
    return names_ == o.names_ && mult_ == o.mult_;
  }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  int e_ = -1;
};

using GroupPtr = std::shared_ptr<const Group>;

}  // namespace opbar
