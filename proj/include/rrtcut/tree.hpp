#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrtcut/pmf.hpp"
#include "rrtcut/random.hpp"

namespace rrtcut::tree {

/// Largest size accepted by enumerate_all; 9! = 362,880 trees.
inline constexpr std::size_t kEnumerationCap = 10;

/// An increasingly labelled rooted tree on labels 1..n, stored as the
/// parent array (parent(2), ..., parent(n)). Node 1 is the root.
class RecursiveTree {
 public:
  /// Single-node tree.
  RecursiveTree() = default;

  /// Builds a tree from (parent(2), ..., parent(n)); throws
  /// std::invalid_argument if some parent(i) is not in 1..i-1.
  explicit RecursiveTree(std::vector<Label> parents);

  std::size_t size() const noexcept { return parents_.size() + 1; }
  std::size_t edge_count() const noexcept { return parents_.size(); }

  /// Parent of node i, for 2 <= i <= n.
  Label parent(Label i) const { return parents_[i - 2]; }

  /// (parent(2), ..., parent(n)).
  std::span<const Label> parents() const noexcept { return parents_; }

  bool operator==(const RecursiveTree&) const = default;
  auto operator<=>(const RecursiveTree&) const = default;

 private:
  std::vector<Label> parents_;
};

/// Children lists in compressed form; children of a node are ascending.
class ChildIndex {
 public:
  explicit ChildIndex(const RecursiveTree& t);

  std::span<const Label> children(Label v) const {
    return {nodes_.data() + offsets_[v], nodes_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Label> nodes_;
};

/// Checks parent(i) in {1, ..., i-1} for a raw parent list
/// (parent(2), ..., parent(n)). Returns a description of the first violation.
std::optional<std::string> validate(std::span<const Label> parents);

/// Uniform random recursive tree of size n, grown by attaching node i to a
/// uniformly chosen node of {1, ..., i-1}.
RecursiveTree grow_random(std::size_t n, RandomStream& rng);

/// Calls `visit` on every recursive tree of size n, in lexicographic order of
/// the parent vector. Throws BudgetExceeded for n > kEnumerationCap.
void for_each_tree(std::size_t n, const std::function<void(const RecursiveTree&)>& visit);

/// All (n-1)! recursive trees of size n in lexicographic parent order.
std::vector<RecursiveTree> enumerate_all(std::size_t n);

/// Canonical text form "p2,p3,...,pn"; the single-node tree is "".
std::string to_text(const RecursiveTree& t);
RecursiveTree from_text(std::string_view text);

/// Order-preserving relabelling of the subtree spanned by `nodes` (which must
/// be closed under taking parents within the set, apart from its minimum).
RecursiveTree relabel(const RecursiveTree& t, std::span<const Label> nodes);

}  // namespace rrtcut::tree
