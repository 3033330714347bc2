#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "rrtcut/pmf.hpp"
#include "rrtcut/random.hpp"
#include "rrtcut/rational.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut::cutter {

/// Largest tree size accepted by exact_pmf_for_tree.
inline constexpr std::size_t kOracleCap = 9;

/// Strictly increasing, non-empty set of target labels drawn from 1..n.
class LabelSet {
 public:
  /// Sorts `labels`; throws std::invalid_argument on an empty set, a
  /// duplicate, or a label outside 1..n.
  LabelSet(std::vector<Label> labels, std::size_t n);

  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t universe() const noexcept { return n_; }
  bool contains(Label v) const;

  bool operator==(const LabelSet&) const = default;

 private:
  std::vector<Label> labels_;
  std::size_t n_;
};

/// Deterministic labels for first/last, a uniform l-subset for random.
LabelSet select_labels(Rule rule, std::size_t n, std::size_t ell, RandomStream& rng);

/// A kept component: its root followed by the remaining labels ascending.
struct Component {
  Label root = 0;
  std::vector<Label> labels;

  bool operator==(const Component&) const = default;
};

/// Forest state of the edge-removal process on one tree.
///
/// An edge is identified by its child endpoint c, i.e. (parent(c), c). Every
/// component holds at least one target; parts without targets are dropped as
/// soon as a cut creates them.
class Forest {
 public:
  Forest(const tree::RecursiveTree& t, const LabelSet& targets);

  std::size_t node_count() const noexcept { return state_.size() - 1; }
  std::size_t alive_edge_count() const noexcept { return alive_.size(); }
  bool isolated() const noexcept { return alive_.empty(); }

  /// Child endpoint of the i-th alive edge (i < alive_edge_count()).
  Label alive_edge(std::size_t i) const { return alive_[i]; }
  bool has_edge(Label child) const;
  bool has_edge(Label u, Label v) const;
  bool is_target(Label v) const { return shape_->is_target[v] != 0; }
  Label parent(Label child) const { return shape_->tree.parent(child); }

  struct CutResult {
    Label root_side = 0;   // root of B' (the part holding the old component root)
    Label child_side = 0;  // root of B''
    bool kept_root_side = false;
    bool kept_child_side = false;
  };

  /// Removes edge (parent(child), child) and drops any part without targets.
  /// Throws std::invalid_argument if that edge is not in the forest.
  CutResult cut(Label child);

  std::vector<Component> components() const;
  Component component(Label root) const;

 private:
  enum class EdgeState : std::uint8_t { alive, cut, discarded };

  struct Shape {
    tree::RecursiveTree tree;
    tree::ChildIndex children;
    std::vector<std::uint8_t> is_target;
  };

  Label component_root(Label v) const;
  void discard_from(Label root);
  void remove_alive(Label child);

  std::shared_ptr<const Shape> shape_;
  std::vector<EdgeState> state_;             // indexed by child label; [0], [1] unused
  std::vector<std::uint8_t> present_;        // node still in some component
  std::vector<std::uint32_t> targets_below_; // targets in v's subtree within its component
  std::vector<Label> alive_;
  std::vector<std::uint32_t> slot_;
};

/// Applies one cut to a copy of `f`. The edge may be given in either order.
Forest cut_step(Forest f, std::pair<Label, Label> edge);

struct TraceStep {
  Label parent = 0;
  Label child = 0;
  std::vector<std::vector<Label>> kept;  // each kept part as (root, labels...)
};

struct CutRecord {
  std::uint64_t cuts = 0;
  std::vector<TraceStep> trace;
};

/// Runs the edge-removal process to completion, choosing each cut uniformly
/// among all edges of the current forest.
CutRecord isolate(const tree::RecursiveTree& t, const LabelSet& targets, RandomStream& rng,
                  bool want_trace = false);

/// Runs the process choosing, at every step, the alive edge with the smallest
/// priority (`priority[c - 2]` for edge (parent(c), c)). With i.i.d. uniform
/// priorities this is the same law as `isolate`.
std::uint64_t isolate_by_priority(const tree::RecursiveTree& t, const LabelSet& targets,
                                  std::span<const std::uint64_t> priority);

/// Cut count implied by edge priorities without simulating the forest: edge e
/// is cut iff some target is joined to e by a path whose edges all have larger
/// priority than e.
std::uint64_t count_cuts_by_priority(const tree::RecursiveTree& t, const LabelSet& targets,
                                     std::span<const std::uint64_t> priority);

/// Exact law of the cut count for this tree and this label set, by recursion
/// over uniform edge choices memoized on forest states. Throws BudgetExceeded
/// for trees larger than kOracleCap.
Pmf<Rational> exact_pmf_for_tree(const tree::RecursiveTree& t, const LabelSet& targets);

}  // namespace rrtcut::cutter
