#pragma once

#include <cstdint>
#include <vector>

#include "rrtcut/cutter.hpp"
#include "rrtcut/random.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut::cutter {

/// Cut counts on fresh random trees without materializing the forest.
///
/// Each edge gets an i.i.d. 64-bit priority; the process then cuts alive edges
/// in priority order, and an edge is cut iff some target is reachable from its
/// near endpoint through edges of larger priority. Ancestors of the targets are
/// drawn first; every other node is then generated in label order and only
/// needs the largest priority bound inherited from its parent. Memory is one
/// word per node, time is O(n + l * depth).
class StreamingCutter {
 public:
  /// Cut count for a uniform random recursive tree of size n.
  std::uint64_t run(std::size_t n, const LabelSet& targets, RandomStream& rng);

  struct Recorded {
    tree::RecursiveTree tree;
    std::vector<std::uint64_t> priority;  // priority[c - 2] for edge (parent(c), c)
    std::uint64_t cuts = 0;
  };

  /// Same draws as `run`, also returning the generated tree and priorities.
  Recorded run_recorded(std::size_t n, const LabelSet& targets, RandomStream& rng);

 private:
  template <class Sink>
  std::uint64_t run_impl(std::size_t n, const LabelSet& targets, RandomStream& rng, Sink&& sink);

  std::vector<std::uint64_t> bound_;
};

}  // namespace rrtcut::cutter
