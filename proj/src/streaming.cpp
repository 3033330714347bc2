#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <stdexcept>

#include "rrtcut/streaming.hpp"

namespace rrtcut::cutter {

namespace {

constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();

struct Spine {
  Label label;
  Label parent;
  std::uint64_t priority;
  std::uint64_t bound;  // max over targets of the smallest priority on the path
  bool cut;
};

}  // namespace

template <class Sink>
std::uint64_t StreamingCutter::run_impl(std::size_t n, const LabelSet& targets, RandomStream& rng,
                                        Sink&& sink) {
  if (n == 0) throw std::invalid_argument("tree size must be positive");
  if (targets.universe() != n) throw std::invalid_argument("label set does not match tree size");

  // Union of the targets' ancestor lines, drawn top-down per target.
  std::map<Label, Label> parent_of{{1, 0}};
  for (Label target : targets.labels()) {
    for (Label x = target; !parent_of.contains(x);) {
      const Label p = uniform_int<Label>(rng, 1, x - 1);
      parent_of.emplace(x, p);
      x = p;
    }
  }
  std::vector<Spine> spine;
  spine.reserve(parent_of.size());
  std::map<Label, std::size_t> at;  // spine position of a label
  for (auto [v, p] : parent_of) {
    at.emplace(v, spine.size());
    spine.push_back({v, p, v == 1 ? kInf : rng(), 0, false});
  }

  // Bottleneck values on the spine, where "no target reachable" is 0 (no
  // priority is below 0, so it never triggers a cut). down: best target inside
  // the subtree; outside: best target reachable from the parent avoiding the
  // subtree.
  const std::size_t k = spine.size();
  std::vector<std::size_t> parent_at(k, 0);
  std::vector<std::uint64_t> down(k, 0), outside(k, 0), up(k, 0);
  for (std::size_t i = 1; i < k; ++i) parent_at[i] = at.at(spine[i].parent);
  for (std::size_t i = 0; i < k; ++i)
    if (targets.contains(spine[i].label)) down[i] = kInf;
  // Best and second best child contributions, for excluding one child.
  std::vector<std::uint64_t> best1(k, 0), best2(k, 0);
  for (std::size_t i = k; i-- > 1;) {
    const std::size_t p = parent_at[i];
    const std::uint64_t via = std::min(spine[i].priority, down[i]);
    down[p] = std::max(down[p], via);
    if (via > best1[p]) {
      best2[p] = best1[p];
      best1[p] = via;
    } else {
      best2[p] = std::max(best2[p], via);
    }
  }
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t p = parent_at[i];
    const std::uint64_t via = std::min(spine[i].priority, down[i]);
    const std::uint64_t sibling = via == best1[p] ? best2[p] : best1[p];
    const std::uint64_t self = targets.contains(spine[p].label) ? kInf : 0;
    outside[i] = std::max({self, up[p], sibling});
    up[i] = std::min(spine[i].priority, outside[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    spine[i].bound = std::max(down[i], up[i]);
    if (i > 0) spine[i].cut = spine[i].priority < std::max(down[i], outside[i]);
  }

  bound_.resize(n + 1);
  bound_[1] = spine.front().bound;
  std::uint64_t cuts = 0;
  std::size_t next = 1;
  // Draws are made a block ahead, in the same order, so the parents' bounds
  // can be prefetched; they are read only once the block is processed.
  constexpr Label kBlock = 64;
  std::array<Label, kBlock> parents{};
  std::array<std::uint64_t, kBlock> keys{};
  for (Label start = 2; start <= n; start += kBlock) {
    const Label stop = static_cast<Label>(std::min<std::size_t>(n + 1, std::size_t{start} + kBlock));
    std::size_t peek = next;
    for (Label c = start; c < stop; ++c) {
      if (peek < spine.size() && spine[peek].label == c) {
        ++peek;
        continue;
      }
      const Label p = uniform_int<Label>(rng, 1, c - 1);
      parents[c - start] = p;
      keys[c - start] = rng();
      __builtin_prefetch(&bound_[p]);
    }
    for (Label c = start; c < stop; ++c) {
      if (next < spine.size() && spine[next].label == c) {
        const auto& s = spine[next++];
        bound_[c] = s.bound;
        cuts += s.cut;
        sink(c, s.parent, s.priority);
        continue;
      }
      const Label p = parents[c - start];
      const std::uint64_t key = keys[c - start];
      const std::uint64_t inherited = bound_[p];
      cuts += key < inherited;
      bound_[c] = std::min(key, inherited);
      sink(c, p, key);
    }
  }
  return cuts;
}

std::uint64_t StreamingCutter::run(std::size_t n, const LabelSet& targets, RandomStream& rng) {
  return run_impl(n, targets, rng, [](Label, Label, std::uint64_t) {});
}

StreamingCutter::Recorded StreamingCutter::run_recorded(std::size_t n, const LabelSet& targets,
                                                        RandomStream& rng) {
  std::vector<Label> parents(n > 0 ? n - 1 : 0);
  std::vector<std::uint64_t> priority(parents.size());
  const auto cuts = run_impl(n, targets, rng, [&](Label c, Label p, std::uint64_t key) {
    parents[c - 2] = p;
    priority[c - 2] = key;
  });
  return {tree::RecursiveTree(std::move(parents)), std::move(priority), cuts};
}

}  // namespace rrtcut::cutter
