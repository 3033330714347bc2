#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "rrtcut/cutter.hpp"
#include "rrtcut/errors.hpp"

namespace rrtcut::cutter {

LabelSet select_labels(Rule rule, std::size_t n, std::size_t ell, RandomStream& rng) {
  if (ell < 1 || ell > n)
    throw std::invalid_argument("l = " + std::to_string(ell) + " outside 1.." + std::to_string(n));
  std::vector<Label> labels;
  labels.reserve(ell);
  switch (rule) {
    case Rule::first:
      for (std::size_t i = 1; i <= ell; ++i) labels.push_back(static_cast<Label>(i));
      break;
    case Rule::last:
      for (std::size_t i = n + 1 - ell; i <= n; ++i) labels.push_back(static_cast<Label>(i));
      break;
    case Rule::random: {
      // Floyd's sampling: one draw per selected label.
      std::unordered_set<Label> chosen;
      chosen.reserve(ell);
      for (std::size_t j = n - ell + 1; j <= n; ++j) {
        const auto pick = uniform_int<Label>(rng, 1, static_cast<Label>(j));
        const Label add = chosen.contains(pick) ? static_cast<Label>(j) : pick;
        chosen.insert(add);
        labels.push_back(add);
      }
      break;
    }
  }
  return LabelSet(std::move(labels), n);
}

CutRecord isolate(const tree::RecursiveTree& t, const LabelSet& targets, RandomStream& rng,
                  bool want_trace) {
  Forest f(t, targets);
  CutRecord rec;
  while (!f.isolated()) {
    const auto i = uniform_int<std::size_t>(rng, 0, f.alive_edge_count() - 1);
    const Label child = f.alive_edge(i);
    const Label parent = f.parent(child);
    const auto res = f.cut(child);
    ++rec.cuts;
    if (want_trace) {
      TraceStep step{parent, child, {}};
      for (auto [keep, root] : {std::pair{res.kept_root_side, res.root_side},
                                std::pair{res.kept_child_side, res.child_side}})
        if (keep) step.kept.push_back(f.component(root).labels);
      rec.trace.push_back(std::move(step));
    }
  }
  if (rec.cuts + 1 < targets.size() || rec.cuts + 1 > t.size())
    throw std::logic_error("cut count " + std::to_string(rec.cuts) + " out of range");
  return rec;
}

std::uint64_t isolate_by_priority(const tree::RecursiveTree& t, const LabelSet& targets,
                                  std::span<const std::uint64_t> priority) {
  if (priority.size() != t.edge_count())
    throw std::invalid_argument("need one priority per edge");
  std::vector<Label> order(t.edge_count());
  std::iota(order.begin(), order.end(), Label{2});
  std::sort(order.begin(), order.end(), [&](Label a, Label b) {
    return priority[a - 2] != priority[b - 2] ? priority[a - 2] < priority[b - 2] : a < b;
  });
  Forest f(t, targets);
  std::uint64_t cuts = 0;
  for (Label c : order) {
    if (!f.has_edge(c)) continue;
    f.cut(c);
    ++cuts;
  }
  return cuts;
}

std::uint64_t count_cuts_by_priority(const tree::RecursiveTree& t, const LabelSet& targets,
                                     std::span<const std::uint64_t> priority) {
  if (priority.size() != t.edge_count())
    throw std::invalid_argument("need one priority per edge");
  constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
  const std::size_t n = t.size();
  std::vector<std::uint32_t> depth(n + 1, 0);
  for (Label c = 2; c <= n; ++c) depth[c] = depth[t.parent(c)] + 1;

  // Smallest priority on the path between u and v.
  auto path_min = [&](Label u, Label v) {
    std::uint64_t m = kInf;
    while (u != v) {
      if (depth[u] < depth[v]) std::swap(u, v);
      m = std::min(m, priority[u - 2]);
      u = t.parent(u);
    }
    return m;
  };
  auto is_ancestor_or_self = [&](Label a, Label v) {
    while (depth[v] > depth[a]) v = t.parent(v);
    return v == a;
  };

  std::uint64_t cuts = 0;
  for (Label c = 2; c <= n; ++c) {
    const std::uint64_t key = priority[c - 2];
    for (Label target : targets.labels()) {
      const Label near = is_ancestor_or_self(c, target) ? c : t.parent(c);
      if (path_min(near, target) > key) {
        ++cuts;
        break;
      }
    }
  }
  return cuts;
}

namespace {

// Forest states for a fixed tree and label set are determined by the set of
// surviving edges, which fits in a bitmask (bit c-2 for edge (parent(c), c)).
class MaskOracle {
 public:
  MaskOracle(const tree::RecursiveTree& t, const LabelSet& targets)
      : t_(t), target_mask_(0) {
    for (Label v : targets.labels()) target_mask_ |= 1u << v;
  }

  const std::vector<Rational>& remaining(std::uint32_t edges) {
    if (auto it = memo_.find(edges); it != memo_.end()) return it->second;
    std::vector<Rational> law;
    if (edges == 0) {
      law = {Rational(1)};
    } else {
      const int alive = std::popcount(edges);
      for (std::uint32_t rest = edges; rest != 0; rest &= rest - 1) {
        const Label c = static_cast<Label>(std::countr_zero(rest)) + 2;
        const auto& sub = remaining(after_cut(edges, c));
        if (law.size() < sub.size() + 1) law.resize(sub.size() + 1);
        for (std::size_t m = 0; m < sub.size(); ++m) law[m + 1] += sub[m] / alive;
      }
    }
    return memo_.emplace(edges, std::move(law)).first->second;
  }

 private:
  // Node set (bit v) of the component holding v, and its edge set.
  std::pair<std::uint32_t, std::uint32_t> component(std::uint32_t edges, Label v) const {
    std::uint32_t nodes = 1u << v, comp_edges = 0;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::uint32_t rest = edges & ~comp_edges; rest != 0; rest &= rest - 1) {
        const Label c = static_cast<Label>(std::countr_zero(rest)) + 2;
        const std::uint32_t ends = (1u << c) | (1u << t_.parent(c));
        if (nodes & ends) {
          nodes |= ends;
          comp_edges |= 1u << (c - 2);
          grew = true;
        }
      }
    }
    return {nodes, comp_edges};
  }

  std::uint32_t after_cut(std::uint32_t edges, Label c) const {
    edges &= ~(1u << (c - 2));
    for (Label end : {c, t_.parent(c)}) {
      const auto [nodes, comp_edges] = component(edges, end);
      if ((nodes & target_mask_) == 0) edges &= ~comp_edges;
    }
    return edges;
  }

  const tree::RecursiveTree& t_;
  std::uint32_t target_mask_;
  std::unordered_map<std::uint32_t, std::vector<Rational>> memo_;
};

}  // namespace

Pmf<Rational> exact_pmf_for_tree(const tree::RecursiveTree& t, const LabelSet& targets) {
  if (t.size() > kOracleCap)
    throw BudgetExceeded("exact per-tree law needs n <= " + std::to_string(kOracleCap) +
                         ", got " + std::to_string(t.size()));
  if (targets.universe() != t.size())
    throw std::invalid_argument("label set does not match tree size");
  MaskOracle oracle(t, targets);
  const std::uint32_t all = t.edge_count() == 0 ? 0u : (1u << t.edge_count()) - 1;
  Pmf<Rational> out;
  out.n = static_cast<std::uint32_t>(t.size());
  out.ell = static_cast<std::uint32_t>(targets.size());
  out.probs = oracle.remaining(all);
  out.probs.resize(t.size(), Rational(0));
  return out;
}

}  // namespace rrtcut::cutter
