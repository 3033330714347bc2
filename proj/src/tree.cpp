#include "rrtcut/tree.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "rrtcut/errors.hpp"

namespace rrtcut::tree {

RecursiveTree::RecursiveTree(std::vector<Label> parents) : parents_(std::move(parents)) {
  if (auto err = validate(parents_)) throw std::invalid_argument(*err);
}

ChildIndex::ChildIndex(const RecursiveTree& t) {
  const std::size_t n = t.size();
  offsets_.assign(n + 2, 0);
  for (Label p : t.parents()) ++offsets_[p + 1];
  for (std::size_t v = 1; v <= n + 1; ++v) offsets_[v] += offsets_[v - 1];
  nodes_.resize(t.edge_count());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (Label c = 2; c <= n; ++c) nodes_[fill[t.parent(c)]++] = c;
}

std::optional<std::string> validate(std::span<const Label> parents) {
  for (std::size_t idx = 0; idx < parents.size(); ++idx) {
    const std::size_t i = idx + 2;
    const Label p = parents[idx];
    if (p == i) return "parent(" + std::to_string(i) + ") = " + std::to_string(p) + " is a self-loop";
    if (p < 1 || p >= i) {
      return "parent(" + std::to_string(i) + ") = " + std::to_string(p) +
             " is not in 1.." + std::to_string(i - 1) + " (labels must increase away from the root)";
    }
  }
  return std::nullopt;
}

RecursiveTree grow_random(std::size_t n, RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("grow_random: n must be at least 1");
  std::vector<Label> parents(n - 1);
  for (Label i = 2; i <= n; ++i) parents[i - 2] = uniform_int<Label>(rng, 1, i - 1);
  return RecursiveTree(std::move(parents));
}

void for_each_tree(std::size_t n, const std::function<void(const RecursiveTree&)>& visit) {
  if (n == 0) throw std::invalid_argument("enumerate_all: n must be at least 1");
  if (n > kEnumerationCap) {
    throw BudgetExceeded("enumerate_all: n = " + std::to_string(n) + " exceeds the cap " +
                         std::to_string(kEnumerationCap));
  }
  // Odometer over parent(i) in 1..i-1, last position fastest.
  std::vector<Label> parents(n - 1, 1);
  while (true) {
    visit(RecursiveTree(parents));
    std::size_t pos = parents.size();
    while (true) {
      if (pos == 0) return;
      --pos;
      if (parents[pos] < pos + 1) {  // node pos+2 attaches to 1..pos+1
        ++parents[pos];
        std::fill(parents.begin() + static_cast<std::ptrdiff_t>(pos) + 1, parents.end(), 1);
        break;
      }
    }
  }
}

std::vector<RecursiveTree> enumerate_all(std::size_t n) {
  std::vector<RecursiveTree> out;
  for_each_tree(n, [&](const RecursiveTree& t) { out.push_back(t); });
  return out;
}

std::string to_text(const RecursiveTree& t) {
  std::string out;
  for (std::size_t i = 0; i < t.parents().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t.parents()[i]);
  }
  return out;
}

RecursiveTree from_text(std::string_view text) {
  std::vector<Label> parents;
  if (text.empty()) return RecursiveTree(parents);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    Label value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end) {
      throw std::invalid_argument("malformed parent list '" + std::string(text) + "'");
    }
    parents.push_back(value);
    start = end + 1;
  }
  return RecursiveTree(std::move(parents));
}

RecursiveTree relabel(const RecursiveTree& t, std::span<const Label> nodes) {
  std::vector<Label> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Label> parents;
  parents.reserve(sorted.size() > 0 ? sorted.size() - 1 : 0);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const Label p = t.parent(sorted[i]);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
    if (it == sorted.end() || *it != p) {
      throw std::invalid_argument("relabel: node set is not a connected subtree");
    }
    parents.push_back(static_cast<Label>(it - sorted.begin()) + 1);
  }
  return RecursiveTree(std::move(parents));
}

}  // namespace rrtcut::tree
