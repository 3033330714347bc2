#include <algorithm>
#include <stdexcept>
#include <string>

#include "rrtcut/cutter.hpp"

namespace rrtcut::cutter {

LabelSet::LabelSet(std::vector<Label> labels, std::size_t n) : labels_(std::move(labels)), n_(n) {
  if (labels_.empty()) throw std::invalid_argument("label set must not be empty");
  std::sort(labels_.begin(), labels_.end());
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
    throw std::invalid_argument("label set has a repeated label");
  if (labels_.front() < 1 || labels_.back() > n)
    throw std::invalid_argument("label " +
                                std::to_string(labels_.front() < 1 ? labels_.front() : labels_.back()) +
                                " outside 1.." + std::to_string(n));
}

bool LabelSet::contains(Label v) const {
  return std::binary_search(labels_.begin(), labels_.end(), v);
}

Forest::Forest(const tree::RecursiveTree& t, const LabelSet& targets) {
  const std::size_t n = t.size();
  if (targets.universe() != n)
    throw std::invalid_argument("label set universe " + std::to_string(targets.universe()) +
                                " does not match tree size " + std::to_string(n));
  std::vector<std::uint8_t> is_target(n + 1, 0);
  for (Label v : targets.labels()) is_target[v] = 1;
  shape_ = std::make_shared<const Shape>(Shape{t, tree::ChildIndex(t), std::move(is_target)});

  state_.assign(n + 1, EdgeState::alive);
  present_.assign(n + 1, 1);
  present_[0] = 0;
  targets_below_.assign(n + 1, 0);
  for (Label v = 1; v <= n; ++v) targets_below_[v] = shape_->is_target[v];
  for (Label c = static_cast<Label>(n); c >= 2; --c) targets_below_[t.parent(c)] += targets_below_[c];

  alive_.reserve(n);
  slot_.assign(n + 1, 0);
  for (Label c = 2; c <= n; ++c) {
    slot_[c] = static_cast<std::uint32_t>(alive_.size());
    alive_.push_back(c);
  }
}

bool Forest::has_edge(Label child) const {
  return child >= 2 && child < state_.size() && state_[child] == EdgeState::alive;
}

bool Forest::has_edge(Label u, Label v) const {
  if (u > v) std::swap(u, v);
  return has_edge(v) && parent(v) == u;
}

Label Forest::component_root(Label v) const {
  while (v != 1 && state_[v] == EdgeState::alive) v = parent(v);
  return v;
}

void Forest::remove_alive(Label child) {
  const std::uint32_t i = slot_[child];
  const Label last = alive_.back();
  alive_[i] = last;
  slot_[last] = i;
  alive_.pop_back();
}

void Forest::discard_from(Label root) {
  std::vector<Label> stack{root};
  while (!stack.empty()) {
    const Label v = stack.back();
    stack.pop_back();
    present_[v] = 0;
    for (Label c : shape_->children.children(v)) {
      if (state_[c] != EdgeState::alive) continue;
      state_[c] = EdgeState::discarded;
      remove_alive(c);
      stack.push_back(c);
    }
  }
}

Forest::CutResult Forest::cut(Label child) {
  if (!has_edge(child))
    throw std::invalid_argument("edge (" + std::to_string(child >= 2 && child < state_.size() ? parent(child) : 0) +
                                "," + std::to_string(child) + ") is not in the forest");
  const Label p = parent(child);
  const Label r = component_root(p);
  const std::uint32_t below = targets_below_[child];
  const std::uint32_t above = targets_below_[r] - below;

  state_[child] = EdgeState::cut;
  remove_alive(child);

  CutResult out{r, child, above > 0, below > 0};
  if (below == 0) {
    discard_from(child);
  } else if (above == 0) {
    discard_from(r);
  } else {
    for (Label x = p;; x = parent(x)) {
      targets_below_[x] -= below;
      if (x == r) break;
    }
  }
  return out;
}

Component Forest::component(Label root) const {
  Component comp{root, {}};
  std::vector<Label> stack{root};
  while (!stack.empty()) {
    const Label v = stack.back();
    stack.pop_back();
    comp.labels.push_back(v);
    for (Label c : shape_->children.children(v))
      if (state_[c] == EdgeState::alive) stack.push_back(c);
  }
  std::sort(comp.labels.begin() + 1, comp.labels.end());
  return comp;
}

std::vector<Component> Forest::components() const {
  std::vector<Component> out;
  for (Label v = 1; v < present_.size(); ++v)
    if (present_[v] && (v == 1 || state_[v] != EdgeState::alive)) out.push_back(component(v));
  return out;
}

Forest cut_step(Forest f, std::pair<Label, Label> edge) {
  auto [u, v] = edge;
  if (u > v) std::swap(u, v);
  if (!f.has_edge(u, v))
    throw std::invalid_argument("edge (" + std::to_string(edge.first) + "," +
                                std::to_string(edge.second) + ") is not in the forest");
  f.cut(v);
  return f;
}

}  // namespace rrtcut::cutter
