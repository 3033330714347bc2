#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rrtcut {

using Label = std::uint32_t;

/// Label selection rule: nodes 1..l, nodes n+1-l..n, or a uniform l-subset.
enum class Rule { first, last, random };

std::string_view to_string(Rule rule);
Rule parse_rule(std::string_view text);

/// Probability mass function of a cut count. `probs[m]` is P(cuts = m).
/// `rule` is empty for the law of a fixed tree and label set.
template <class T>
struct Pmf {
  std::optional<Rule> rule;
  std::uint32_t n = 0;
  std::uint32_t ell = 0;
  std::vector<T> probs;

  T at(std::size_t m) const { return m < probs.size() ? probs[m] : T(0); }
  bool operator==(const Pmf&) const = default;
};

inline std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::first: return "first";
    case Rule::last: return "last";
    case Rule::random: return "random";
  }
  return "?";
}

inline Rule parse_rule(std::string_view text) {
  if (text == "first") return Rule::first;
  if (text == "last") return Rule::last;
  if (text == "random") return Rule::random;
  throw std::invalid_argument("unknown rule '" + std::string(text) + "'");
}

}  // namespace rrtcut
