#include "rrtcut/exactdist.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "rrtcut/splitprob.hpp"

namespace rrtcut::exactdist {

std::string_view to_string(Backend b) { return b == Backend::rational ? "rational" : "float"; }

Backend parse_backend(std::string_view text) {
  if (text == "rational") return Backend::rational;
  if (text == "float") return Backend::floating;
  throw std::invalid_argument("unknown backend '" + std::string(text) + "'");
}

namespace {

template <class T>
T convert(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>)
    return q;
  else
    return to_double(q);
}

// Laws indexed by cut count; entry (n, l) has length n.
template <class T>
class Table {
 public:
  using Law = std::vector<T>;

  std::shared_ptr<const Law> get(Rule rule, std::uint32_t n, std::uint32_t ell) {
    const Key key{rule, n, ell};
    {
      std::shared_lock lock(mutex_);
      if (auto it = cells_.find(key); it != cells_.end()) return it->second;
    }
    auto law = std::make_shared<const Law>(compute(rule, n, ell));
    std::unique_lock lock(mutex_);
    return cells_.try_emplace(key, std::move(law)).first->second;
  }

  void clear() {
    std::unique_lock lock(mutex_);
    cells_.clear();
  }

 private:
  using Key = std::tuple<Rule, std::uint32_t, std::uint32_t>;

  Law compute(Rule rule, std::uint32_t n, std::uint32_t ell) {
    Law out(n, T(0));
    if (ell == 0 || n == 1) {
      out[0] = T(1);
      return out;
    }
    for (long k = 1; k < n; ++k) {
      for (long r = splitprob::r_min(rule, n, ell, k); r <= splitprob::r_max(ell, k); ++r) {
        if (ell - r > n - k) continue;
        const Rational p = splitprob::joint(rule, n, ell, k, r);
        if (p == 0) continue;
        const T w = convert<T>(p);
        const auto a = get(rule, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(r));
        const auto b = get(rule, static_cast<std::uint32_t>(n - k), static_cast<std::uint32_t>(ell - r));
        for (std::size_t i = 0; i < a->size(); ++i) {
          if ((*a)[i] == 0) continue;
          const T wa = w * (*a)[i];
          for (std::size_t j = 0; j < b->size(); ++j)
            if ((*b)[j] != 0) out[i + j + 1] += wa * (*b)[j];
        }
      }
    }
    return out;
  }

  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Law>> cells_;
};

template <class T>
Table<T>& table() {
  static Table<T> t;
  return t;
}

template <class T>
T power(T x, unsigned s) {
  T out(1);
  for (unsigned i = 0; i < s; ++i) out *= x;
  return out;
}

}  // namespace

template <class T>
Pmf<T> pmf(Rule rule, std::uint32_t n, std::uint32_t ell) {
  if (ell < 1 || ell > n)
    throw std::invalid_argument("need 1 <= l <= n, got n = " + std::to_string(n) +
                                ", l = " + std::to_string(ell));
  return Pmf<T>{rule, n, ell, *table<T>().get(rule, n, ell)};
}

template Pmf<Rational> pmf<Rational>(Rule, std::uint32_t, std::uint32_t);
template Pmf<double> pmf<double>(Rule, std::uint32_t, std::uint32_t);

template <class T>
T factorial_moment(const Pmf<T>& p, unsigned s) {
  T out(0);
  for (std::size_t m = s; m < p.probs.size(); ++m) {
    T f(1);
    for (unsigned i = 0; i < s; ++i) f *= T(static_cast<long>(m - i));
    out += f * p.probs[m];
  }
  return out;
}

template <class T>
T raw_moment(const Pmf<T>& p, unsigned s) {
  if (s == 0) return factorial_moment(p, 0);
  T out(0);
  for (unsigned j = 1; j <= s; ++j) {
    const Integer st = stirling2(s, j);
    if constexpr (std::is_same_v<T, Rational>)
      out += Rational(st) * factorial_moment(p, j);
    else
      out += st.get_d() * factorial_moment(p, j);
  }
  return out;
}

template <class T>
T raw_moment_direct(const Pmf<T>& p, unsigned s) {
  T out(0);
  for (std::size_t m = 0; m < p.probs.size(); ++m)
    out += power(T(static_cast<long>(m)), s) * p.probs[m];
  return out;
}

template Rational factorial_moment(const Pmf<Rational>&, unsigned);
template double factorial_moment(const Pmf<double>&, unsigned);
template Rational raw_moment(const Pmf<Rational>&, unsigned);
template double raw_moment(const Pmf<double>&, unsigned);
template Rational raw_moment_direct(const Pmf<Rational>&, unsigned);
template double raw_moment_direct(const Pmf<double>&, unsigned);

void clear_cache() {
  table<Rational>().clear();
  table<double>().clear();
}

}  // namespace rrtcut::exactdist
