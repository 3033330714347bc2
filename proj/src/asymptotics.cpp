#include "rrtcut/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace rrtcut::asymptotics {

LimitTarget LimitTarget::beta(unsigned ell) {
  if (ell < 1) throw std::invalid_argument("beta(l,1) needs l >= 1");
  return {Kind::beta, ell};
}

LimitTarget LimitTarget::for_rule(Rule rule, unsigned ell) {
  return rule == Rule::first ? stable() : beta(ell);
}

Rational beta_moment(unsigned ell, unsigned s) {
  if (ell < 1) throw std::invalid_argument("beta(l,1) needs l >= 1");
  return make_rational(static_cast<long>(ell), static_cast<long>(ell + s));
}

double beta_cdf(unsigned ell, double x) {
  return std::pow(std::clamp(x, 0.0, 1.0), static_cast<double>(ell));
}

std::complex<double> beta_cf(unsigned ell, double t) {
  if (ell < 1) throw std::invalid_argument("beta(l,1) needs l >= 1");
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const double l = ell;
  auto density = [&](double x) { return l * std::pow(x, l - 1); };
  const double re = Rule::integrate([&](double x) { return density(x) * std::cos(t * x); }, 0.0, 1.0);
  const double im = Rule::integrate([&](double x) { return density(x) * std::sin(t * x); }, 0.0, 1.0);
  return {re, im};
}

std::complex<double> stable_cf(double t) {
  if (t == 0) return 1.0;
  const double a = std::abs(t);
  return std::exp(std::complex<double>(-std::numbers::pi / 2 * a, t * std::log(a)));
}

double normalize_R(double x, double n, unsigned ell) {
  if (!(n >= 3)) throw std::invalid_argument("normalize_R needs n >= 3, got " + std::to_string(n));
  const double ln = std::log(n);
  const double center = static_cast<double>(ell) - 1 + n / ln + n * std::log(ln) / (ln * ln);
  return (x - center) / (n / (ln * ln));
}

double scale_LY(double x, double n) { return std::log(n) / n * x; }

double leading_moment(Rule rule, double n, unsigned ell, unsigned s) {
  if (!(n >= 2)) throw std::invalid_argument("leading_moment needs n >= 2");
  const double base = std::pow(n / std::log(n), static_cast<double>(s));
  return rule == Rule::first ? base : base * ell / (ell + s);
}

Rational alpha_closed(unsigned ell, unsigned s) {
  if (ell < 1) throw std::invalid_argument("alpha needs l >= 1");
  return make_rational(factorial(s) * binomial(ell + s - 1, s), Integer(ell + s));
}

Rational alpha_recurrence(unsigned ell, unsigned s) {
  if (ell < 1) throw std::invalid_argument("alpha needs l >= 1");
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, Rational> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find({ell, s}); it != memo.end()) return it->second;
  }
  Rational value;
  if (s == 0) {
    value = make_rational(1, static_cast<long>(ell));
  } else {
    const long m = ell + s - 1;
    Rational acc = Rational(static_cast<long>(s) * m * m) * alpha_recurrence(ell, s - 1);
    for (unsigned r = 1; r < ell; ++r)
      for (unsigned s1 = 0; s1 <= s; ++s1) {
        const unsigned s2 = s - s1;
        acc += Rational(binomial(s, s1) * (r + s1) * (ell - r + s2)) * alpha_recurrence(r, s1) *
               alpha_recurrence(ell - r, s2);
      }
    value = acc / Rational(static_cast<long>(ell + s) * m);
  }
  std::lock_guard lock(mutex);
  return memo.emplace(std::pair{ell, s}, value).first->second;
}

}  // namespace rrtcut::asymptotics
