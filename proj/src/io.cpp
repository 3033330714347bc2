#include "rrtcut/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace rrtcut::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// Builds a DOM in which numbers are stored as their source text.
class ExactHandler : public nlohmann::json_sax<json> {
 public:
  json root;

  bool null() override { return put(nullptr); }
  bool boolean(bool v) override { return put(v); }
  bool number_integer(number_integer_t v) override { return put(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return put(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return put(s); }
  bool string(string_t& s) override { return put(s); }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override { return open(json::object()); }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array()); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) override {
    throw std::invalid_argument("JSON parse error at byte " + std::to_string(pos) + ": " + e.what());
  }

 private:
  json* place(json value) {
    if (stack_.empty()) {
      root = std::move(value);
      return &root;
    }
    json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(value));
      return &top.back();
    }
    return &(top[key_] = std::move(value));
  }
  bool put(json value) {
    place(std::move(value));
    return true;
  }
  bool open(json container) {
    stack_.push_back(place(std::move(container)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  std::vector<json*> stack_;
  std::string key_;
};

std::string rule_name(const std::optional<Rule>& r) { return r ? std::string(to_string(*r)) : "per-tree"; }

std::optional<Rule> rule_from(const std::string& s) {
  if (s == "per-tree") return std::nullopt;
  return parse_rule(s);
}

unsigned long parse_unsigned(const json& j, const char* what) {
  if (!j.is_string()) throw std::invalid_argument(std::string("expected a number for ") + what);
  const std::string& s = j.get_ref<const std::string&>();
  unsigned long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("bad integer for ") + what + ": " + s);
  return v;
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <class T>
void write_header(std::ostream& out, const Pmf<T>& p, std::vector<std::size_t>& support) {
  for (std::size_t m = 0; m < p.probs.size(); ++m)
    if (p.probs[m] != 0) support.push_back(m);
  out << "{\"rule\":\"" << rule_name(p.rule) << "\",\"n\":" << p.n << ",\"ell\":" << p.ell << ",\"support\":[";
  for (std::size_t i = 0; i < support.size(); ++i) out << (i ? "," : "") << support[i];
  out << "]";
}

template <class T>
Pmf<T> read_header(const json& j, std::vector<std::size_t>& support) {
  Pmf<T> p;
  p.rule = rule_from(field(j, "rule").get<std::string>());
  p.n = static_cast<std::uint32_t>(parse_unsigned(field(j, "n"), "n"));
  p.ell = static_cast<std::uint32_t>(parse_unsigned(field(j, "ell"), "ell"));
  p.probs.assign(p.n, T(0));
  for (const auto& m : field(j, "support")) {
    support.push_back(parse_unsigned(m, "support"));
    if (support.back() >= p.n) throw std::invalid_argument("support value out of range");
  }
  return p;
}

}  // namespace

json parse_json_exact(std::string_view text) {
  ExactHandler handler;
  json::sax_parse(text.begin(), text.end(), &handler);
  return std::move(handler.root);
}

void write_pmf_json(std::ostream& out, const Pmf<Rational>& p) {
  std::vector<std::size_t> support;
  write_header(out, p, support);
  out << ",\"num\":[";
  for (std::size_t i = 0; i < support.size(); ++i) out << (i ? "," : "") << p.probs[support[i]].get_num().get_str();
  out << "],\"den\":[";
  for (std::size_t i = 0; i < support.size(); ++i) out << (i ? "," : "") << p.probs[support[i]].get_den().get_str();
  out << "]}\n";
}

void write_pmf_json(std::ostream& out, const Pmf<double>& p) {
  std::vector<std::size_t> support;
  write_header(out, p, support);
  out << ",\"prob\":[";
  for (std::size_t i = 0; i < support.size(); ++i) out << (i ? "," : "") << format_double(p.probs[support[i]]);
  out << "]}\n";
}

Pmf<Rational> read_pmf_json_rational(std::string_view text) {
  const json j = parse_json_exact(text);
  std::vector<std::size_t> support;
  auto p = read_header<Rational>(j, support);
  const auto& num = field(j, "num");
  const auto& den = field(j, "den");
  if (num.size() != support.size() || den.size() != support.size())
    throw std::invalid_argument("num/den arrays must match the support");
  for (std::size_t i = 0; i < support.size(); ++i) {
    Integer a, b;
    if (a.set_str(num[i].get<std::string>(), 10) != 0 || b.set_str(den[i].get<std::string>(), 10) != 0)
      throw std::invalid_argument("bad integer in num/den");
    p.probs[support[i]] = make_rational(a, b);
  }
  return p;
}

Pmf<double> read_pmf_json_float(std::string_view text) {
  const json j = parse_json_exact(text);
  std::vector<std::size_t> support;
  auto p = read_header<double>(j, support);
  const auto& prob = field(j, "prob");
  if (prob.size() != support.size()) throw std::invalid_argument("prob array must match the support");
  for (std::size_t i = 0; i < support.size(); ++i) p.probs[support[i]] = parse_double(prob[i].get<std::string>());
  return p;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

void expect_header(std::istream& in, const std::string& want) {
  std::string line;
  if (!std::getline(in, line) || line != want)
    throw std::invalid_argument("expected CSV header '" + want + "'");
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

}  // namespace

void write_split_csv(std::ostream& out, std::span<const splitprob::JointCell> cells) {
  out << "k,r,num,den\n";
  for (const auto& c : cells)
    out << c.k << ',' << c.r << ',' << c.p.get_num().get_str() << ',' << c.p.get_den().get_str() << '\n';
}

std::vector<splitprob::JointCell> read_split_csv(std::istream& in) {
  expect_header(in, "k,r,num,den");
  std::vector<splitprob::JointCell> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 4) throw std::invalid_argument("split CSV rows need 4 fields");
    Integer a, b;
    if (a.set_str(cells[2], 10) != 0 || b.set_str(cells[3], 10) != 0)
      throw std::invalid_argument("bad integer in split CSV");
    out.push_back({parse_long(cells[0]), parse_long(cells[1]), make_rational(a, b)});
  }
  return out;
}

void write_simulation_csv(std::ostream& out, std::span<const std::uint32_t> cuts) {
  out << "replicate_index,cuts\n";
  std::string buf;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    buf += std::to_string(i);
    buf += ',';
    buf += std::to_string(cuts[i]);
    buf += '\n';
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

std::vector<std::uint32_t> read_simulation_csv(std::istream& in) {
  expect_header(in, "replicate_index,cuts");
  std::vector<std::uint32_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 2) throw std::invalid_argument("simulation CSV rows need 2 fields");
    if (parse_long(cells[0]) != static_cast<long>(out.size()))
      throw std::invalid_argument("replicate indices must run 0, 1, 2, ...");
    out.push_back(static_cast<std::uint32_t>(parse_long(cells[1])));
  }
  return out;
}

void write_trace_jsonl(std::ostream& out, std::span<const std::vector<cutter::TraceStep>> traces) {
  for (std::size_t i = 0; i < traces.size(); ++i)
    for (const auto& step : traces[i]) {
      nlohmann::ordered_json line = {{"replicate", i}, {"edge", {step.parent, step.child}}, {"kept", step.kept}};
      out << line.dump() << '\n';
    }
}

std::vector<std::vector<cutter::TraceStep>> read_trace_jsonl(std::istream& in) {
  std::vector<std::vector<cutter::TraceStep>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const auto rep = field(j, "replicate").get<std::size_t>();
    if (rep + 1 < out.size()) throw std::invalid_argument("trace lines must be grouped by replicate");
    if (rep >= out.size()) out.resize(rep + 1);
    const auto edge = field(j, "edge").get<std::vector<Label>>();
    if (edge.size() != 2) throw std::invalid_argument("trace edge needs two endpoints");
    out[rep].push_back({edge[0], edge[1], field(j, "kept").get<std::vector<std::vector<Label>>>()});
  }
  return out;
}

json to_json(const montecarlo::LimitFitReport& r) {
  json series = json::array();
  for (const auto& s : r.series)
    series.push_back({{"statistic", s.statistic}, {"distances", s.distances}, {"decreasing", s.decreasing}});
  const bool beta = r.target.kind == asymptotics::LimitTarget::Kind::beta;
  return {{"rule", to_string(r.rule)},
          {"ell", r.ell},
          {"target", beta ? "beta" : "stable"},
          {"n_grid", r.n_grid},
          {"replicates", r.replicates},
          {"seed", r.seed},
          {"slack", r.slack},
          {"series", series},
          {"pass", r.all_decreasing()}};
}

montecarlo::LimitFitReport limit_report_from_json(const json& j) {
  montecarlo::LimitFitReport r;
  r.rule = parse_rule(field(j, "rule").get<std::string>());
  r.ell = field(j, "ell").get<std::uint32_t>();
  r.target = asymptotics::LimitTarget::for_rule(r.rule, r.ell);
  if ((field(j, "target").get<std::string>() == "beta") != (r.target.kind == asymptotics::LimitTarget::Kind::beta))
    throw std::invalid_argument("target does not match rule");
  r.n_grid = field(j, "n_grid").get<std::vector<std::uint32_t>>();
  r.replicates = field(j, "replicates").get<std::uint64_t>();
  r.seed = field(j, "seed").get<std::uint64_t>();
  r.slack = field(j, "slack").get<double>();
  for (const auto& s : field(j, "series"))
    r.series.push_back({field(s, "statistic").get<std::string>(), field(s, "distances").get<std::vector<double>>(),
                        field(s, "decreasing").get<bool>()});
  return r;
}

void write_limit_report(std::ostream& out, const montecarlo::LimitFitReport& r) {
  out << to_json(r).dump(2) << '\n';
}

montecarlo::LimitFitReport read_limit_report(std::istream& in) {
  return limit_report_from_json(json::parse(in));
}

json to_json(const series::ResidualReport& r) {
  return {{"check", r.name},
          {"ell", r.ell},
          {"z_trunc", r.z_trunc},
          {"ok", r.ok()},
          {"nonzero_degrees", r.nonzero_degrees},
          {"max_abs", r.max_abs}};
}

series::ResidualReport residual_from_json(const json& j) {
  return {field(j, "check").get<std::string>(), field(j, "ell").get<int>(), field(j, "z_trunc").get<int>(),
          field(j, "nonzero_degrees").get<std::vector<int>>(), field(j, "max_abs").get<double>()};
}

}  // namespace rrtcut::io
