#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rrtcut/cutter.hpp"
#include "rrtcut/montecarlo.hpp"
#include "rrtcut/pmf.hpp"
#include "rrtcut/rational.hpp"
#include "rrtcut/series.hpp"
#include "rrtcut/splitprob.hpp"

namespace rrtcut::io {

/// Shortest text that reads back to the same double.
std::string format_double(double x);

/// Parses JSON keeping the exact lexeme of every number as a string value, so
/// integers of any size survive. Throws std::invalid_argument on bad input.
nlohmann::json parse_json_exact(std::string_view text);

// PMF documents:
//   {"rule":"first","n":3,"ell":1,"support":[1,2],"num":[1,3],"den":[4,4]}
//   {"rule":"last","n":3,"ell":1,"support":[1,2],"prob":[0.25,0.75]}
// "rule" is "per-tree" for the law of a fixed tree. Only cells with nonzero
// probability are listed.
void write_pmf_json(std::ostream& out, const Pmf<Rational>& p);
void write_pmf_json(std::ostream& out, const Pmf<double>& p);
Pmf<Rational> read_pmf_json_rational(std::string_view text);
Pmf<double> read_pmf_json_float(std::string_view text);

// Split tables: header k,r,num,den.
void write_split_csv(std::ostream& out, std::span<const splitprob::JointCell> cells);
std::vector<splitprob::JointCell> read_split_csv(std::istream& in);

// Simulation output: header replicate_index,cuts.
void write_simulation_csv(std::ostream& out, std::span<const std::uint32_t> cuts);
std::vector<std::uint32_t> read_simulation_csv(std::istream& in);

// Traces: one line per cut,
//   {"replicate":0,"edge":[u,v],"kept":[[root,labels...],...]}
void write_trace_jsonl(std::ostream& out, std::span<const std::vector<cutter::TraceStep>> traces);
std::vector<std::vector<cutter::TraceStep>> read_trace_jsonl(std::istream& in);

nlohmann::json to_json(const montecarlo::LimitFitReport& r);
montecarlo::LimitFitReport limit_report_from_json(const nlohmann::json& j);
void write_limit_report(std::ostream& out, const montecarlo::LimitFitReport& r);
montecarlo::LimitFitReport read_limit_report(std::istream& in);

nlohmann::json to_json(const series::ResidualReport& r);
series::ResidualReport residual_from_json(const nlohmann::json& j);

}  // namespace rrtcut::io
