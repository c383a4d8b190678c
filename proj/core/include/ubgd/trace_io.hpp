#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ubgd/diagnostics.hpp"
#include "ubgd/trace.hpp"

namespace ubgd {

// Trace CSV, one row per step, header
//   iter,f,grad_norm,delta,delta_exponent,step_norm,n_value_evals,n_grad_evals,mode
// with floats at 17 significant digits for lossless round-trip. Output is
// byte-deterministic for a given trace.
void write_trace_csv(std::ostream& os, const Trace& trace);
std::string trace_csv_string(const Trace& trace);

struct ParsedTraceRow {
    std::size_t iter = 0;
    double f = 0.0;
    double grad_norm = 0.0;
    double delta = 0.0;
    int delta_exponent = 0;
    double step_norm = 0.0;
    std::uint64_t n_value_evals = 0;
    std::uint64_t n_grad_evals = 0;
    StepMode mode = StepMode::Backtrack;
};

// Parses text produced by write_trace_csv; throws std::runtime_error on a
// malformed header or row.
std::vector<ParsedTraceRow> parse_trace_csv(std::istream& is);
std::vector<ParsedTraceRow> parse_trace_csv_string(const std::string& text);

// Machine-checkable audit summary written beside the trace CSV.
struct RunContext {
    std::string scheme;
    std::string objective;
};

std::string render_audit_json(const TheoremAudit& audit, const Trace& trace, const RunContext& ctx);

}  // namespace ubgd
