#include "ubgd/trace_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ubgd {

namespace {

constexpr const char* kHeader = "iter,f,grad_norm,delta,delta_exponent,step_norm,n_value_evals,n_grad_evals,mode";

// 17 significant digits round-trip any double exactly.
std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

StepMode mode_from_string(const std::string& s) {
    if (s == "backtrack") return StepMode::Backtrack;
    if (s == "growth") return StepMode::Growth;
    if (s == "reuse") return StepMode::Reuse;
    if (s == "standard") return StepMode::Standard;
    throw std::runtime_error("trace CSV: unknown mode '" + s + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

void write_trace_csv(std::ostream& os, const Trace& trace) {
    os << kHeader << '\n';
    for (const StepRecord& r : trace.records) {
        os << r.iter << ',' << fmt_double(r.f_val) << ',' << fmt_double(r.grad_norm) << ','
           << fmt_double(r.delta) << ',' << r.delta_exponent << ',' << fmt_double(r.step_norm) << ','
           << r.n_value_evals << ',' << r.n_grad_evals << ',' << to_string(r.mode) << '\n';
    }
}

std::string trace_csv_string(const Trace& trace) {
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

std::vector<ParsedTraceRow> parse_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("trace CSV: empty input");
    if (line != kHeader) throw std::runtime_error("trace CSV: unexpected header '" + line + "'");

    std::vector<ParsedTraceRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 9) {
            throw std::runtime_error("trace CSV: expected 9 fields, got " + std::to_string(fields.size()));
        }
        ParsedTraceRow row;
        try {
            row.iter = std::stoull(fields[0]);
            row.f = std::stod(fields[1]);
            row.grad_norm = std::stod(fields[2]);
            row.delta = std::stod(fields[3]);
            row.delta_exponent = std::stoi(fields[4]);
            row.step_norm = std::stod(fields[5]);
            row.n_value_evals = std::stoull(fields[6]);
            row.n_grad_evals = std::stoull(fields[7]);
        } catch (const std::exception&) {
            throw std::runtime_error("trace CSV: malformed row '" + line + "'");
        }
        row.mode = mode_from_string(fields[8]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ParsedTraceRow> parse_trace_csv_string(const std::string& text) {
    std::istringstream in(text);
    return parse_trace_csv(in);
}

std::string render_audit_json(const TheoremAudit& audit, const Trace& trace, const RunContext& ctx) {
    nlohmann::json j;
    j["scheme"] = ctx.scheme;
    j["objective"] = ctx.objective;
    j["termination"] = to_string(trace.termination);
    j["iterations"] = trace.records.size();
    j["final_x"] = trace.final_x;
    j["final_f"] = trace.final_f;
    j["final_grad_norm"] = trace.final_grad_norm;
    j["total_value_evals"] = trace.total_value_evals;
    j["total_gradient_evals"] = trace.total_gradient_evals;

    nlohmann::json a;
    a["armijo_ok"] = audit.armijo_ok;
    a["descent_ok"] = audit.descent_ok;
    a["step_norm_first_decile_mean"] = audit.first_decile_mean_step;
    a["step_norm_last_decile_mean"] = audit.last_decile_mean_step;
    a["partial_sum_tail_fraction"] = audit.partial_sum_tail_fraction;
    a["final_grad_norm"] = audit.final_grad_norm;
    if (audit.nearest_known_critical) {
        a["nearest_known_critical"] = {{"point", audit.nearest_known_critical->first},
                                       {"distance", audit.nearest_known_critical->second}};
    } else {
        a["nearest_known_critical"] = nullptr;
    }
    a["delta_lower_bound_ok"] =
        audit.delta_lower_bound_ok ? nlohmann::json(*audit.delta_lower_bound_ok) : nlohmann::json(nullptr);
    a["hybrid_window_ok"] =
        audit.hybrid_window_ok ? nlohmann::json(*audit.hybrid_window_ok) : nlohmann::json(nullptr);
    j["audit"] = a;

    return j.dump(2) + "\n";
}

}  // namespace ubgd
