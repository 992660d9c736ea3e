#include "report.hpp"

namespace vex {

std::string Table::csv() const {
    std::string out = "# experiment: " + experiment + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
        out += "\n";
    }
    for (const auto& line : trailer) out += "# " + line + "\n";
    return out;
}

Table normTable(const std::vector<NormEntry>& entries) {
    Table t{"luxemburg_norm", {"quantity", "lambda", "modular_at_lambda", "iterations"}, {}, {}};
    for (const auto& e : entries)
        t.rows.push_back({e.quantity, formatDouble(e.result.norm), formatDouble(e.result.modularAtNorm),
                          std::to_string(e.result.iterations)});
    return t;
}

Table lemma1Table(const ConvergenceReport& report) {
    Table t{"lemma1_riesz_convergence", {"alpha", "l2_error", "l2_norm_Ialpha", "inner_product", "verdict"}, {}, {}};
    for (const auto& r : report.rows)
        t.rows.push_back({formatDouble(r.alpha), formatDouble(r.l2Error), formatDouble(r.l2NormRiesz),
                          formatDouble(r.innerProduct), r.trendOk ? "ok" : "fail"});
    t.trailer.push_back("f_l2_norm: " + formatDouble(report.fNorm));
    t.trailer.push_back(std::string("verdict: decreasing=") + (report.errorDecreasing ? "true" : "false") +
                        " norm_trend=" + (report.normTrend ? "true" : "false") +
                        " inner_trend=" + (report.innerTrend ? "true" : "false"));
    return t;
}

Table probeTable(const ProbeResult& probe) {
    Table t{"maximal_local_boundedness_probe", {"field_id", "norm_f", "norm_Mf", "ratio"}, {}, {}};
    for (const auto& r : probe.rows)
        t.rows.push_back({r.fieldId, formatDouble(r.normF), formatDouble(r.normMf), formatDouble(r.ratio)});
    t.trailer.push_back("sup_ratio: " + formatDouble(probe.supRatio));
    return t;
}

Table logHolderTable(const std::vector<LogHolderLevel>& levels) {
    Table t{"log_holder_estimate", {"h", "c0_hat", "worst_i", "worst_j"}, {}, {}};
    for (const auto& l : levels)
        t.rows.push_back({formatDouble(l.h), formatDouble(l.estimate.c0Hat), std::to_string(l.estimate.worstPair.first),
                          std::to_string(l.estimate.worstPair.second)});
    return t;
}

Table approxTable(const ApproximationReport& report, int dim) {
    Table t{"smooth_approximation", {"lambda", "lp_error"}, {}, {}};
    for (int j = 1; j <= dim; ++j) t.columns.push_back("grad_error_" + std::to_string(j));
    t.columns.push_back("sobolev_error");
    for (const auto& r : report.rows) {
        std::vector<std::string> row{formatDouble(r.lambda), formatDouble(r.lpError)};
        for (double e : r.gradErrors) row.push_back(formatDouble(e));
        row.push_back(formatDouble(r.sobolevError));
        t.rows.push_back(std::move(row));
    }
    t.trailer.push_back(std::string("verdict: decreasing=") + (report.verdict ? "true" : "false"));
    return t;
}

}  // namespace vex
