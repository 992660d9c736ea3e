#pragma once

#include <string>
#include <vector>

#include "density.hpp"
#include "lebesgue.hpp"
#include "maximal.hpp"
#include "riesz.hpp"

namespace vex {

/// CSV table: one `# experiment` comment, a header row, preformatted cells
/// and optional trailing comment lines.
struct Table {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> trailer;

    std::string csv() const;
};

struct NormEntry {
    std::string quantity;
    NormResult result;
};

Table normTable(const std::vector<NormEntry>& entries);
Table lemma1Table(const ConvergenceReport& report);
Table probeTable(const ProbeResult& probe);

struct LogHolderLevel {
    double h = 0.0;
    LogHolderEstimate estimate;
};

Table logHolderTable(const std::vector<LogHolderLevel>& levels);

/// Columns lambda, lp_error, grad_error_1..n, sobolev_error; the verdict goes
/// to a trailing comment.
Table approxTable(const ApproximationReport& report, int dim);

}  // namespace vex
