#include "vex/vex.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "density.hpp"
#include "expr.hpp"
#include "grid.hpp"
#include "lebesgue.hpp"
#include "maximal.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "riesz.hpp"
#include "special.hpp"

struct vex_grid {
    vex::Grid grid;
};

struct vex_field {
    vex::SampledField field;
};

struct vex_expr {
    vex::Expr expr;
    std::string printed;
};

struct vex_report {
    vex::Table table;
    std::vector<std::vector<std::optional<double>>> values;
    std::map<std::string, double> scalars;
    bool verdict = true;
    std::string csv;
};

namespace {

thread_local std::string lastError;
thread_local std::string lastReason;

vex_status fromCode(vex::ErrorCode code) { return static_cast<vex_status>(static_cast<int>(code)); }

template <class F>
vex_status guard(F&& body) {
    try {
        body();
        lastError.clear();
        return VEX_OK;
    } catch (const vex::Error& e) {
        lastError = e.what();
        return fromCode(e.code());
    } catch (const std::bad_alloc&) {
        lastError = "out of memory";
        return VEX_ERR_INTERNAL;
    } catch (const std::exception& e) {
        lastError = e.what();
        return VEX_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) vex::fail(vex::ErrorCode::InvalidArgument, what);
}

const vex::SampledField& fieldOf(const vex_field* f, const char* name) {
    if (!f) vex::fail(vex::ErrorCode::InvalidArgument, std::string(name) + " is null");
    return f->field;
}

vex_field* wrap(vex::SampledField f) { return new vex_field{std::move(f)}; }

std::vector<double> toVector(const double* xs, std::size_t count) {
    require(count == 0 || xs, "schedule pointer is null");
    return std::vector<double>(xs, xs + count);
}

std::optional<double> parseNumber(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

vex_report* finish(vex::Table table, std::map<std::string, double> scalars, bool verdict) {
    auto* r = new vex_report{std::move(table), {}, std::move(scalars), verdict, {}};
    for (const auto& row : r->table.rows) {
        std::vector<std::optional<double>> vals;
        for (const auto& cell : row) vals.push_back(parseNumber(cell));
        r->values.push_back(std::move(vals));
    }
    r->csv = r->table.csv();
    return r;
}

double maxSpacing(const vex::Grid& g) {
    double h = 0.0;
    for (int d = 0; d < g.dim(); ++d) h = std::max(h, g.spacing(d));
    return h;
}

}  // namespace

extern "C" {

const char* vex_last_error(void) { return lastError.c_str(); }

const char* vex_status_name(vex_status status) {
    if (status == VEX_OK) return "Ok";
    if (status == VEX_ERR_INTERNAL) return "InternalError";
    if (status >= 1 && status <= 17) return vex::errorCodeName(static_cast<vex::ErrorCode>(status));
    return "UnknownStatus";
}

void vex_set_threads(unsigned threads) { vex::setThreadCount(threads); }

vex_status vex_grid_create(int dim, const double* origin, const double* spacing, const size_t* shape,
                           vex_grid** out) {
    return guard([&] {
        require(origin && spacing && shape && out, "null argument");
        require(dim >= 1 && dim <= vex::kMaxDim, "dim must be 1, 2 or 3");
        const std::size_t n = std::size_t(dim);
        *out = new vex_grid{vex::Grid(dim, {origin, n}, {spacing, n}, {shape, n})};
    });
}

vex_status vex_grid_box(int dim, const double* lo, const double* hi, const size_t* nodes, vex_grid** out) {
    return guard([&] {
        require(lo && hi && nodes && out, "null argument");
        require(dim >= 1 && dim <= vex::kMaxDim, "dim must be 1, 2 or 3");
        const std::size_t n = std::size_t(dim);
        *out = new vex_grid{vex::Grid::box(dim, {lo, n}, {hi, n}, {nodes, n})};
    });
}

void vex_grid_free(vex_grid* grid) { delete grid; }

int vex_grid_dim(const vex_grid* grid) { return grid ? grid->grid.dim() : 0; }

size_t vex_grid_size(const vex_grid* grid) { return grid ? grid->grid.size() : 0; }

void vex_grid_geometry(const vex_grid* grid, double* origin, double* spacing, size_t* shape) {
    if (!grid) return;
    for (int d = 0; d < grid->grid.dim(); ++d) {
        if (origin) origin[d] = grid->grid.origin(d);
        if (spacing) spacing[d] = grid->grid.spacing(d);
        if (shape) shape[d] = grid->grid.shape(d);
    }
}

vex_status vex_grid_node(const vex_grid* grid, size_t index, double* x) {
    return guard([&] {
        require(grid && x, "null argument");
        require(index < grid->grid.size(), "node index out of range");
        const vex::Point p = grid->grid.node(index);
        for (int d = 0; d < grid->grid.dim(); ++d) x[d] = p[d];
    });
}

vex_status vex_field_create(const vex_grid* grid, const double* values, size_t count, vex_field** out) {
    return guard([&] {
        require(grid && out && (values || count == 0), "null argument");
        *out = wrap(vex::SampledField(grid->grid, std::vector<double>(values, values + count)));
    });
}

vex_status vex_field_load(const char* path, vex_field** out) {
    return guard([&] {
        require(path && out, "null argument");
        *out = wrap(vex::loadVexf(path));
    });
}

vex_status vex_field_save(const vex_field* field, const char* path) {
    return guard([&] {
        require(path != nullptr, "null path");
        vex::saveVexf(fieldOf(field, "field"), path);
    });
}

void vex_field_free(vex_field* field) { delete field; }

size_t vex_field_size(const vex_field* field) { return field ? field->field.size() : 0; }

const double* vex_field_values(const vex_field* field) { return field ? field->field.values().data() : nullptr; }

vex_status vex_field_grid(const vex_field* field, vex_grid** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = new vex_grid{fieldOf(field, "field").grid()};
    });
}

vex_status vex_integrate(const vex_field* f, double* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = vex::integrate(fieldOf(f, "f"));
    });
}

vex_status vex_gradient(const vex_field* f, vex_field** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        auto grads = vex::gradient(fieldOf(f, "f"));
        for (std::size_t i = 0; i < grads.size(); ++i) out[i] = wrap(std::move(grads[i]));
    });
}

vex_status vex_resample(const vex_field* f, const vex_grid* target, vex_field** out) {
    return guard([&] {
        require(target && out, "null argument");
        *out = wrap(vex::resample(fieldOf(f, "f"), target->grid));
    });
}

vex_status vex_expr_parse(const char* source, int dim, vex_expr** out) {
    return guard([&] {
        require(source && out, "null argument");
        vex::Expr e = vex::parse(source, dim);
        std::string printed = e.print();
        *out = new vex_expr{std::move(e), std::move(printed)};
    });
}

void vex_expr_free(vex_expr* expr) { delete expr; }

vex_status vex_expr_eval(const vex_expr* expr, const double* x, double* out) {
    return guard([&] {
        require(expr && x && out, "null argument");
        vex::Point p{};
        for (int d = 0; d < expr->expr.dim(); ++d) p[d] = x[d];
        *out = expr->expr.evaluate(p);
    });
}

const char* vex_expr_print(const vex_expr* expr) { return expr ? expr->printed.c_str() : ""; }

vex_status vex_expr_sample(const vex_expr* expr, const vex_grid* grid, vex_field** out) {
    return guard([&] {
        require(expr && grid && out, "null argument");
        *out = wrap(vex::sampleToField(expr->expr, grid->grid));
    });
}

vex_status vex_modular(const vex_field* f, const vex_field* p, double* value, int* infinite) {
    return guard([&] {
        require(value != nullptr, "null argument");
        const vex::ExtendedReal m = vex::modular(fieldOf(f, "f"), vex::ExponentField(fieldOf(p, "p")));
        *value = m.value();
        if (infinite) *infinite = m.isInfinite() ? 1 : 0;
    });
}

vex_status vex_luxemburg_norm(const vex_field* f, const vex_field* p, vex_norm_result* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const vex::NormResult r = vex::luxemburgNorm(fieldOf(f, "f"), vex::ExponentField(fieldOf(p, "p")));
        *out = {r.norm, r.modularAtNorm, r.iterations, r.bracket.first, r.bracket.second};
    });
}

vex_status vex_sobolev_norm(const vex_field* f, const vex_field* p, double* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = vex::sobolevNorm(fieldOf(f, "f"), vex::ExponentField(fieldOf(p, "p")));
    });
}

vex_status vex_norm_report(const vex_field* f, const vex_field* p, vex_report** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const vex::SampledField& field = fieldOf(f, "f");
        const vex::ExponentField exponent(fieldOf(p, "p"));
        std::vector<vex::NormEntry> entries{{"f", vex::luxemburgNorm(field, exponent)}};
        bool gradients = true;
        for (int d = 0; d < field.grid().dim(); ++d) gradients = gradients && field.grid().shape(d) >= 3;
        std::map<std::string, double> scalars{{"norm", entries[0].result.norm}};
        if (gradients) {
            double sobolev = entries[0].result.norm;
            const auto grads = vex::gradient(field);
            for (std::size_t i = 0; i < grads.size(); ++i) {
                entries.push_back({"D" + std::to_string(i + 1) + "f", vex::luxemburgNorm(grads[i], exponent)});
                sobolev += entries.back().result.norm;
            }
            scalars["sobolev_norm"] = sobolev;
        }
        vex::Table t = vex::normTable(entries);
        if (gradients) t.trailer.push_back("sobolev_norm: " + vex::formatDouble(scalars["sobolev_norm"]));
        *out = finish(std::move(t), std::move(scalars), true);
    });
}

vex_status vex_embedding_check(const vex_field* f, const vex_field* p, const vex_field* q, const vex_field* r,
                               vex_embedding_result* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const auto w = vex::intersectionEmbeddingCheck(fieldOf(f, "f"), vex::ExponentField(fieldOf(p, "p")),
                                                       vex::ExponentField(fieldOf(q, "q")),
                                                       vex::ExponentField(fieldOf(r, "r")));
        *out = {w.modularP.value(), w.modularQ.value(), w.modularR.value(), w.nodewise ? 1 : 0,
                w.integrated ? 1 : 0, w.firstFailingNode};
    });
}

vex_status vex_gamma_alpha(double alpha, int n, double* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = vex::gammaAlpha(alpha, n);
    });
}

vex_status vex_riesz(const vex_field* f, double alpha, vex_riesz_path path, vex_field** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const vex::SampledField& field = fieldOf(f, "f");
        switch (path) {
            case VEX_RIESZ_DIRECT: *out = wrap(vex::rieszDirect(field, alpha)); return;
            case VEX_RIESZ_GRID_CONV: *out = wrap(vex::rieszGridConv(field, alpha)); return;
            case VEX_RIESZ_SPECTRAL: *out = wrap(vex::rieszSpectral(field, alpha)); return;
        }
        vex::fail(vex::ErrorCode::InvalidArgument, "unknown Riesz evaluation path");
    });
}

vex_status vex_lemma1(const vex_field* f, const double* alphas, size_t count, vex_report** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const auto rep = vex::lemma1Experiment(fieldOf(f, "f"), toVector(alphas, count));
        *out = finish(vex::lemma1Table(rep),
                      {{"f_l2_norm", rep.fNorm},
                       {"error_ratio", rep.errorRatio},
                       {"error_decreasing", rep.errorDecreasing ? 1.0 : 0.0},
                       {"norm_trend", rep.normTrend ? 1.0 : 0.0},
                       {"inner_trend", rep.innerTrend ? 1.0 : 0.0}},
                      rep.verdict());
        // Parseval side kept as a scalar per row for cross-checks.
        for (std::size_t k = 0; k < rep.rows.size(); ++k)
            (*out)->scalars["spectral_inner_" + std::to_string(k)] = rep.rows[k].spectralInner;
    });
}

vex_status vex_maximal_function(const vex_field* f, vex_field** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = wrap(vex::maximalFunction(fieldOf(f, "f")));
    });
}

namespace {
vex_report* probeReport(const vex::ProbeResult& probe) {
    return finish(vex::probeTable(probe), {{"sup_ratio", probe.supRatio}}, true);
}
}  // namespace

vex_status vex_probe(const vex_field* p, const vex_field* const* corpus, const char* const* ids, size_t count,
                     vex_report** out) {
    return guard([&] {
        require(out && (corpus || count == 0), "null argument");
        std::vector<vex::NamedField> items;
        for (std::size_t k = 0; k < count; ++k) {
            std::string id = ids && ids[k] ? std::string(ids[k]) : "field_" + std::to_string(k);
            items.push_back({std::move(id), fieldOf(corpus[k], "corpus field")});
        }
        *out = probeReport(vex::localBoundednessProbe(vex::ExponentField(fieldOf(p, "p")), items));
    });
}

vex_status vex_probe_standard(const vex_field* p, uint64_t seed, vex_report** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const vex::ExponentField exponent(fieldOf(p, "p"));
        *out = probeReport(vex::localBoundednessProbe(exponent, vex::standardCorpus(exponent.grid(), seed)));
    });
}

vex_status vex_probe_shrinking(const vex_field* p, double jump, double max_width, vex_report** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const vex::ExponentField exponent(fieldOf(p, "p"));
        *out = probeReport(
            vex::localBoundednessProbe(exponent, vex::shrinkingIndicators(exponent.grid(), jump, max_width)));
    });
}

vex_status vex_log_holder(const vex_field* p, uint64_t seed, vex_log_holder_result* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const auto e = vex::logHolderEstimate(vex::ExponentField(fieldOf(p, "p")), seed);
        *out = {e.c0Hat, e.pairCount, e.worstPair.first, e.worstPair.second, e.exhaustive ? 1 : 0};
    });
}

vex_status vex_log_holder_report(const vex_field* const* exponents, size_t count, uint64_t seed,
                                 vex_report** out) {
    return guard([&] {
        require(out && (exponents || count == 0), "null argument");
        std::vector<vex::LogHolderLevel> levels;
        double worst = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const vex::ExponentField p(fieldOf(exponents[k], "exponent"));
            levels.push_back({maxSpacing(p.grid()), vex::logHolderEstimate(p, seed)});
            worst = std::max(worst, levels.back().estimate.c0Hat);
        }
        *out = finish(vex::logHolderTable(levels), {{"max_c0_hat", worst}}, true);
    });
}

double vex_psi(double x) { return vex::psi(x); }

vex_status vex_cutoff_g(const double* x, int dim, double lambda, double* out) {
    return guard([&] {
        require(x && out, "null argument");
        require(dim >= 1 && dim <= vex::kMaxDim, "dim must be 1, 2 or 3");
        vex::Point p{};
        for (int d = 0; d < dim; ++d) p[d] = x[d];
        *out = vex::cutoffG(p, dim, lambda);
    });
}

vex_status vex_derivative_bound_check(double lambda, size_t probes, vex_derivative_bound* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const auto w = vex::derivativeBoundCheck(lambda, probes);
        *out = {w.c1, w.argmaxRadius, w.plateauMaxGradient};
    });
}

vex_status vex_integral_representation(const vex_field* f, vex_field** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = wrap(vex::integralRepresentation(vex::gradient(fieldOf(f, "f"))));
    });
}

vex_status vex_omega_lambda(const vex_field* f, double lambda, int axis, vex_field** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = wrap(vex::omegaLambda(vex::gradient(fieldOf(f, "f")), lambda, axis));
    });
}

vex_status vex_omega_domination(const vex_field* f, double lambda, int axis, vex_domination* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const auto c = vex::omegaDomination(vex::gradient(fieldOf(f, "f")), lambda, axis);
        *out = {c.holds ? 1 : 0, c.maxRatio, c.worstNode};
    });
}

vex_status vex_derivative_chain(const vex_field* f, double lambda, int axis, vex_domination* out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const auto c = vex::derivativeChain(vex::gradient(fieldOf(f, "f")), lambda, axis);
        *out = {c.holds ? 1 : 0, c.maxRatio, c.worstNode};
    });
}

vex_status vex_approximate(const vex_field* f, const vex_field* p, const double* lambdas, size_t count,
                           vex_report** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        const vex::SampledField& field = fieldOf(f, "f");
        const auto rep = vex::approximateBySmooth(field, vex::ExponentField(fieldOf(p, "p")), toVector(lambdas, count));
        *out = finish(vex::approxTable(rep, field.grid().dim()), {}, rep.verdict);
    });
}

const char* vex_density_verdict_name(vex_density_verdict verdict) {
    return vex::densityVerdictName(static_cast<vex::DensityVerdict>(verdict));
}

vex_status vex_density_condition(double p_minus, double p_plus, int n, int maximal_bounded, int log_holder,
                                 vex_density_verdict* verdict, const char** reason) {
    static_assert(int(vex::DensityVerdict::Undecided) == VEX_UNDECIDED);
    return guard([&] {
        require(verdict != nullptr, "null argument");
        const auto d = vex::densityCondition(p_minus, p_plus, n, {maximal_bounded != 0, log_holder != 0});
        *verdict = static_cast<vex_density_verdict>(d.verdict);
        lastReason = d.reason;
        if (reason) *reason = lastReason.c_str();
    });
}

void vex_report_free(vex_report* report) { delete report; }

size_t vex_report_rows(const vex_report* report) { return report ? report->table.rows.size() : 0; }

size_t vex_report_columns(const vex_report* report) { return report ? report->table.columns.size() : 0; }

const char* vex_report_column_name(const vex_report* report, size_t column) {
    if (!report || column >= report->table.columns.size()) return nullptr;
    return report->table.columns[column].c_str();
}

const char* vex_report_cell(const vex_report* report, size_t row, size_t column) {
    if (!report || row >= report->table.rows.size() || column >= report->table.rows[row].size()) return nullptr;
    return report->table.rows[row][column].c_str();
}

vex_status vex_report_value(const vex_report* report, size_t row, size_t column, double* out) {
    return guard([&] {
        require(report && out, "null argument");
        require(row < report->values.size() && column < report->values[row].size(), "cell out of range");
        const auto& v = report->values[row][column];
        require(v.has_value(), "cell is not numeric");
        *out = *v;
    });
}

int vex_report_verdict(const vex_report* report) { return report && report->verdict ? 1 : 0; }

vex_status vex_report_scalar(const vex_report* report, const char* name, double* out) {
    return guard([&] {
        require(report && name && out, "null argument");
        const auto it = report->scalars.find(name);
        if (it == report->scalars.end()) vex::fail(vex::ErrorCode::InvalidArgument, std::string("no scalar ") + name);
        *out = it->second;
    });
}

const char* vex_report_csv(const vex_report* report) { return report ? report->csv.c_str() : ""; }

vex_status vex_report_write(const vex_report* report, const char* path) {
    return guard([&] {
        require(report && path, "null argument");
        std::ofstream os(path, std::ios::binary);
        if (!os) vex::fail(vex::ErrorCode::IoError, std::string("cannot open ") + path + " for writing");
        os << report->csv;
        if (!os.flush()) vex::fail(vex::ErrorCode::IoError, std::string("write failed for ") + path);
    });
}

}  // extern "C"
