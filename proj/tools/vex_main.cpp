// vex: command-line front end over the libvex C API.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error,
// 3 hypothesis violation, 4 failed --assert.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vex/vex.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitAssert = 4;

struct ApiError {
    vex_status status;
    std::string message;
};

struct ConfigError {
    std::string message;
};

void check(vex_status s) {
    if (s != VEX_OK) throw ApiError{s, vex_last_error()};
}

struct GridFree { void operator()(vex_grid* g) const { vex_grid_free(g); } };
struct FieldFree { void operator()(vex_field* f) const { vex_field_free(f); } };
struct ExprFree { void operator()(vex_expr* e) const { vex_expr_free(e); } };
struct ReportFree { void operator()(vex_report* r) const { vex_report_free(r); } };
using GridPtr = std::unique_ptr<vex_grid, GridFree>;
using FieldPtr = std::unique_ptr<vex_field, FieldFree>;
using ExprPtr = std::unique_ptr<vex_expr, ExprFree>;
using ReportPtr = std::unique_ptr<vex_report, ReportFree>;

std::vector<double> parseList(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(v))
            throw ConfigError{std::string(flag) + ": '" + item + "' is not a number"};
        out.push_back(v);
    }
    return out;
}

struct Common {
    int dim = 1;
    std::string box = "0,1";
    std::string nodes = "257";
    std::string f, fFile, p, pFile;
    std::string out;
    bool assertVerdict = false;
    std::string seed = "0x5EED";
    unsigned threads = 0;

    std::uint64_t seedValue() const {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(seed.c_str(), &end, 0);
        if (seed.empty() || *end != '\0') throw ConfigError{"--seed: '" + seed + "' is not an integer"};
        return v;
    }

    GridPtr grid(int levelDoublings = 0) const {
        if (dim < 1 || dim > 3) throw ConfigError{"--dim must be 1, 2 or 3"};
        const auto b = parseList(box, "--box");
        const auto nv = parseList(nodes, "--nodes");
        std::vector<double> lo(dim), hi(dim);
        std::vector<size_t> nn(dim);
        if (b.size() == 2) {
            for (int d = 0; d < dim; ++d) lo[d] = b[0], hi[d] = b[1];
        } else if (b.size() == std::size_t(2 * dim)) {
            for (int d = 0; d < dim; ++d) lo[d] = b[2 * d], hi[d] = b[2 * d + 1];
        } else {
            throw ConfigError{"--box takes lo,hi or lo1,hi1,...,loN,hiN"};
        }
        if (nv.size() != 1 && nv.size() != std::size_t(dim)) throw ConfigError{"--nodes takes 1 or dim values"};
        for (int d = 0; d < dim; ++d) {
            const double v = nv.size() == 1 ? nv[0] : nv[d];
            if (v < 2 || v != std::floor(v)) throw ConfigError{"--nodes entries must be integers >= 2"};
            nn[d] = static_cast<size_t>(v);
            for (int k = 0; k < levelDoublings; ++k) nn[d] = 2 * (nn[d] - 1) + 1;
        }
        vex_grid* g = nullptr;
        check(vex_grid_box(dim, lo.data(), hi.data(), nn.data(), &g));
        return GridPtr(g);
    }
};

FieldPtr sample(const std::string& source, const vex_grid* g) {
    vex_expr* e = nullptr;
    check(vex_expr_parse(source.c_str(), vex_grid_dim(g), &e));
    ExprPtr expr(e);
    vex_field* f = nullptr;
    check(vex_expr_sample(expr.get(), g, &f));
    return FieldPtr(f);
}

FieldPtr load(const std::string& path) {
    vex_field* f = nullptr;
    check(vex_field_load(path.c_str(), &f));
    return FieldPtr(f);
}

GridPtr gridOf(const vex_field* f) {
    vex_grid* g = nullptr;
    check(vex_field_grid(f, &g));
    return GridPtr(g);
}

// f from --f-file or --f; its grid is the one every other field uses.
FieldPtr buildF(const Common& c) {
    if (!c.fFile.empty()) return load(c.fFile);
    if (c.f.empty()) throw ConfigError{"one of --f or --f-file is required"};
    return sample(c.f, c.grid().get());
}

FieldPtr buildP(const Common& c, const vex_grid* g) {
    if (!c.pFile.empty()) return load(c.pFile);
    if (c.p.empty()) throw ConfigError{"one of --p or --p-file is required"};
    return sample(c.p, g);
}

void emit(const Common& c, const vex_report* r) {
    if (c.out.empty()) {
        std::cout << vex_report_csv(r);
    } else {
        check(vex_report_write(r, c.out.c_str()));
    }
}

double scalar(const vex_report* r, const char* name) {
    double v = 0.0;
    check(vex_report_scalar(r, name, &v));
    return v;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int runNorm(const Common& c) {
    FieldPtr f = buildF(c);
    GridPtr g = gridOf(f.get());
    FieldPtr p = buildP(c, g.get());
    vex_report* raw = nullptr;
    check(vex_norm_report(f.get(), p.get(), &raw));
    ReportPtr r(raw);
    emit(c, r.get());
    if (!c.out.empty()) std::cout << "norm " << fmt(scalar(r.get(), "norm")) << "\n";
    if (c.assertVerdict) {
        for (size_t row = 0; row < vex_report_rows(r.get()); ++row) {
            double lambda = 0.0, rho = 0.0;
            check(vex_report_value(r.get(), row, 1, &lambda));
            check(vex_report_value(r.get(), row, 2, &rho));
            if (lambda > 0.0 && std::abs(rho - 1.0) > 1e-9) return kExitAssert;
        }
    }
    return 0;
}

int runRiesz(const Common& c, double alpha, const std::string& path, const std::string& at) {
    vex_riesz_path which;
    if (path == "direct")
        which = VEX_RIESZ_DIRECT;
    else if (path == "grid")
        which = VEX_RIESZ_GRID_CONV;
    else if (path == "spectral")
        which = VEX_RIESZ_SPECTRAL;
    else
        throw ConfigError{"--path must be direct, grid or spectral"};
    FieldPtr f = buildF(c);
    vex_field* raw = nullptr;
    check(vex_riesz(f.get(), alpha, which, &raw));
    FieldPtr result(raw);
    if (!c.out.empty()) check(vex_field_save(result.get(), c.out.c_str()));

    GridPtr g = gridOf(result.get());
    const int dim = vex_grid_dim(g.get());
    const double* v = vex_field_values(result.get());
    double sum2 = 0.0;
    for (size_t i = 0; i < vex_field_size(result.get()); ++i) sum2 += v[i] * v[i];
    double origin[3], spacing[3];
    size_t shape[3];
    vex_grid_geometry(g.get(), origin, spacing, shape);
    double cell = 1.0;
    for (int d = 0; d < dim; ++d) cell *= spacing[d];
    std::cout << "l2_norm " << fmt(std::sqrt(sum2 * cell)) << "\n";
    if (!at.empty()) {
        const auto x = parseList(at, "--at");
        if (x.size() != std::size_t(dim)) throw ConfigError{"--at takes dim coordinates"};
        size_t flat = 0;
        for (int d = 0; d < dim; ++d) {
            const double k = std::round((x[d] - origin[d]) / spacing[d]);
            if (k < 0 || k >= double(shape[d])) throw ConfigError{"--at lies outside the grid"};
            flat = flat * shape[d] + static_cast<size_t>(k);
        }
        std::cout << "value " << fmt(v[flat]) << "\n";
    }
    return 0;
}

int runLemma1(const Common& c, const std::string& schedule) {
    FieldPtr f = buildF(c);
    const auto alphas = parseList(schedule, "--alpha-schedule");
    vex_report* raw = nullptr;
    check(vex_lemma1(f.get(), alphas.data(), alphas.size(), &raw));
    ReportPtr r(raw);
    emit(c, r.get());
    return c.assertVerdict && !vex_report_verdict(r.get()) ? kExitAssert : 0;
}

int runMaximal(const Common& c, const std::string& probe, double jump, double maxWidth, double maxRatio) {
    if (probe == "none") {
        FieldPtr f = buildF(c);
        vex_field* raw = nullptr;
        check(vex_maximal_function(f.get(), &raw));
        FieldPtr mf(raw);
        if (c.out.empty())
            throw ConfigError{"maximal without --probe writes a field and needs --out"};
        check(vex_field_save(mf.get(), c.out.c_str()));
        return 0;
    }
    GridPtr g = c.fFile.empty() ? c.grid() : gridOf(load(c.fFile).get());
    FieldPtr p = buildP(c, g.get());
    vex_report* raw = nullptr;
    if (probe == "standard")
        check(vex_probe_standard(p.get(), c.seedValue(), &raw));
    else if (probe == "shrinking")
        check(vex_probe_shrinking(p.get(), jump, maxWidth, &raw));
    else
        throw ConfigError{"--probe must be none, standard or shrinking"};
    ReportPtr r(raw);
    emit(c, r.get());
    return c.assertVerdict && scalar(r.get(), "sup_ratio") > maxRatio ? kExitAssert : 0;
}

int runLogHolder(const Common& c, int levels) {
    if (levels < 1) throw ConfigError{"--levels must be >= 1"};
    if (levels > 1 && c.p.empty()) throw ConfigError{"--levels > 1 needs an expression --p"};
    std::vector<FieldPtr> fields;
    if (levels == 1 && !c.pFile.empty()) {
        fields.push_back(load(c.pFile));
    } else {
        if (c.p.empty()) throw ConfigError{"one of --p or --p-file is required"};
        for (int k = 0; k < levels; ++k) fields.push_back(sample(c.p, c.grid(k).get()));
    }
    std::vector<const vex_field*> ptrs;
    for (const auto& f : fields) ptrs.push_back(f.get());
    vex_report* raw = nullptr;
    check(vex_log_holder_report(ptrs.data(), ptrs.size(), c.seedValue(), &raw));
    ReportPtr r(raw);
    emit(c, r.get());
    if (c.assertVerdict) {
        // Refinement must not lower the estimate.
        double prev = 0.0;
        for (size_t row = 0; row < vex_report_rows(r.get()); ++row) {
            double v = 0.0;
            check(vex_report_value(r.get(), row, 1, &v));
            if (v < prev * (1.0 - 1e-12)) return kExitAssert;
            prev = v;
        }
    }
    return 0;
}

int runDensity(const Common& c, int n, double pmin, double pmax, bool maximal, bool logHolder) {
    vex_density_verdict verdict;
    const char* reason = nullptr;
    check(vex_density_condition(pmin, pmax, n, maximal ? 1 : 0, logHolder ? 1 : 0, &verdict, &reason));
    std::cout << vex_density_verdict_name(verdict) << "\n" << reason << "\n";
    return c.assertVerdict && verdict == VEX_UNDECIDED ? kExitAssert : 0;
}

int runApprox(Common c, const std::string& schedule, bool pminViolation) {
    if (pminViolation) {
        c.p = "1.5";
        c.pFile.clear();
        if (c.f.empty() && c.fFile.empty()) c.f = "0";
    }
    FieldPtr f = buildF(c);
    GridPtr g = gridOf(f.get());
    FieldPtr p = buildP(c, g.get());
    const auto lambdas = parseList(schedule, "--lambda-schedule");
    vex_report* raw = nullptr;
    check(vex_approximate(f.get(), p.get(), lambdas.data(), lambdas.size(), &raw));
    ReportPtr r(raw);
    emit(c, r.get());
    return c.assertVerdict && !vex_report_verdict(r.get()) ? kExitAssert : 0;
}

void addCommon(CLI::App* app, Common& c, bool needsGrid = true) {
    if (needsGrid) {
        app->add_option("--dim", c.dim, "Spatial dimension (1-3)")->capture_default_str();
        app->add_option("--box", c.box, "lo,hi for every axis or lo1,hi1,...")->capture_default_str();
        app->add_option("--nodes", c.nodes, "Nodes per axis: one value or one per axis")->capture_default_str();
        app->add_option("--f", c.f, "Expression for f");
        app->add_option("--f-file", c.fFile, "VEXF file for f");
        app->add_option("--p", c.p, "Expression for the exponent p");
        app->add_option("--p-file", c.pFile, "VEXF file for p");
        app->add_option("--seed", c.seed, "Seed for sampling and corpora")->capture_default_str();
    }
    app->add_option("--out", c.out, "Output path (CSV report or VEXF field)");
    app->add_flag("--assert", c.assertVerdict, "Exit 4 when the verdict fails");
    app->add_option("--threads", c.threads, "Cap on worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable exponent Lebesgue and Sobolev space experiments"};
    app.require_subcommand(1);

    Common c;

    auto* norm = app.add_subcommand("norm", "Luxemburg norms of f and its grid derivatives");
    addCommon(norm, c);

    double alpha = 0.5;
    std::string path = "grid", at;
    auto* riesz = app.add_subcommand("riesz", "Riesz potential I_alpha f");
    addCommon(riesz, c);
    riesz->add_option("--alpha", alpha, "Order alpha in (0, n)")->capture_default_str();
    riesz->add_option("--path", path, "direct, grid or spectral")->capture_default_str();
    riesz->add_option("--at", at, "Print the value at the node nearest to this point");

    std::string alphaSchedule = "0.4,0.2,0.1,0.05,0.025";
    auto* lemma1 = app.add_subcommand("lemma1", "I_alpha f -> f as alpha -> 0");
    addCommon(lemma1, c);
    lemma1->add_option("--alpha-schedule", alphaSchedule, "Comma-separated alphas")->capture_default_str();

    std::string probe = "none";
    double jump = 0.0, maxWidth = 1.0, maxRatio = 5.0;
    auto* maximal = app.add_subcommand("maximal", "Maximal function or local boundedness probe");
    addCommon(maximal, c);
    maximal->add_option("--probe", probe, "none, standard or shrinking")->capture_default_str();
    maximal->add_option("--jump", jump, "Right end of the shrinking indicators")->capture_default_str();
    maximal->add_option("--max-width", maxWidth, "Widest shrinking indicator")->capture_default_str();
    maximal->add_option("--max-ratio", maxRatio, "Probe ratio bound for --assert")->capture_default_str();

    int levels = 1;
    auto* logholder = app.add_subcommand("logholder", "Log-Holder modulus estimate of p");
    addCommon(logholder, c);
    logholder->add_option("--levels", levels, "Number of grids, each refining the last by 2")->capture_default_str();

    int n = 3;
    double pmin = 2.0, pmax = 2.0;
    bool maximalBounded = false, logHolder = false;
    auto* density = app.add_subcommand("density-check", "Sufficient conditions for density of smooth functions");
    addCommon(density, c, false);
    density->add_option("--n", n, "Dimension")->required();
    density->add_option("--pmin", pmin, "p_minus")->required();
    density->add_option("--pmax", pmax, "p_plus")->required();
    density->add_flag("--maximal-bounded", maximalBounded, "Declare the maximal operator locally bounded");
    density->add_flag("--log-holder", logHolder, "Declare p locally log-Holder continuous");

    std::string lambdaSchedule = "2,4,8";
    bool pminViolation = false;
    auto* approx = app.add_subcommand("approx", "Smooth approximants S_lambda and their Sobolev errors");
    addCommon(approx, c);
    approx->add_option("--lambda-schedule", lambdaSchedule, "Comma-separated lambdas > 1")->capture_default_str();
    approx->add_flag("--pmin-violation", pminViolation, "Run with p = 1.5 to exercise the hypothesis check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        vex_set_threads(c.threads);
        if (*norm) return runNorm(c);
        if (*riesz) return runRiesz(c, alpha, path, at);
        if (*lemma1) return runLemma1(c, alphaSchedule);
        if (*maximal) return runMaximal(c, probe, jump, maxWidth, maxRatio);
        if (*logholder) return runLogHolder(c, levels);
        if (*density) return runDensity(c, n, pmin, pmax, maximalBounded, logHolder);
        if (*approx) return runApprox(c, lambdaSchedule, pminViolation);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitConfig;
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.message << "\n";
        switch (e.status) {
            case VEX_ERR_HYPOTHESIS_VIOLATION: return kExitHypothesis;
            case VEX_ERR_SOLVER_FAILURE:
            case VEX_ERR_INTERNAL: return kExitFailure;
            default: return kExitConfig;
        }
    }
    return kExitConfig;
}
