#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "vex/vex.h"

namespace {

vex_grid* line(double lo, double hi, size_t n) {
    vex_grid* g = nullptr;
    REQUIRE(vex_grid_box(1, &lo, &hi, &n, &g) == VEX_OK);
    return g;
}

vex_field* sample(const char* text, int dim, const vex_grid* g) {
    vex_expr* e = nullptr;
    REQUIRE(vex_expr_parse(text, dim, &e) == VEX_OK);
    vex_field* f = nullptr;
    REQUIRE(vex_expr_sample(e, g, &f) == VEX_OK);
    vex_expr_free(e);
    return f;
}

}  // namespace

TEST_CASE("status names and last error") {
    CHECK(std::string(vex_status_name(VEX_OK)) == "Ok");
    CHECK(std::string(vex_status_name(VEX_ERR_SYNTAX)) == "SyntaxError");
    vex_expr* e = nullptr;
    CHECK(vex_expr_parse("1 +", 1, &e) == VEX_ERR_SYNTAX);
    CHECK(e == nullptr);
    CHECK(std::string(vex_last_error()).find("column") != std::string::npos);
    CHECK(vex_expr_parse("x2", 1, &e) == VEX_ERR_DIMENSION);
    CHECK(vex_expr_parse("zz", 1, &e) == VEX_ERR_UNKNOWN_IDENTIFIER);
    CHECK(vex_expr_parse(nullptr, 1, &e) == VEX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("grid and field lifecycle") {
    vex_grid* g = line(0, 1, 11);
    CHECK(vex_grid_dim(g) == 1);
    CHECK(vex_grid_size(g) == 11);
    double x[3] = {};
    CHECK(vex_grid_node(g, 10, x) == VEX_OK);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(vex_grid_node(g, 11, x) == VEX_ERR_INVALID_ARGUMENT);

    std::vector<double> v(11, 2.0);
    vex_field* f = nullptr;
    CHECK(vex_field_create(g, v.data(), 10, &f) == VEX_ERR_INVALID_ARGUMENT);
    v[3] = NAN;
    CHECK(vex_field_create(g, v.data(), 11, &f) == VEX_ERR_INVALID_ARGUMENT);
    v[3] = 2.0;
    REQUIRE(vex_field_create(g, v.data(), 11, &f) == VEX_OK);
    double total = 0;
    CHECK(vex_integrate(f, &total) == VEX_OK);
    CHECK(total == doctest::Approx(2.2));

    const char* path = "capi_roundtrip.vexf";
    CHECK(vex_field_save(f, path) == VEX_OK);
    vex_field* back = nullptr;
    REQUIRE(vex_field_load(path, &back) == VEX_OK);
    CHECK(vex_field_size(back) == 11);
    CHECK(vex_field_values(back)[5] == 2.0);
    std::remove(path);
    CHECK(vex_field_load("/nonexistent/dir/x.vexf", &back) == VEX_ERR_IO);

    vex_field_free(back);
    vex_field_free(f);
    vex_grid_free(g);
    vex_grid_free(nullptr);
    vex_field_free(nullptr);
}

TEST_CASE("norms and reports") {
    vex_grid* g = line(0, 1, 2001);
    vex_field* f = sample("2", 1, g);
    vex_field* p = sample("step(2, 4, x1 - 0.5)", 1, g);
    vex_norm_result r{};
    REQUIRE(vex_luxemburg_norm(f, p, &r) == VEX_OK);
    CHECK(std::abs(r.norm - 2.0) <= 2e-3);
    CHECK(std::abs(r.modular_at_norm - 1.0) <= 1e-9);

    vex_report* rep = nullptr;
    REQUIRE(vex_norm_report(f, p, &rep) == VEX_OK);
    CHECK(vex_report_rows(rep) >= 1);
    double norm = 0;
    CHECK(vex_report_scalar(rep, "norm", &norm) == VEX_OK);
    CHECK(norm == r.norm);
    CHECK(vex_report_scalar(rep, "no_such", &norm) == VEX_ERR_INVALID_ARGUMENT);
    const std::string csv = vex_report_csv(rep);
    CHECK(csv.rfind("# experiment: luxemburg_norm\n", 0) == 0);
    vex_report_free(rep);

    vex_field* low = sample("1", 1, g);
    double value = 0;
    int inf = 0;
    CHECK(vex_modular(f, low, &value, &inf) == VEX_ERR_DOMAIN);
    vex_field_free(low);

    vex_field_free(p);
    vex_field_free(f);
    vex_grid_free(g);
}

TEST_CASE("riesz paths and the identity limit through the api") {
    vex_grid* g = line(-4, 4, 1024);
    vex_field* f = sample("exp(-1/max(1-x1^2,1e-9))*step(1,0,abs(x1)-1) - 2*exp(-1/max(1-4*x1^2,1e-9))*step(1,0,abs(2*x1)-1)", 1, g);
    vex_field* a = nullptr;
    vex_field* b = nullptr;
    REQUIRE(vex_riesz(f, 0.5, VEX_RIESZ_DIRECT, &a) == VEX_OK);
    REQUIRE(vex_riesz(f, 0.5, VEX_RIESZ_GRID_CONV, &b) == VEX_OK);
    double diff = 0, norm = 0;
    for (size_t i = 0; i < vex_field_size(a); ++i) {
        diff = std::max(diff, std::abs(vex_field_values(a)[i] - vex_field_values(b)[i]));
        norm = std::max(norm, std::abs(vex_field_values(a)[i]));
    }
    CHECK(diff <= 1e-10 * norm);
    vex_field* c = nullptr;
    CHECK(vex_riesz(f, 1.5, VEX_RIESZ_DIRECT, &c) == VEX_ERR_DOMAIN);

    const double alphas[] = {0.4, 0.2, 0.1, 0.05};
    vex_report* rep = nullptr;
    REQUIRE(vex_lemma1(f, alphas, 4, &rep) == VEX_OK);
    CHECK(vex_report_rows(rep) == 4);
    CHECK(vex_report_verdict(rep) == 1);
    double ratio = 0;
    CHECK(vex_report_scalar(rep, "error_ratio", &ratio) == VEX_OK);
    CHECK(ratio < 1.0);
    vex_report_free(rep);
    vex_field_free(a);
    vex_field_free(b);
    vex_field_free(f);
    vex_grid_free(g);
}

TEST_CASE("density condition through the api") {
    vex_density_verdict v{};
    const char* reason = nullptr;
    REQUIRE(vex_density_condition(2, 6, 3, 0, 0, &v, &reason) == VEX_OK);
    CHECK(v == VEX_DENSE_BY_RANGE);
    CHECK(std::string(vex_density_verdict_name(v)) == "DENSE_BY_RANGE");
    CHECK(reason != nullptr);
    CHECK(vex_density_condition(2, 6.5, 3, 0, 0, &v, nullptr) == VEX_OK);
    CHECK(v == VEX_UNDECIDED);
    CHECK(vex_density_condition(2, 100, 2, 0, 0, &v, nullptr) == VEX_OK);
    CHECK(v == VEX_DENSE_BY_DIMENSION);
    CHECK(vex_density_condition(4, 3, 3, 0, 0, &v, nullptr) != VEX_OK);
    CHECK(vex_psi(1.5) == doctest::Approx(0.5));
}

TEST_CASE("approximation hypothesis violation maps to its status") {
    const double lo[] = {-4, -4}, hi[] = {4, 4};
    const size_t n[] = {64, 64};
    vex_grid* g = nullptr;
    REQUIRE(vex_grid_box(2, lo, hi, n, &g) == VEX_OK);
    vex_field* f = sample("max(0,1-abs(x1)/2)*max(0,1-abs(x2)/2)", 2, g);
    vex_field* p = sample("1.5", 2, g);
    const double lambdas[] = {2, 4};
    vex_report* rep = nullptr;
    CHECK(vex_approximate(f, p, lambdas, 2, &rep) == VEX_ERR_HYPOTHESIS_VIOLATION);
    CHECK(rep == nullptr);
    vex_field_free(p);
    p = sample("2.5", 2, g);
    REQUIRE(vex_approximate(f, p, lambdas, 2, &rep) == VEX_OK);
    CHECK(vex_report_rows(rep) == 2);
    vex_report_free(rep);
    vex_field_free(p);
    vex_field_free(f);
    vex_grid_free(g);
}
