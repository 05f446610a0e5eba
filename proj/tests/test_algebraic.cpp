#include "helpers.h"

#include "reebarr/algebraic.h"
#include "reebarr/error.h"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace reebarr;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("unit disk model is the unit sphere") {
    const Arrangement d = test::disk();
    const AlgebraicModel m = emit_model(d, default_labeling(d));
    CHECK(m.variables == std::vector<std::string>{"x1", "x2", "y0_0"});
    CHECK(m.ambient_dim == 3);
    CHECK(m.model_dim == 2);
    REQUIRE(m.equations.size() == 1);
    const Polynomial sphere{{{0, 0, 0}, 1.0}, {{2, 0, 0}, -1.0}, {{0, 2, 0}, -1.0}, {{0, 0, 2}, -1.0}};
    CHECK(m.equations[0] == sphere);
    CHECK(m.sign_vector == std::vector<int>{-1});
}

TEST_CASE("annulus model is the product of its side conditions") {
    const Arrangement a = test::annulus();
    const Labeling lab = default_labeling(a);
    CHECK(lab.m[0] == lab.m[1]);  // disjoint circles share a label
    const AlgebraicModel m = emit_model(a, lab);
    REQUIRE(m.equations.size() == 1);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 100; ++k) {
        const double x = u(gen), y = u(gen), w = u(gen);
        const double r2 = x * x + y * y;
        const double expect = (4 - r2) * (r2 - 1) - w * w;
        CHECK(evaluate(m.equations[0], {x, y, w}) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("labels separate circles that meet") {
    const Scene sc = load_scene(test::data("example2.json"));
    const Labeling lab = default_labeling(sc.arr);
    for (const DoublePoint& dp : double_points(sc.arr)) CHECK(lab.m[dp.i1] != lab.m[dp.i2]);
    CHECK_NOTHROW(check_labeling(sc.arr, lab));

    Labeling same = lab;
    for (auto& v : same.m) v = 0;
    same.m0 = {0};
    CHECK(code_of([&] { check_labeling(sc.arr, same); }) == ErrorCode::LabelingInvalid);
    Labeling gap = lab;
    gap.m0.push_back(0);  // a label with no circle
    CHECK(code_of([&] { check_labeling(sc.arr, gap); }) == ErrorCode::LabelingInvalid);
}

TEST_CASE("extra variables widen the ambient space") {
    const Arrangement d = test::disk();
    Labeling lab = default_labeling(d);
    lab.m0[0] = 2;
    const AlgebraicModel m = emit_model(d, lab);
    CHECK(m.ambient_dim == 5);
    CHECK(m.variables.back() == "y0_2");
    CHECK(spot_check_model(m, d, 500).violation_count == 0);
}

TEST_CASE("gradient matches central differences") {
    const Scene sc = load_scene(test::data("example2.json"));
    const AlgebraicModel m = emit_model(sc.arr, default_labeling(sc.arr));
    const std::vector<double> v{0.3, -0.2, 0.5, 0.1, -0.7};
    for (const Polynomial& p : m.equations) {
        const auto g = gradient(p, v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto a = v, b = v;
            const double h = 1e-6;
            a[i] += h;
            b[i] -= h;
            CHECK(g[i] == doctest::Approx((evaluate(p, a) - evaluate(p, b)) / (2 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("json round trip keeps coefficients") {
    const Scene sc = load_scene(test::data("example2.json"));
    const AlgebraicModel m = emit_model(sc.arr, default_labeling(sc.arr));
    const auto eqs = parse_model_equations(m.to_json());
    REQUIRE(eqs.size() == m.equations.size());
    for (std::size_t i = 0; i < eqs.size(); ++i) CHECK(eqs[i] == m.equations[i]);
    CHECK(code_of([] { parse_model_equations("{\"equations\": 3}"); }) == ErrorCode::ParseError);
    CHECK(m.text().find("F2 =") != std::string::npos);
}

TEST_CASE("spot checks pass for the true model and catch a wrong sign") {
    for (const char* f : {"unit_disk.json", "annulus.json", "example2.json"}) {
        const Scene sc = load_scene(test::data(f));
        const SpotCheckReport r = spot_check_model(emit_model(sc.arr, default_labeling(sc.arr)), sc.arr, 2000);
        INFO(f);
        CHECK(r.violation_count == 0);
        CHECK(r.interior_samples > 100);
        CHECK(r.exterior_samples > 100);
    }
    const Arrangement a = test::annulus();
    const AlgebraicModel wrong = emit_model_with_signs(a, default_labeling(a), {-1, -1});
    CHECK(spot_check_model(wrong, a, 2000).violation_count > 0);
}
