#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "warpineq/geometry.hpp"

using namespace warpineq;

namespace {

ManifoldModel model_of(ProfileFamily fam, int N, ProfileParams params = {}) {
    return ManifoldModel(N, make_builtin_profile(fam, params));
}

}  // namespace

TEST_CASE("curvature samples") {
    auto s = curvature_at(model_of(ProfileFamily::hyperbolic, 4), 1.0);
    CHECK(s.k_rad == -1.0);
    CHECK(s.h_tan == -1.0);
    CHECK(s.lambda_rad == 3.0);

    auto e = curvature_at(model_of(ProfileFamily::euclidean, 5), 2.0);
    CHECK(e.k_rad == 0.0);
    CHECK(e.h_tan == 0.0);
    CHECK(e.lambda_rad == 0.0);

    auto g = curvature_at(model_of(ProfileFamily::gauss, 3, {.m = 1}), 1.0);
    CHECK(g.k_rad == doctest::Approx(-10.0).epsilon(1e-13));

    CHECK_THROWS_AS(curvature_at(model_of(ProfileFamily::hyperbolic, 3), 1e-7),
                    EvaluationDomainError);
}

TEST_CASE("model requires N >= 3") {
    CHECK_THROWS_AS(ManifoldModel(2, make_builtin_profile(ProfileFamily::hyperbolic)),
                    DimensionError);
}

TEST_CASE("prototype closed forms at pinned points") {
    auto a = prototype_curvature_closed_form(ProfileFamily::exp_tail,
                                             {.A = 1.0, .b = 1.0, .a = 0.0, .R = 1.0}, 3, 2.0);
    CHECK(a.lambda_rad == doctest::Approx(2.0).epsilon(1e-14));

    auto g = prototype_curvature_closed_form(ProfileFamily::gauss, {.m = 1}, 5, 1.0);
    CHECK(g.lambda_rad ==
          doctest::Approx(16.0 + 20.0 + 2.0 - 2.0 * std::exp(-2.0)).epsilon(1e-14));

    for (double r : {1.0, 2.0, 7.5}) {
        auto k = prototype_curvature_closed_form(ProfileFamily::r_exp_tail,
                                                 {.A = 1.0, .b = 1.0, .a = -1.0, .R = 1.0}, 4, r);
        CHECK(k.k_rad == doctest::Approx(0.0).epsilon(1e-15));
    }

    CHECK_THROWS_AS(prototype_curvature_closed_form(ProfileFamily::hyperbolic, {}, 3, 1.0),
                    InvalidParameterError);
}

TEST_CASE("closed-form curvature agrees with the profile derivatives") {
    oracles::Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        ProfileParams p;
        ProfileFamily fam;
        double r;
        switch (trial % 3) {
            case 0:
                fam = ProfileFamily::exp_tail;
                p = {.A = rng.uniform(0.5, 2.0), .b = rng.uniform(0.5, 2.0),
                     .a = rng.uniform(-1.0, 2.0), .R = 1.0};
                r = rng.uniform(1.1, 6.0);
                break;
            case 1:
                fam = ProfileFamily::r_exp_tail;
                p = {.A = rng.uniform(0.5, 2.0), .b = rng.uniform(0.5, 2.0),
                     .a = rng.uniform(-1.0, 2.0), .R = 1.0};
                r = rng.uniform(1.1, 6.0);
                break;
            default:
                fam = ProfileFamily::gauss;
                p = {.m = rng.uniform_int(1, 3)};
                r = rng.uniform(0.3, 2.5);
                break;
        }
        const int N = rng.uniform_int(3, 8);
        ManifoldModel model(N, make_builtin_profile(fam, p));
        const auto direct = curvature_at(model, r);
        const auto closed = prototype_curvature_closed_form(fam, p, N, r);
        CHECK(direct.k_rad ==
              doctest::Approx(closed.k_rad).epsilon(1e-10));
        CHECK(direct.h_tan ==
              doctest::Approx(closed.h_tan).epsilon(1e-10));
        CHECK(direct.lambda_rad ==
              doctest::Approx(closed.lambda_rad).epsilon(1e-10));
    }
}

TEST_CASE("curvature identity and hyperbolic constancy") {
    oracles::Rng rng(99);
    for (int i = 0; i < 50; ++i) {
        const int N = rng.uniform_int(3, 9);
        const double r = rng.uniform(0.05, 15.0);
        auto s = curvature_at(model_of(ProfileFamily::hyperbolic, N), r);
        CHECK(s.k_rad == -1.0);
        CHECK(s.h_tan == -1.0);
        CHECK(s.lambda_rad == static_cast<double>(N - 1));

        // recompute the defining combination independently
        auto g = curvature_at(model_of(ProfileFamily::gauss, N, {.m = 1}), rng.uniform(0.1, 5.0));
        const double recombined = -2.0 * g.k_rad - (N - 3) * g.h_tan;
        CHECK(g.lambda_rad ==
              doctest::Approx(recombined).epsilon(1e-12));
    }
}

TEST_CASE("curvature-bound models have lambda >= N-1") {
    oracles::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const int N = rng.uniform_int(3, 8);
        const double r = rng.uniform(0.05, 12.0);
        CHECK(curvature_at(model_of(ProfileFamily::hyperbolic, N), r).lambda_rad >= N - 1.0);
        CHECK(curvature_at(model_of(ProfileFamily::gauss, N, {.m = 1}), r).lambda_rad >=
              (N - 1.0) * (1.0 - 1e-14));
    }
}

TEST_CASE("radial laplacian") {
    RadialTestFunction sq;
    sq.value = [](double r) { return r * r; };
    sq.deriv1 = [](double r) { return 2.0 * r; };
    sq.deriv2 = [](double) { return 2.0; };
    sq.support_lo = 0.0;
    sq.support_hi = 10.0;
    CHECK(radial_laplacian(model_of(ProfileFamily::euclidean, 3), sq, 1.0) == doctest::Approx(6.0));

    RadialTestFunction constant;
    constant.value = [](double) { return 3.0; };
    constant.deriv1 = [](double) { return 0.0; };
    constant.deriv2 = [](double) { return 0.0; };
    CHECK(radial_laplacian(model_of(ProfileFamily::hyperbolic, 6), constant, 2.0) == 0.0);
}

TEST_CASE("modal laplacian") {
    RadialTestFunction lin;
    lin.value = [](double r) { return r; };
    lin.deriv1 = [](double) { return 1.0; };
    lin.deriv2 = [](double) { return 0.0; };
    CHECK(modal_laplacian(model_of(ProfileFamily::euclidean, 3), lin, 1, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-15));

    RadialTestFunction one;
    one.value = [](double) { return 1.0; };
    one.deriv1 = [](double) { return 0.0; };
    one.deriv2 = [](double) { return 0.0; };
    const double s1 = std::sinh(1.0);
    CHECK(modal_laplacian(model_of(ProfileFamily::hyperbolic, 3), one, 1, 1.0) ==
          doctest::Approx(-2.0 / (s1 * s1)).epsilon(1e-14));

    // n = 0 coincides with the radial laplacian
    oracles::Rng rng(21);
    auto model = model_of(ProfileFamily::hyperbolic, 5);
    for (int i = 0; i < 100; ++i) {
        const double c = rng.uniform(1.0, 2.0);
        RadialTestFunction f;
        f.value = [c](double r) { return std::exp(-c * r); };
        f.deriv1 = [c](double r) { return -c * std::exp(-c * r); };
        f.deriv2 = [c](double r) { return c * c * std::exp(-c * r); };
        const double r = rng.uniform(0.5, 6.0);
        CHECK(modal_laplacian(model, f, 0, r) == radial_laplacian(model, f, r));
    }
}

TEST_CASE("sphere modes") {
    for (int N : {3, 4, 5, 7, 9}) {
        auto m1 = sphere_mode(1, N);
        CHECK(m1.lambda_n == static_cast<double>(N - 1));
        CHECK(m1.c_n == static_cast<std::uint64_t>(N));
    }
    auto m0 = sphere_mode(0, 7);
    CHECK(m0.lambda_n == 0.0);
    CHECK(m0.c_n == 1);

    auto m23 = sphere_mode(2, 3);
    CHECK(m23.lambda_n == 6.0);  // n^2 + (N-2) n = 4 + 2
    CHECK(m23.c_n == 5);

    double prev = -1.0;
    for (int n = 0; n < 12; ++n) {
        const double lam = sphere_mode(n, 5).lambda_n;
        CHECK(lam > prev);
        prev = lam;
    }
}

TEST_CASE("sphere area") {
    const double pi = std::numbers::pi;
    CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
}
