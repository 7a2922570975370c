#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "warpineq/functionals.hpp"

using namespace warpineq;

namespace {

ManifoldModel model_of(ProfileFamily fam, int N, ProfileParams params = {}) {
    return ManifoldModel(N, make_builtin_profile(fam, params));
}

bool margin_ok(const InequalityReport& r) { return r.margin >= -r.slack(); }

}  // namespace

TEST_CASE("first order inequality") {
    auto h3 = model_of(ProfileFamily::hyperbolic, 3);
    auto rep = first_order_terms(h3, make_bump(3.0, 1.0, 1.0));
    CHECK(margin_ok(rep));
    CHECK(rep.margin > 0.0);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.quotient.has_value());
    CHECK(*rep.quotient >= 0.25);
    CHECK(rep.lhs_total == doctest::Approx(rep.terms.at("grad") - rep.terms.at("lambda")));
    CHECK(rep.rhs_total == doctest::Approx(rep.terms.at("hardy") + rep.terms.at("psi")));

    auto zero = first_order_terms(h3, zero_test_function());
    CHECK(zero.margin == 0.0);
    for (const auto& [name, value] : zero.terms) CHECK(value == 0.0);
}

TEST_CASE("first order on flat space combines into the Hardy constant") {
    auto e4 = model_of(ProfileFamily::euclidean, 4);
    auto u = make_bump(2.0, 1.0, 1.0);
    auto rep = first_order_terms(e4, u);
    CHECK(rep.terms.at("lambda") == 0.0);
    // hardy + psi = (1/4 + (N-1)(N-3)/4)|u/r|^2 = (N-2)^2/4 |u/r|^2 when psi = r
    const double hardy_weight = rep.terms.at("hardy") * 4.0;  // omega * |u/r|^2 integral
    const double combined = rep.terms.at("hardy") + rep.terms.at("psi");
    CHECK(combined == doctest::Approx(hardy_weight).epsilon(1e-12));
    CHECK(margin_ok(rep));
    CHECK_FALSE(rep.hypothesis_ok == false);  // no hypotheses needed for this id
}

TEST_CASE("first order with constant mass term") {
    auto h5 = model_of(ProfileFamily::hyperbolic, 5);
    auto rep = first_order_poincare_terms(h5, make_bump(2.0, 1.0, 1.0));
    CHECK(margin_ok(rep));
    CHECK(rep.hypothesis_ok);

    // On hyperbolic space the curvature mass is exactly the constant one.
    auto u = make_bump(2.5, 0.75, 1.0);
    auto general = first_order_terms(h5, u);
    auto constant = first_order_poincare_terms(h5, u);
    CHECK(general.margin ==
          doctest::Approx(constant.margin).epsilon(1e-12));

    auto g3 = model_of(ProfileFamily::gauss, 3, {.m = 1});
    auto grep = first_order_poincare_terms(g3, make_bump(1.5, 0.5, 1.0));
    CHECK(margin_ok(grep));
    CHECK(grep.hypothesis_ok);

    // Out-of-hypothesis evaluation still produces a report, tagged.
    auto e3 = model_of(ProfileFamily::euclidean, 3);
    auto erep = first_order_poincare_terms(e3, make_bump(2.0, 1.0, 1.0));
    CHECK_FALSE(erep.hypothesis_ok);
}

TEST_CASE("second order radial inequality") {
    auto h4 = model_of(ProfileFamily::hyperbolic, 4);
    auto rep = second_order_radial_terms(h4, make_bump(2.0, 1.0, 1.0));
    CHECK(margin_ok(rep));

    auto e5 = model_of(ProfileFamily::euclidean, 5);
    auto erep = second_order_radial_terms(e5, make_bump(2.0, 1.0, 1.0));
    CHECK(erep.terms.at("mixed") == 0.0);
    CHECK(margin_ok(erep));

    auto zrep = second_order_radial_terms(h4, zero_test_function());
    CHECK(zrep.margin == 0.0);
}

TEST_CASE("second order with explicit constant equals the bracket form on hyperbolic space") {
    auto h3 = model_of(ProfileFamily::hyperbolic, 3);
    auto u = make_bump(2.0, 0.8, 1.0);
    auto bracket = second_order_radial_terms(h3, u);
    auto explicit_form = second_order_explicit_terms(h3, u);
    CHECK(margin_ok(explicit_form));
    CHECK(explicit_form.hypothesis_ok);
    CHECK(bracket.margin == doctest::Approx(explicit_form.margin).epsilon(1e-12));
}

TEST_CASE("rellich inequality") {
    auto h5 = model_of(ProfileFamily::hyperbolic, 5);
    auto rep = rellich_terms(h5, make_bump(3.0, 1.0, 1.0));
    CHECK(margin_ok(rep));

    auto h8 = model_of(ProfileFamily::hyperbolic, 8);
    auto rep8 = rellich_terms(h8, make_bump(2.0, 0.5, 1.0));
    CHECK(margin_ok(rep8));
    CHECK((8 - 4) * (8 - 4) / 16.0 == 1.0);
    CHECK(1.0 > 9.0 / 16.0);

    CHECK_THROWS_AS(rellich_terms(model_of(ProfileFamily::hyperbolic, 4), make_bump(2.0, 1.0, 1.0)),
                    DimensionError);

    auto zrep = rellich_terms(h5, zero_test_function());
    CHECK(zrep.margin == 0.0);
}

TEST_CASE("five-term second order inequality") {
    auto h5 = model_of(ProfileFamily::hyperbolic, 5);
    CHECK(margin_ok(use_cor_3_terms(h5, make_bump(3.0, 1.0, 1.0))));
    auto h6 = model_of(ProfileFamily::hyperbolic, 6);
    CHECK(margin_ok(use_cor_3_terms(h6, make_bump(2.0, 0.4, 1.0))));
    CHECK(use_cor_3_terms(h5, zero_test_function()).margin == 0.0);
}

TEST_CASE("gradient inequality through modes") {
    auto h5 = model_of(ProfileFamily::hyperbolic, 5);

    ModalTestFunction radial;
    radial.modes.emplace_back(0, make_bump(2.0, 1.0, 1.0));
    auto rep0 = gradient_inequality_terms(h5, radial);
    CHECK(margin_ok(rep0));

    // single mode 0 coincides with the radial pipeline term by term
    auto so = second_order_radial_terms(h5, radial.modes[0].second);
    CHECK(rep0.terms.at("bilap") == doctest::Approx(so.terms.at("bilap")).epsilon(1e-10));
    auto fo = first_order_terms(h5, radial.modes[0].second);
    const double full_grad = rep0.terms.at("poincare2") / 4.0;  // strip ((N-1)/2)^2 = 4
    CHECK(full_grad == doctest::Approx(fo.terms.at("grad")).epsilon(1e-10));

    ModalTestFunction first;
    first.modes.emplace_back(1, make_bump(2.0, 1.0, 1.0));
    CHECK(margin_ok(gradient_inequality_terms(h5, first)));

    ModalTestFunction mixed;
    mixed.modes.emplace_back(0, make_bump(2.0, 0.7, 1.0));
    mixed.modes.emplace_back(2, make_bump(3.0, 1.0, 0.5));
    CHECK(margin_ok(gradient_inequality_terms(h5, mixed)));

    ModalTestFunction empty;
    CHECK_THROWS_AS(gradient_inequality_terms(h5, empty), std::invalid_argument);
    ModalTestFunction dup;
    dup.modes.emplace_back(1, make_bump(2.0, 1.0, 1.0));
    dup.modes.emplace_back(1, make_bump(3.0, 1.0, 1.0));
    CHECK_THROWS_AS(gradient_inequality_terms(h5, dup), std::invalid_argument);

    CHECK_THROWS_AS(gradient_inequality_terms(model_of(ProfileFamily::hyperbolic, 4), radial),
                    DimensionError);
}

TEST_CASE("weighted bilaplacian comparison") {
    auto h6 = model_of(ProfileFamily::hyperbolic, 6);

    ModalTestFunction radial;
    radial.modes.emplace_back(0, make_bump(2.0, 1.0, 1.0));
    auto eq = rad_lap_compare(h6, radial, 0.0);
    CHECK(std::abs(eq.margin) <= 1e-10 * eq.lhs_total);

    ModalTestFunction first;
    first.modes.emplace_back(1, make_bump(2.0, 1.0, 1.0));
    auto rep = rad_lap_compare(h6, first, 1.0);
    CHECK(rep.margin > 10.0 * rep.quadrature_error);

    CHECK_THROWS_AS(rad_lap_compare(h6, first, 2.0), std::invalid_argument);  // beta = N-4
    CHECK_THROWS_AS(rad_lap_compare(h6, first, -0.5), std::invalid_argument);
}

TEST_CASE("one-dimensional weighted Hardy step") {
    auto h5 = model_of(ProfileFamily::hyperbolic, 5);
    auto rep = weighted_hardy_check(h5, make_bump(2.0, 1.0, 1.0), 0.0);
    CHECK(margin_ok(rep));
    CHECK(rep.margin > 0.0);

    auto h9 = model_of(ProfileFamily::hyperbolic, 9);
    CHECK((9.0 - 2.0 - 4.0) * (9.0 - 2.0 - 4.0) / 4.0 == doctest::Approx(2.25));
    CHECK(margin_ok(weighted_hardy_check(h9, make_bump(3.0, 1.0, 1.0), 2.0)));

    CHECK(weighted_hardy_check(h5, zero_test_function(), 0.0).margin == 0.0);
    CHECK_THROWS_AS(weighted_hardy_check(h5, make_bump(2.0, 1.0, 1.0), 1.0),
                    std::invalid_argument);
}

TEST_CASE("one-dimensional Hardy inequality") {
    CHECK(margin_ok(one_dim_hardy_check(make_bump(2.0, 1.0, 1.0))));
    CHECK(margin_ok(one_dim_hardy_check(make_bump(10.0, 1.0, 1.0))));
    CHECK(one_dim_hardy_check(zero_test_function()).margin == 0.0);
}

TEST_CASE("weighted radial Hardy inequality") {
    CHECK(margin_ok(vhn_radial_hardy_terms(model_of(ProfileFamily::hyperbolic, 5),
                                           make_bump(3.0, 1.0, 1.0))));
    CHECK(margin_ok(vhn_radial_hardy_terms(model_of(ProfileFamily::euclidean, 6),
                                           make_bump(2.0, 1.0, 1.0))));
    CHECK(vhn_radial_hardy_terms(model_of(ProfileFamily::hyperbolic, 7), zero_test_function())
              .margin == 0.0);
    CHECK_THROWS_AS(vhn_radial_hardy_terms(model_of(ProfileFamily::hyperbolic, 4),
                                           make_bump(2.0, 1.0, 1.0)),
                    DimensionError);
}

TEST_CASE("prototype inequalities") {
    auto exp_tail = model_of(ProfileFamily::exp_tail, 3, {.A = 1.0, .b = 1.0, .a = 0.0, .R = 1.0});
    auto rep = prototype_inequality_terms(exp_tail, make_bump(3.0, 1.0, 1.0), PrototypeKind::proto);
    CHECK(margin_ok(rep));
    // for a = 0, b = 1 the weighted mass coefficient is ((N-1)/2)^2 = 1
    CHECK(((3 - 1) / 2.0) * ((3 - 1) / 2.0) * 1.0 * 1.0 == 1.0);
    CHECK(rep.terms.at("tail_weight") == 0.0);  // a = 0 kills the r^{a-1} term

    auto r_exp = model_of(ProfileFamily::r_exp_tail, 4, {.A = 1.0, .b = 1.0, .a = -1.0, .R = 1.0});
    auto rep2 = prototype_inequality_terms(r_exp, make_bump(3.0, 1.0, 1.0), PrototypeKind::proto2);
    CHECK(rep2.terms.at("poincare_weight") == 0.0);
    CHECK(rep2.terms.at("tail_weight") == 0.0);
    CHECK(margin_ok(rep2));  // reduces to the weighted Hardy inequality

    auto gauss = model_of(ProfileFamily::gauss, 4, {.m = 1});
    auto rep3 = prototype_inequality_terms(gauss, make_bump(2.0, 0.5, 1.0), PrototypeKind::gauss);
    CHECK(margin_ok(rep3));
    CHECK(rep3.terms.count("weight_high") == 1);
    CHECK(rep3.terms.count("weight_low") == 1);

    CHECK_THROWS_AS(
        prototype_inequality_terms(exp_tail, make_bump(1.2, 0.5, 1.0), PrototypeKind::proto),
        InvalidParameterError);  // support dips inside B_R
    CHECK_THROWS_AS(
        prototype_inequality_terms(model_of(ProfileFamily::hyperbolic, 3),
                                   make_bump(3.0, 1.0, 1.0), PrototypeKind::proto),
        InvalidParameterError);
}

TEST_CASE("non-negative margins across random inputs") {
    oracles::Rng rng(314);
    const int dims[] = {3, 5, 8};
    for (int N : dims) {
        auto model = model_of(ProfileFamily::hyperbolic, N);
        for (int i = 0; i < 50; ++i) {
            const double c = std::exp(rng.uniform(std::log(0.8), std::log(9.0)));
            const double w = rng.uniform(0.2, 0.7);
            RadialTestFunction u =
                (i % 2 == 0) ? make_bump(c, w, rng.uniform(0.5, 2.0))
                             : make_spline(c, w, rng.uniform(0.5, 2.0));
            CHECK(margin_ok(first_order_terms(model, u)));
            CHECK(margin_ok(first_order_poincare_terms(model, u)));
            CHECK(margin_ok(second_order_radial_terms(model, u)));
            if (N >= 5) {
                CHECK(margin_ok(rellich_terms(model, u)));
                CHECK(margin_ok(use_cor_3_terms(model, u)));
                CHECK(margin_ok(vhn_radial_hardy_terms(model, u)));
                CHECK(margin_ok(weighted_hardy_check(model, u, 0.0)));
            }
        }
    }
}

TEST_CASE("dispatch by id") {
    auto h5 = model_of(ProfileFamily::hyperbolic, 5);
    auto u = make_bump(2.0, 1.0, 1.0);
    auto rep = evaluate_inequality(h5, InequalityId::first_order, u);
    CHECK(rep.id == InequalityId::first_order);
    CHECK_THROWS_AS(evaluate_inequality(h5, InequalityId::gradient, u), std::invalid_argument);

    ModalTestFunction m;
    m.modes.emplace_back(0, u);
    CHECK(evaluate_inequality(h5, InequalityId::gradient, m).id == InequalityId::gradient);
    CHECK_THROWS_AS(evaluate_inequality(h5, InequalityId::rellich, m), std::invalid_argument);
}

TEST_CASE("inequality id round trips") {
    for (const auto& info : inequality_catalog()) {
        CHECK(inequality_from_string(to_string(info.id)) == info.id);
    }
    CHECK_THROWS_AS(inequality_from_string("nope"), std::invalid_argument);
}
