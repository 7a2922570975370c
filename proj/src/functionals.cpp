#include "warpineq/functionals.hpp"

#include <cmath>
#include <limits>

namespace warpineq {

const char* to_string(InequalityId id) {
    switch (id) {
        case InequalityId::first_order: return "first_order";
        case InequalityId::first_order_poincare: return "first_order_poincare";
        case InequalityId::second_order_radial: return "second_order_radial";
        case InequalityId::second_order_explicit: return "second_order_explicit";
        case InequalityId::rellich: return "rellich";
        case InequalityId::gradient: return "gradient";
        case InequalityId::use_cor_3: return "use_cor_3";
        case InequalityId::rad_lap: return "rad_lap";
        case InequalityId::weighted_hardy: return "weighted_hardy";
        case InequalityId::one_dim_hardy: return "one_dim_hardy";
        case InequalityId::vhn_radial_hardy: return "vhn_radial_hardy";
        case InequalityId::proto_exp: return "proto_exp";
        case InequalityId::proto_rexp: return "proto_rexp";
        case InequalityId::proto_gauss: return "proto_gauss";
    }
    return "unknown";
}

InequalityId inequality_from_string(const std::string& s) {
    for (const auto& info : inequality_catalog()) {
        if (s == to_string(info.id)) return info.id;
    }
    throw std::invalid_argument("unknown inequality id: " + s);
}

const std::vector<InequalityInfo>& inequality_catalog() {
    static const std::vector<InequalityInfo> catalog = {
        {InequalityId::first_order,
         "radial-gradient Poincare inequality with curvature mass, Hardy and 1/psi^2 remainders",
         3, false, false, false, false, ProfileFamily::custom},
        {InequalityId::first_order_poincare,
         "radial-gradient Poincare inequality with the constant ((N-1)/2)^2 mass term",
         3, true, false, false, false, ProfileFamily::custom},
        {InequalityId::second_order_radial,
         "radial-bilaplacian inequality with curvature-bracket mass on the radial derivative",
         3, false, false, false, false, ProfileFamily::custom},
        {InequalityId::second_order_explicit,
         "radial-bilaplacian inequality with constant ((N-1)/2)^2 mass on the radial derivative",
         3, true, true, false, false, ProfileFamily::custom},
        {InequalityId::rellich,
         "Rellich-type inequality: bilaplacian vs fourth Poincare power, 1/r^4 and 1/r^2 terms",
         5, true, true, false, false, ProfileFamily::custom},
        {InequalityId::gradient,
         "bilaplacian vs full gradient with Hardy and 1/psi^2 remainders (modal input)",
         5, true, true, true, false, ProfileFamily::custom},
        {InequalityId::use_cor_3,
         "radial-bilaplacian inequality with five remainder terms",
         5, true, true, false, false, ProfileFamily::custom},
        {InequalityId::rad_lap,
         "weighted comparison of full vs radial bilaplacian (modal input, weight r^-beta)",
         5, true, false, true, true, ProfileFamily::custom},
        {InequalityId::weighted_hardy,
         "one-dimensional weighted Hardy step with weights r^-beta psi^{N-3} / psi^{N-5}",
         5, true, false, false, true, ProfileFamily::custom},
        {InequalityId::one_dim_hardy,
         "one-dimensional Hardy inequality on the half line",
         3, false, false, false, false, ProfileFamily::custom},
        {InequalityId::vhn_radial_hardy,
         "weighted radial Hardy inequality: (u')^2/r^2 vs u^2/r^4",
         5, false, false, false, false, ProfileFamily::custom},
        {InequalityId::proto_exp,
         "improved Poincare inequality for the exp-tail prototype, support outside B_R",
         3, false, false, false, false, ProfileFamily::exp_tail},
        {InequalityId::proto_rexp,
         "improved Hardy-Poincare inequality for the r-exp-tail prototype, support outside B_R",
         3, false, false, false, false, ProfileFamily::r_exp_tail},
        {InequalityId::proto_gauss,
         "improved Hardy inequality for the super-exponential profile r e^{r^{2m}}",
         3, false, false, false, false, ProfileFamily::gauss},
    };
    return catalog;
}

const InequalityInfo& inequality_info(InequalityId id) {
    for (const auto& info : inequality_catalog()) {
        if (info.id == id) return info;
    }
    throw std::invalid_argument("unknown inequality id");
}

namespace {

class ReportBuilder {
public:
    ReportBuilder(InequalityId id, const ManifoldModel* model) {
        rep_.id = id;
        if (model) {
            rep_.model_name = to_string(model->profile.family);
            rep_.model_params = params_string(model->profile);
            rep_.dimension = model->dimension;
        } else {
            rep_.model_name = "-";
        }
    }

    double term(const std::string& name, double coeff, const IntegrationResult& integral) {
        const double value = coeff * integral.value;
        rep_.terms[name] = value;
        rep_.quadrature_error += std::abs(coeff) * integral.error;
        rep_.converged = rep_.converged && integral.converged;
        return value;
    }

    void sides(std::vector<std::string> lhs, std::vector<std::string> rhs) {
        rep_.lhs_names = std::move(lhs);
        rep_.rhs_names = std::move(rhs);
        rep_.lhs_total = rep_.terms.at(rep_.lhs_names.front());
        for (std::size_t i = 1; i < rep_.lhs_names.size(); ++i) {
            rep_.lhs_total -= rep_.terms.at(rep_.lhs_names[i]);
        }
        rep_.rhs_total = 0.0;
        for (const auto& n : rep_.rhs_names) rep_.rhs_total += rep_.terms.at(n);
        rep_.margin = rep_.lhs_total - rep_.rhs_total;
    }

    InequalityReport take() { return std::move(rep_); }
    InequalityReport& ref() { return rep_; }

private:
    InequalityReport rep_;
};

void record_hypotheses(InequalityReport& rep, const ManifoldModel& model, double lo, double hi,
                       bool need_con2, bool need_con3) {
    lo = std::max({lo, model.profile.valid_from, 1e-3});
    if (!(hi > lo)) hi = lo + 1.0;
    std::vector<double> radii(33);
    for (int i = 0; i < 33; ++i) radii[i] = lo + (hi - lo) * i / 32.0;
    const auto con2 = check_curvature_bound(model.profile, radii);
    const auto con3 = check_con3(model.profile, radii);
    rep.hypothesis_note = std::string("con2=") + (con2.passed ? "pass" : "fail") +
                          ";con3=" + (con3.passed ? "pass" : "fail");
    rep.hypothesis_ok = (!need_con2 || con2.passed) && (!need_con3 || con3.passed);
}

void require_support_in_domain(const ManifoldModel& model, const RadialTestFunction& u) {
    if (u.support_lo < model.profile.valid_from) {
        throw EvaluationDomainError("test function support extends below the profile domain");
    }
}

double support_lo(const ModalTestFunction& u) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& [n, a] : u.modes) lo = std::min(lo, a.support_lo);
    return lo;
}

double support_hi(const ModalTestFunction& u) {
    double hi = 0.0;
    for (const auto& [n, a] : u.modes) hi = std::max(hi, a.support_hi);
    return hi;
}

}  // namespace

InequalityReport first_order_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                   const EvaluateOptions& opt) {
    require_support_in_domain(model, u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    ReportBuilder b(InequalityId::first_order, &model);

    auto grad = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        return d * d;
    }, u, opt.quad);
    auto lam = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return lambda_rad_at(model, r) * v * v;
    }, u, opt.quad);
    auto hardy = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r);
    }, u, opt.quad);
    auto psi = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        const double ps = model.profile.psi(r);
        return v * v / (ps * ps);
    }, u, opt.quad);

    const double grad_t = b.term("grad", omega, grad);
    const double lam_t = b.term("lambda", omega * (N - 1) / 4.0, lam);
    b.term("hardy", omega * opt.hardy_coefficient, hardy);
    b.term("psi", omega * (N - 1) * (N - 3) / 4.0, psi);
    b.sides({"grad", "lambda"}, {"hardy", "psi"});
    if (hardy.value > 0.0) {
        b.ref().quotient = (grad_t - lam_t) / (omega * hardy.value);
    }
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, false, false);
    return b.take();
}

InequalityReport first_order_poincare_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                            const EvaluateOptions& opt) {
    require_support_in_domain(model, u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    const double p = (N - 1) / 2.0;
    ReportBuilder b(InequalityId::first_order_poincare, &model);

    auto grad = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        return d * d;
    }, u, opt.quad);
    auto mass = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v;
    }, u, opt.quad);
    auto hardy = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r);
    }, u, opt.quad);
    auto psi = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        const double ps = model.profile.psi(r);
        return v * v / (ps * ps);
    }, u, opt.quad);

    const double grad_t = b.term("grad", omega, grad);
    const double mass_t = b.term("poincare", omega * p * p, mass);
    b.term("hardy", omega * opt.hardy_coefficient, hardy);
    b.term("psi", omega * (N - 1) * (N - 3) / 4.0, psi);
    b.sides({"grad", "poincare"}, {"hardy", "psi"});
    if (hardy.value > 0.0) {
        b.ref().quotient = (grad_t - mass_t) / (omega * hardy.value);
    }
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, true, false);
    return b.take();
}

namespace {

// Lambda + 4 (K - H) = -2 psi''/psi + (N+1)(psi'^2 - 1)/psi^2.
double curvature_bracket(const ManifoldModel& model, double r) {
    return -2.0 * model.profile.second_over_psi(r) +
           (model.dimension + 1) * model.profile.tangential_defect(r);
}

InequalityReport second_order_common(InequalityId id, const ManifoldModel& model,
                                     const RadialTestFunction& u, const EvaluateOptions& opt,
                                     bool explicit_mass) {
    require_support_in_domain(model, u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    ReportBuilder b(id, &model);

    auto bilap = integrate_weighted(model, [&](double r) {
        const double d = radial_laplacian(model, u, r);
        return d * d;
    }, u, opt.quad);
    auto mass = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        const double w = explicit_mass ? 1.0 : curvature_bracket(model, r);
        return w * d * d;
    }, u, opt.quad);
    auto hardy = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        return d * d / (r * r);
    }, u, opt.quad);
    auto psi = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        const double ps = model.profile.psi(r);
        return d * d / (ps * ps);
    }, u, opt.quad);

    b.term("bilap", omega, bilap);
    const char* mass_name = explicit_mass ? "poincare" : "mixed";
    const double mass_coeff = explicit_mass ? omega * (N - 1) * (N - 1) / 4.0
                                            : omega * (N - 1) / 4.0;
    b.term(mass_name, mass_coeff, mass);
    b.term("hardy", omega / 4.0, hardy);
    b.term("psi", omega * (N * N - 1) / 4.0, psi);
    b.sides({"bilap", mass_name}, {"hardy", "psi"});
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, explicit_mass, explicit_mass);
    return b.take();
}

}  // namespace

InequalityReport second_order_radial_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                           const EvaluateOptions& opt) {
    return second_order_common(InequalityId::second_order_radial, model, u, opt, false);
}

InequalityReport second_order_explicit_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                             const EvaluateOptions& opt) {
    return second_order_common(InequalityId::second_order_explicit, model, u, opt, true);
}

InequalityReport rellich_terms(const ManifoldModel& model, const RadialTestFunction& u,
                               const EvaluateOptions& opt) {
    if (model.dimension < 5) throw DimensionError("the Rellich-type inequality requires N >= 5");
    require_support_in_domain(model, u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    const double p = (N - 1) / 2.0;
    ReportBuilder b(InequalityId::rellich, &model);

    auto bilap = integrate_weighted(model, [&](double r) {
        const double d = radial_laplacian(model, u, r);
        return d * d;
    }, u, opt.quad);
    auto mass = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v;
    }, u, opt.quad);
    auto rellich = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r * r * r);
    }, u, opt.quad);
    auto hardy2 = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r);
    }, u, opt.quad);

    b.term("bilap", omega, bilap);
    b.term("poincare4", omega * p * p * p * p, mass);
    b.term("rellich", omega * (N - 4) * (N - 4) / 16.0, rellich);
    b.term("hardy2", omega * (N - 1) * (N - 1) / 16.0, hardy2);
    b.sides({"bilap", "poincare4"}, {"rellich", "hardy2"});
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, true, true);
    return b.take();
}

InequalityReport use_cor_3_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                 const EvaluateOptions& opt) {
    if (model.dimension < 5) throw DimensionError("this inequality requires N >= 5");
    require_support_in_domain(model, u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    const double p = (N - 1) / 2.0;
    ReportBuilder b(InequalityId::use_cor_3, &model);

    auto bilap = integrate_weighted(model, [&](double r) {
        const double d = radial_laplacian(model, u, r);
        return d * d;
    }, u, opt.quad);
    auto mass = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v;
    }, u, opt.quad);
    auto hardy2 = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r);
    }, u, opt.quad);
    auto psi2 = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        const double ps = model.profile.psi(r);
        return v * v / (ps * ps);
    }, u, opt.quad);
    auto grad_hardy = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        return d * d / (r * r);
    }, u, opt.quad);
    auto grad_psi = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        const double ps = model.profile.psi(r);
        return d * d / (ps * ps);
    }, u, opt.quad);

    b.term("bilap", omega, bilap);
    b.term("poincare4", omega * p * p * p * p, mass);
    b.term("hardy2", omega * (N - 1) * (N - 1) / 16.0, hardy2);
    b.term("psi2", omega * std::pow(N - 1.0, 3) * (N - 3) / 16.0, psi2);
    b.term("grad_hardy", omega / 4.0, grad_hardy);
    b.term("grad_psi", omega * (N * N - 1) / 4.0, grad_psi);
    b.sides({"bilap", "poincare4"}, {"hardy2", "psi2", "grad_hardy", "grad_psi"});
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, true, true);
    return b.take();
}

InequalityReport gradient_inequality_terms(const ManifoldModel& model, const ModalTestFunction& u,
                                           const EvaluateOptions& opt) {
    if (model.dimension < 5) throw DimensionError("the gradient inequality requires N >= 5");
    validate_modes(u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    const double p = (N - 1) / 2.0;
    ReportBuilder b(InequalityId::gradient, &model);

    IntegrationResult bilap, grad_mass, grad_hardy, grad_psi;
    for (const auto& [n, a] : u.modes) {
        require_support_in_domain(model, a);
        const double lam = sphere_mode(n, N).lambda_n;
        auto grad_sq = [&, lam](double r) {
            const double d = a.deriv1(r);
            const double v = a.value(r);
            const double ps = model.profile.psi(r);
            return d * d + lam * v * v / (ps * ps);
        };
        bilap += integrate_weighted(model, [&, lam](double r) {
            const double ps = model.profile.psi(r);
            const double d = radial_laplacian(model, a, r) - lam * a.value(r) / (ps * ps);
            return d * d;
        }, a, opt.quad);
        grad_mass += integrate_weighted(model, grad_sq, a, opt.quad);
        grad_hardy += integrate_weighted(model, [&](double r) { return grad_sq(r) / (r * r); }, a,
                                         opt.quad);
        grad_psi += integrate_weighted(model, [&](double r) {
            const double ps = model.profile.psi(r);
            return grad_sq(r) / (ps * ps);
        }, a, opt.quad);
    }

    b.term("bilap", omega, bilap);
    b.term("poincare2", omega * p * p, grad_mass);
    b.term("hardy", omega / 4.0, grad_hardy);
    b.term("psi", omega * (N * N - 1) / 4.0, grad_psi);
    b.sides({"bilap", "poincare2"}, {"hardy", "psi"});
    record_hypotheses(b.ref(), model, support_lo(u), support_hi(u), true, true);
    return b.take();
}

InequalityReport rad_lap_compare(const ManifoldModel& model, const ModalTestFunction& u, double beta,
                                 const EvaluateOptions& opt) {
    if (!(beta >= 0.0) || !(beta < model.dimension - 4)) {
        throw std::invalid_argument("rad_lap comparison requires 0 <= beta < N - 4");
    }
    validate_modes(u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    ReportBuilder b(InequalityId::rad_lap, &model);

    IntegrationResult modal_sq, radial_sq;
    for (const auto& [n, a] : u.modes) {
        require_support_in_domain(model, a);
        const double lam = sphere_mode(n, N).lambda_n;
        modal_sq += integrate_weighted(model, [&, lam](double r) {
            const double ps = model.profile.psi(r);
            const double d = radial_laplacian(model, a, r) - lam * a.value(r) / (ps * ps);
            return d * d * std::pow(r, -beta);
        }, a, opt.quad);
        radial_sq += integrate_weighted(model, [&](double r) {
            const double d = radial_laplacian(model, a, r);
            return d * d * std::pow(r, -beta);
        }, a, opt.quad);
    }

    b.term("modal_bilap", omega, modal_sq);
    b.term("radial_bilap", omega, radial_sq);
    b.sides({"modal_bilap"}, {"radial_bilap"});
    record_hypotheses(b.ref(), model, support_lo(u), support_hi(u), true, false);
    return b.take();
}

InequalityReport weighted_hardy_check(const ManifoldModel& model, const RadialTestFunction& f,
                                      double beta, const EvaluateOptions& opt) {
    if (!(beta >= 0.0) || !(beta < model.dimension - 4)) {
        throw std::invalid_argument("weighted Hardy step requires 0 <= beta < N - 4");
    }
    require_support_in_domain(model, f);
    const int N = model.dimension;
    ReportBuilder b(InequalityId::weighted_hardy, &model);

    const double lo = std::max(f.support_lo, 1e-12);
    auto grad = integrate([&](double r) {
        const double d = f.deriv1(r);
        return d * d * std::pow(r, -beta) * std::pow(model.profile.psi(r), N - 3);
    }, lo, f.support_hi, opt.quad);
    auto mass = integrate([&](double r) {
        const double v = f.value(r);
        return v * v * std::pow(r, -beta) * std::pow(model.profile.psi(r), N - 5);
    }, lo, f.support_hi, opt.quad);

    const double c = (N - beta - 4.0) * (N - beta - 4.0) / 4.0;
    b.term("grad", 1.0, grad);
    b.term("mass", c, mass);
    b.sides({"grad"}, {"mass"});
    record_hypotheses(b.ref(), model, f.support_lo, f.support_hi, true, false);
    return b.take();
}

InequalityReport one_dim_hardy_check(const RadialTestFunction& d, const EvaluateOptions& opt) {
    ReportBuilder b(InequalityId::one_dim_hardy, nullptr);
    const double lo = std::max(d.support_lo, 1e-12);
    auto grad = integrate([&](double r) {
        const double v = d.deriv1(r);
        return v * v;
    }, lo, d.support_hi, opt.quad);
    auto hardy = integrate([&](double r) {
        const double v = d.value(r);
        return v * v / (r * r);
    }, lo, d.support_hi, opt.quad);
    b.term("grad", 1.0, grad);
    b.term("hardy", 0.25, hardy);
    b.sides({"grad"}, {"hardy"});
    return b.take();
}

InequalityReport vhn_radial_hardy_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                        const EvaluateOptions& opt) {
    if (model.dimension < 5) throw DimensionError("the radial Hardy inequality requires N >= 5");
    require_support_in_domain(model, u);
    const int N = model.dimension;
    const double omega = sphere_area(N);
    ReportBuilder b(InequalityId::vhn_radial_hardy, &model);

    auto grad_hardy = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        return d * d / (r * r);
    }, u, opt.quad);
    auto rellich4 = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r * r * r);
    }, u, opt.quad);

    b.term("grad_hardy", omega, grad_hardy);
    b.term("rellich4", omega * (N - 4) * (N - 4) / 4.0, rellich4);
    b.sides({"grad_hardy"}, {"rellich4"});
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, false, false);
    return b.take();
}

InequalityReport prototype_inequality_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                            PrototypeKind which, const EvaluateOptions& opt) {
    const int N = model.dimension;
    const double omega = sphere_area(N);
    const ProfileParams& p = model.profile.params;

    const ProfileFamily expected = which == PrototypeKind::proto    ? ProfileFamily::exp_tail
                                   : which == PrototypeKind::proto2 ? ProfileFamily::r_exp_tail
                                                                    : ProfileFamily::gauss;
    if (model.profile.family != expected) {
        throw InvalidParameterError("prototype inequality does not match the model family");
    }
    if (which != PrototypeKind::gauss && u.support_lo < p.R) {
        throw InvalidParameterError("test function must be supported outside the ball of radius R");
    }
    if (which == PrototypeKind::proto && p.a < 0.0) {
        throw InvalidParameterError("the exp-tail prototype inequality requires a >= 0");
    }
    require_support_in_domain(model, u);

    const InequalityId id = which == PrototypeKind::proto    ? InequalityId::proto_exp
                            : which == PrototypeKind::proto2 ? InequalityId::proto_rexp
                                                             : InequalityId::proto_gauss;
    ReportBuilder b(id, &model);

    auto grad = integrate_weighted(model, [&](double r) {
        const double d = u.deriv1(r);
        return d * d;
    }, u, opt.quad);
    auto hardy = integrate_weighted(model, [&](double r) {
        const double v = u.value(r);
        return v * v / (r * r);
    }, u, opt.quad);
    b.term("grad", omega, grad);

    if (which == PrototypeKind::proto) {
        const double a1 = p.a + 1.0;
        auto w_poin = integrate_weighted(model, [&](double r) {
            const double v = u.value(r);
            return std::pow(r, 2.0 * p.a) * v * v;
        }, u, opt.quad);
        auto w_tail = integrate_weighted(model, [&](double r) {
            const double v = u.value(r);
            return std::pow(r, p.a - 1.0) * v * v;
        }, u, opt.quad);
        b.term("poincare_weight", omega * (N - 1) * (N - 1) / 4.0 * a1 * a1 * p.b * p.b, w_poin);
        b.term("hardy", omega / 4.0, hardy);
        b.term("tail_weight", omega * 2.0 * p.b * p.a * a1 * (N - 1) / 4.0, w_tail);
        b.sides({"grad"}, {"poincare_weight", "hardy", "tail_weight"});
    } else if (which == PrototypeKind::proto2) {
        const double a1 = p.a + 1.0;
        auto w_poin = integrate_weighted(model, [&](double r) {
            const double v = u.value(r);
            return std::pow(r, 2.0 * p.a) * v * v;
        }, u, opt.quad);
        auto w_tail = integrate_weighted(model, [&](double r) {
            const double v = u.value(r);
            return std::pow(r, p.a - 1.0) * v * v;
        }, u, opt.quad);
        b.term("hardy", omega * (N - 2) * (N - 2) / 4.0, hardy);
        b.term("poincare_weight", omega * a1 * a1 * p.b * p.b * (N - 1) * (N - 1) / 4.0, w_poin);
        b.term("tail_weight", omega * p.b * a1 * (N - 1) * (N - 1.0 + p.a) / 2.0, w_tail);
        b.sides({"grad"}, {"hardy", "poincare_weight", "tail_weight"});
    } else {
        const double m = p.m;
        auto w_high = integrate_weighted(model, [&](double r) {
            const double v = u.value(r);
            return std::pow(r, 4.0 * m - 2.0) * v * v;
        }, u, opt.quad);
        auto w_low = integrate_weighted(model, [&](double r) {
            const double v = u.value(r);
            return std::pow(r, 2.0 * m - 2.0) * v * v;
        }, u, opt.quad);
        b.term("hardy", omega * (N - 2) * (N - 2) / 4.0, hardy);
        b.term("weight_high", omega * m * m * (N - 1) * (N - 1), w_high);
        b.term("weight_low", omega * m * (N - 1) * (N - 2.0 + 2.0 * m), w_low);
        b.sides({"grad"}, {"hardy", "weight_high", "weight_low"});
    }
    record_hypotheses(b.ref(), model, u.support_lo, u.support_hi, false, false);
    return b.take();
}

InequalityReport evaluate_inequality(const ManifoldModel& model, InequalityId id,
                                     const RadialTestFunction& u, const EvaluateOptions& opt) {
    switch (id) {
        case InequalityId::first_order: return first_order_terms(model, u, opt);
        case InequalityId::first_order_poincare: return first_order_poincare_terms(model, u, opt);
        case InequalityId::second_order_radial: return second_order_radial_terms(model, u, opt);
        case InequalityId::second_order_explicit: return second_order_explicit_terms(model, u, opt);
        case InequalityId::rellich: return rellich_terms(model, u, opt);
        case InequalityId::use_cor_3: return use_cor_3_terms(model, u, opt);
        case InequalityId::weighted_hardy: return weighted_hardy_check(model, u, opt.beta, opt);
        case InequalityId::one_dim_hardy: return one_dim_hardy_check(u, opt);
        case InequalityId::vhn_radial_hardy: return vhn_radial_hardy_terms(model, u, opt);
        case InequalityId::proto_exp:
            return prototype_inequality_terms(model, u, PrototypeKind::proto, opt);
        case InequalityId::proto_rexp:
            return prototype_inequality_terms(model, u, PrototypeKind::proto2, opt);
        case InequalityId::proto_gauss:
            return prototype_inequality_terms(model, u, PrototypeKind::gauss, opt);
        default:
            throw std::invalid_argument("inequality takes a modal test function");
    }
}

InequalityReport evaluate_inequality(const ManifoldModel& model, InequalityId id,
                                     const ModalTestFunction& u, const EvaluateOptions& opt) {
    switch (id) {
        case InequalityId::gradient: return gradient_inequality_terms(model, u, opt);
        case InequalityId::rad_lap: return rad_lap_compare(model, u, opt.beta, opt);
        default:
            throw std::invalid_argument("inequality takes a radial test function");
    }
}

}  // namespace warpineq
