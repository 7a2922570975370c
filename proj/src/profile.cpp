#include "warpineq/profile.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace warpineq {

namespace {

double central_diff1(const std::function<double(double)>& f, double r) {
    const double h = std::max(1e-5, 1e-5 * r);
    return (f(r + h) - f(r - h)) / (2.0 * h);
}

double central_diff2(const std::function<double(double)>& f, double r) {
    const double h = std::max(1e-4, 1e-4 * r);
    return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
}

std::string format_params(ProfileFamily family, const ProfileParams& p) {
    std::ostringstream os;
    switch (family) {
        case ProfileFamily::exp_tail:
        case ProfileFamily::r_exp_tail:
            os << "A=" << p.A << ";b=" << p.b << ";a=" << p.a << ";R=" << p.R;
            break;
        case ProfileFamily::gauss:
            os << "m=" << p.m;
            break;
        default:
            break;
    }
    return os.str();
}

}  // namespace

std::string params_string(const WarpingProfile& profile) {
    return format_params(profile.family, profile.params);
}

const char* to_string(ProfileFamily family) {
    switch (family) {
        case ProfileFamily::euclidean: return "euclidean";
        case ProfileFamily::hyperbolic: return "hyperbolic";
        case ProfileFamily::exp_tail: return "exp_tail";
        case ProfileFamily::r_exp_tail: return "r_exp_tail";
        case ProfileFamily::gauss: return "gauss";
        case ProfileFamily::custom: return "custom";
    }
    return "unknown";
}

ProfileFamily profile_family_from_string(const std::string& s) {
    if (s == "euclidean") return ProfileFamily::euclidean;
    if (s == "hyperbolic") return ProfileFamily::hyperbolic;
    if (s == "exp_tail") return ProfileFamily::exp_tail;
    if (s == "r_exp_tail") return ProfileFamily::r_exp_tail;
    if (s == "gauss") return ProfileFamily::gauss;
    if (s == "custom") return ProfileFamily::custom;
    throw InvalidParameterError("unknown profile family: " + s);
}

void WarpingProfile::require_domain(double r) const {
    if (!(r >= valid_from)) {
        throw EvaluationDomainError(name + ": evaluation at r=" + std::to_string(r) +
                                    " below valid_from=" + std::to_string(valid_from));
    }
}

double WarpingProfile::psi(double r) const {
    require_domain(r);
    const auto& p = params;
    switch (family) {
        case ProfileFamily::euclidean: return r;
        case ProfileFamily::hyperbolic: return std::sinh(r);
        case ProfileFamily::exp_tail: return p.A * std::exp(p.b * std::pow(r, p.a + 1.0));
        case ProfileFamily::r_exp_tail: return p.A * r * std::exp(p.b * std::pow(r, p.a + 1.0));
        case ProfileFamily::gauss: return r * std::exp(std::pow(r, 2 * p.m));
        case ProfileFamily::custom: return custom_psi(r);
    }
    return 0.0;
}

double WarpingProfile::psi_prime(double r) const {
    require_domain(r);
    const auto& p = params;
    switch (family) {
        case ProfileFamily::euclidean: return 1.0;
        case ProfileFamily::hyperbolic: return std::cosh(r);
        case ProfileFamily::exp_tail:
            return p.b * (p.a + 1.0) * std::pow(r, p.a) * psi(r);
        case ProfileFamily::r_exp_tail:
            return (1.0 / r + p.b * (p.a + 1.0) * std::pow(r, p.a)) * psi(r);
        case ProfileFamily::gauss: {
            const double rm = std::pow(r, 2 * p.m);
            return std::exp(rm) * (1.0 + 2.0 * p.m * rm);
        }
        case ProfileFamily::custom: return central_diff1(custom_psi, r);
    }
    return 0.0;
}

double WarpingProfile::psi_second(double r) const {
    require_domain(r);
    switch (family) {
        case ProfileFamily::euclidean: return 0.0;
        case ProfileFamily::hyperbolic: return std::sinh(r);
        case ProfileFamily::exp_tail:
        case ProfileFamily::r_exp_tail:
        case ProfileFamily::gauss:
            return second_over_psi(r) * psi(r);
        case ProfileFamily::custom: return central_diff2(custom_psi, r);
    }
    return 0.0;
}

double WarpingProfile::log_derivative(double r) const {
    require_domain(r);
    const auto& p = params;
    switch (family) {
        case ProfileFamily::euclidean: return 1.0 / r;
        case ProfileFamily::hyperbolic: return 1.0 / std::tanh(r);
        case ProfileFamily::exp_tail: return p.b * (p.a + 1.0) * std::pow(r, p.a);
        case ProfileFamily::r_exp_tail: return 1.0 / r + p.b * (p.a + 1.0) * std::pow(r, p.a);
        case ProfileFamily::gauss: return 1.0 / r + 2.0 * p.m * std::pow(r, 2 * p.m - 1);
        case ProfileFamily::custom: return psi_prime(r) / psi(r);
    }
    return 0.0;
}

double WarpingProfile::second_over_psi(double r) const {
    require_domain(r);
    const auto& p = params;
    const double a1 = p.a + 1.0;
    switch (family) {
        case ProfileFamily::euclidean: return 0.0;
        case ProfileFamily::hyperbolic: return 1.0;
        case ProfileFamily::exp_tail:
            return p.b * p.b * a1 * a1 * std::pow(r, 2.0 * p.a) +
                   p.b * p.a * a1 * std::pow(r, p.a - 1.0);
        case ProfileFamily::r_exp_tail:
            return p.b * p.b * a1 * a1 * std::pow(r, 2.0 * p.a) +
                   p.b * a1 * (p.a + 2.0) * std::pow(r, p.a - 1.0);
        case ProfileFamily::gauss: {
            const double m = p.m;
            const double rm = std::pow(r, 2 * p.m);
            return 2.0 * m * std::pow(r, 2 * p.m - 2) * (1.0 + 2.0 * m + 2.0 * m * rm);
        }
        case ProfileFamily::custom: return psi_second(r) / psi(r);
    }
    return 0.0;
}

double WarpingProfile::psi_prime_sq_minus_one(double r) const {
    require_domain(r);
    switch (family) {
        case ProfileFamily::euclidean: return 0.0;
        case ProfileFamily::hyperbolic: {
            const double s = std::sinh(r);
            return s * s;
        }
        case ProfileFamily::gauss: {
            // psi'^2 - 1 = expm1(y) + e^y x (2 + x) with x = 2 m r^{2m}, y = 2 r^{2m}
            const double rm = std::pow(r, 2 * params.m);
            const double x = 2.0 * params.m * rm;
            const double y = 2.0 * rm;
            return std::expm1(y) + std::exp(y) * x * (2.0 + x);
        }
        default: {
            const double d = psi_prime(r);
            return d * d - 1.0;
        }
    }
}

double WarpingProfile::tangential_defect(double r) const {
    require_domain(r);
    const auto& p = params;
    switch (family) {
        case ProfileFamily::euclidean: return 0.0;
        case ProfileFamily::hyperbolic: return 1.0;
        case ProfileFamily::exp_tail: {
            const double L = log_derivative(r);
            return L * L - std::exp(-2.0 * p.b * std::pow(r, p.a + 1.0)) / (p.A * p.A);
        }
        case ProfileFamily::r_exp_tail: {
            const double L = log_derivative(r);
            return L * L - std::exp(-2.0 * p.b * std::pow(r, p.a + 1.0)) / (p.A * p.A * r * r);
        }
        case ProfileFamily::gauss: {
            const double rm = std::pow(r, 2 * p.m);
            const double x = 2.0 * p.m * rm;
            return (-std::expm1(-2.0 * rm) + x * (2.0 + x)) / (r * r);
        }
        case ProfileFamily::custom: {
            const double ps = psi(r);
            return psi_prime_sq_minus_one(r) / (ps * ps);
        }
    }
    return 0.0;
}

WarpingProfile make_builtin_profile(ProfileFamily family, const ProfileParams& params) {
    if (family == ProfileFamily::custom) {
        throw InvalidParameterError("custom profiles are built with make_custom_profile");
    }
    WarpingProfile prof;
    prof.family = family;
    prof.params = params;
    switch (family) {
        case ProfileFamily::euclidean:
            prof.name = "euclidean";
            break;
        case ProfileFamily::hyperbolic:
            prof.name = "hyperbolic";
            prof.asymptotic = AsymptoticForm{1.0, 0.0};
            break;
        case ProfileFamily::exp_tail:
        case ProfileFamily::r_exp_tail:
            if (!(params.A > 0.0)) throw InvalidParameterError("tail profile requires A > 0");
            if (!(params.b > 0.0)) throw InvalidParameterError("tail profile requires b > 0");
            if (!(params.a >= -1.0)) throw InvalidParameterError("tail profile requires a >= -1");
            if (!(params.R > 0.0)) throw InvalidParameterError("tail profile requires R > 0");
            prof.valid_from = params.R;
            if (params.a >= 0.0) {
                prof.asymptotic = AsymptoticForm{params.b * (params.a + 1.0), params.a};
            }
            prof.name = std::string(to_string(family)) + "(" + format_params(family, params) + ")";
            break;
        case ProfileFamily::gauss:
            if (params.m < 1) throw InvalidParameterError("gauss profile requires integer m >= 1");
            prof.asymptotic = AsymptoticForm{2.0 * params.m, 2.0 * params.m - 1.0};
            prof.name = "gauss(" + format_params(family, params) + ")";
            break;
        default:
            break;
    }
    return prof;
}

WarpingProfile make_custom_profile(std::string name, std::function<double(double)> psi,
                                   double valid_from, std::optional<AsymptoticForm> asymptotic) {
    if (!psi) throw InvalidParameterError("custom profile requires a psi evaluator");
    WarpingProfile prof;
    prof.name = std::move(name);
    prof.family = ProfileFamily::custom;
    prof.valid_from = valid_from;
    prof.asymptotic = asymptotic;
    prof.custom_psi = std::move(psi);
    return prof;
}

namespace {

// Two-stage Richardson extrapolation toward 0 from values at r, r/10, r/100,
// assuming a smooth odd/even expansion (error O(r) at each stage).
double richardson_limit(double f1, double f2, double f3) {
    const double e1 = (10.0 * f3 - f2) / 9.0;
    const double e2 = (10.0 * f2 - f1) / 9.0;
    return (10.0 * e1 - e2) / 9.0;
}

}  // namespace

PsiConditionReport validate_psi_conditions(const WarpingProfile& profile, double tol) {
    if (!profile.is_global()) {
        throw InvalidParameterError(profile.name +
                                    ": pole conditions are only verifiable for global families");
    }
    const double radii[3] = {1e-3, 1e-4, 1e-5};
    double v[3], d1[3], d2[3];
    for (int i = 0; i < 3; ++i) {
        v[i] = profile.psi(radii[i]);
        d1[i] = profile.psi_prime(radii[i]);
        d2[i] = profile.psi_second(radii[i]);
    }
    PsiConditionReport report;
    auto add = [&](const char* what, double estimate, double target) {
        LimitCheck c;
        c.quantity = what;
        c.estimate = estimate;
        c.target = target;
        c.passed = std::abs(estimate - target) <= tol;
        report.checks.push_back(c);
    };
    add("psi(0+)", richardson_limit(v[0], v[1], v[2]), 0.0);
    add("psi'(0+)", richardson_limit(d1[0], d1[1], d1[2]), 1.0);
    add("psi''(0+)", richardson_limit(d2[0], d2[1], d2[2]), 0.0);
    report.all_passed = true;
    for (const auto& c : report.checks) report.all_passed = report.all_passed && c.passed;
    return report;
}

namespace {

ConditionReport run_condition(const char* condition, const std::vector<double>& radii,
                              const std::function<double(double)>& margin_at) {
    ConditionReport report;
    report.condition = condition;
    report.worst_margin = std::numeric_limits<double>::infinity();
    report.samples.reserve(radii.size());
    for (double r : radii) {
        const double m = margin_at(r);
        report.samples.push_back({r, m});
        report.worst_margin = std::min(report.worst_margin, m);
    }
    report.passed = !radii.empty() && report.worst_margin >= 0.0;
    if (radii.empty()) report.worst_margin = 0.0;
    return report;
}

}  // namespace

ConditionReport check_curvature_bound(const WarpingProfile& profile, const std::vector<double>& radii) {
    return run_condition("radial_curvature_bound", radii,
                         [&](double r) { return profile.second_over_psi(r) - 1.0; });
}

ConditionReport check_con3(const WarpingProfile& profile, const std::vector<double>& radii) {
    // -psi''/psi >= -(psi'^2-1)/psi^2  <=>  (psi'^2-1)/psi^2 - psi''/psi >= 0
    return run_condition("radial_vs_tangential", radii, [&](double r) {
        return profile.tangential_defect(r) - profile.second_over_psi(r);
    });
}

ConditionReport check_sturm(const WarpingProfile& profile, const std::vector<double>& radii) {
    if (!profile.is_global() || !check_curvature_bound(profile, radii).passed) {
        ConditionReport report;
        report.condition = "sturm_comparison";
        report.applicable = false;
        report.passed = false;
        return report;
    }
    return run_condition("sturm_comparison", radii, [&](double r) {
        const double m1 = profile.log_derivative(r) - 1.0 / std::tanh(r);
        const double m2 = profile.psi(r) - std::sinh(r);
        return std::min(m1, m2);
    });
}

AsymptoticFit estimate_asymptotic_exponent(const WarpingProfile& profile, double r_lo, double r_hi,
                                           int samples) {
    if (!(r_hi > r_lo) || !(r_lo > profile.valid_from)) {
        throw InvalidParameterError("asymptotic fit requires valid_from < r_lo < r_hi");
    }
    samples = std::max(samples, 32);
    std::vector<double> xs(samples), ys(samples);
    double prev = 0.0;
    int direction = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double r = r_lo * std::pow(r_hi / r_lo, t);
        const double q = profile.log_derivative(r);
        if (!(q > 0.0)) {
            throw FitDegenerateError("psi'/psi must be positive on the fit window");
        }
        if (i > 0 && q != prev) {
            const int d = q > prev ? 1 : -1;
            if (direction != 0 && d != direction) {
                throw FitDegenerateError("psi'/psi is non-monotone on the fit window");
            }
            direction = d;
        }
        prev = q;
        xs[i] = std::log(r);
        ys[i] = std::log(q);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < samples; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = samples;
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    AsymptoticFit fit;
    fit.a = slope;
    fit.C = std::exp(intercept);
    double ss = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    if (profile.asymptotic) {
        const bool c_ok = std::abs(fit.C - profile.asymptotic->C) <= 0.05 * std::abs(profile.asymptotic->C);
        const bool a_ok = std::abs(fit.a - profile.asymptotic->a) <=
                          0.05 * std::max(1.0, std::abs(profile.asymptotic->a));
        fit.cross_check_ok = c_ok && a_ok;
    }
    return fit;
}

}  // namespace warpineq
