#include "warpineq/geometry.hpp"

#include <cmath>
#include <numbers>

namespace warpineq {

namespace {

// Cancellation-safe (psi'^2 - 1) for custom profiles near the pole, where the
// finite-difference derivative makes the direct expression 0/0-unstable.
double custom_psm1(const WarpingProfile& profile, double r) {
    const long double h = 1e-5L * std::max(1.0, static_cast<double>(r));
    const long double hi = profile.custom_psi(static_cast<double>(r + h));
    const long double lo = profile.custom_psi(static_cast<double>(r - h));
    const long double d = (hi - lo) / (2.0L * h);
    return static_cast<double>((d - 1.0L) * (d + 1.0L));
}

}  // namespace

CurvatureSample curvature_at(const ManifoldModel& model, double r) {
    const auto& prof = model.profile;
    if (prof.is_global() && r < 1e-6) {
        throw EvaluationDomainError("curvature refused below r = 1e-6 (0/0 at the pole)");
    }
    CurvatureSample s;
    s.r = r;
    s.k_rad = -prof.second_over_psi(r);
    if (prof.family == ProfileFamily::custom && r < 1e-4) {
        const double ps = prof.psi(r);
        s.h_tan = -custom_psm1(prof, r) / (ps * ps);
    } else {
        s.h_tan = -prof.tangential_defect(r);
    }
    s.lambda_rad = -2.0 * s.k_rad - (model.dimension - 3) * s.h_tan;
    return s;
}

double lambda_rad_at(const ManifoldModel& model, double r) {
    const auto& prof = model.profile;
    return 2.0 * prof.second_over_psi(r) + (model.dimension - 3) * prof.tangential_defect(r);
}

CurvatureSample prototype_curvature_closed_form(ProfileFamily family, const ProfileParams& p,
                                                int N, double r) {
    CurvatureSample s;
    s.r = r;
    switch (family) {
        case ProfileFamily::exp_tail: {
            if (r < p.R) throw EvaluationDomainError("closed form defined for r >= R");
            const double a1 = p.a + 1.0;
            const double r2a = std::pow(r, 2.0 * p.a);
            const double ram1 = std::pow(r, p.a - 1.0);
            const double inv_psi2 = 1.0 / (p.A * p.A * std::exp(2.0 * p.b * std::pow(r, a1)));
            s.k_rad = -p.b * p.b * a1 * a1 * r2a - p.b * p.a * a1 * ram1;
            s.h_tan = -p.b * p.b * a1 * a1 * r2a + inv_psi2;
            s.lambda_rad = 2.0 * p.b * p.a * a1 * ram1 + p.b * p.b * a1 * a1 * (N - 1) * r2a -
                           (N - 3) * inv_psi2;
            return s;
        }
        case ProfileFamily::r_exp_tail: {
            if (r < p.R) throw EvaluationDomainError("closed form defined for r >= R");
            const double a1 = p.a + 1.0;
            const double r2a = std::pow(r, 2.0 * p.a);
            const double ram1 = std::pow(r, p.a - 1.0);
            const double inv_psi2 = 1.0 / (p.A * p.A * r * r * std::exp(2.0 * p.b * std::pow(r, a1)));
            s.k_rad = -p.b * p.b * a1 * a1 * r2a - p.b * a1 * (p.a + 2.0) * ram1;
            s.h_tan = -p.b * p.b * a1 * a1 * r2a - 2.0 * p.b * a1 * ram1 - 1.0 / (r * r) + inv_psi2;
            s.lambda_rad = 2.0 * p.b * a1 * (N - 1.0 + p.a) * ram1 +
                           p.b * p.b * a1 * a1 * (N - 1) * r2a + (N - 3) / (r * r) -
                           (N - 3) * inv_psi2;
            return s;
        }
        case ProfileFamily::gauss: {
            const double m = p.m;
            const double r4 = std::pow(r, 4.0 * m - 2.0);
            const double r2 = std::pow(r, 2.0 * m - 2.0);
            const double inv_psi2 = 1.0 / (r * r * std::exp(2.0 * std::pow(r, 2 * p.m)));
            s.k_rad = -4.0 * m * m * r4 - 2.0 * m * (2.0 * m + 1.0) * r2;
            s.h_tan = -4.0 * m * m * r4 - 1.0 / (r * r) - 4.0 * m * r2 + inv_psi2;
            s.lambda_rad = 4.0 * m * m * (N - 1) * r4 + 4.0 * m * (N - 2.0 + 2.0 * m) * r2 +
                           (N - 3) / (r * r) - (N - 3) * inv_psi2;
            return s;
        }
        default:
            throw InvalidParameterError("closed-form curvature covers exp_tail, r_exp_tail, gauss");
    }
}

double radial_laplacian(const ManifoldModel& model, const RadialTestFunction& f, double r) {
    return f.deriv2(r) + (model.dimension - 1) * model.profile.log_derivative(r) * f.deriv1(r);
}

double modal_laplacian(const ManifoldModel& model, const RadialTestFunction& a, int n, double r) {
    const double ps = model.profile.psi(r);
    return radial_laplacian(model, a, r) -
           sphere_mode(n, model.dimension).lambda_n * a.value(r) / (ps * ps);
}

SphereMode sphere_mode(int n, int N) {
    if (n < 0) throw std::invalid_argument("mode index must be >= 0");
    if (N < 3) throw DimensionError("sphere modes require N >= 3");
    SphereMode mode;
    mode.n = n;
    mode.lambda_n = static_cast<double>(n) * n + static_cast<double>(N - 2) * n;
    if (n == 0) {
        mode.c_n = 1;
    } else if (n == 1) {
        mode.c_n = static_cast<std::uint64_t>(N);
    } else {
        auto binom = [](int top, int k) {
            std::uint64_t result = 1;
            for (int i = 1; i <= k; ++i) {
                result = result * static_cast<std::uint64_t>(top - k + i) / static_cast<std::uint64_t>(i);
            }
            return result;
        };
        mode.c_n = binom(N + n - 1, n) - binom(N + n - 3, n - 2);
    }
    return mode;
}

double sphere_area(int N) {
    if (N < 2) throw DimensionError("sphere area requires N >= 2");
    const double half = 0.5 * N;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace warpineq
