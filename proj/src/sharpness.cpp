#include "warpineq/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace warpineq {

double ground_state(const ManifoldModel& model, double r) {
    if (!(r > 0.0)) throw EvaluationDomainError("ground state requires r > 0");
    const double p = (model.dimension - 1) / 2.0;
    return std::sqrt(r) * std::pow(model.profile.psi(r), -p);
}

GroundStateDerivs ground_state_derivs(const ManifoldModel& model, double r) {
    const double p = (model.dimension - 1) / 2.0;
    const double L = model.profile.log_derivative(r);
    const double sop = model.profile.second_over_psi(r);
    GroundStateDerivs g;
    g.u0 = ground_state(model, r);
    const double s = 1.0 / (2.0 * r) - p * L;
    g.d1 = g.u0 * s;
    g.d2 = g.u0 * (s * s - 1.0 / (2.0 * r * r) - p * (sop - L * L));
    return g;
}

double ground_state_residual(const ManifoldModel& model, double r) {
    const int N = model.dimension;
    const double p = (N - 1) / 2.0;
    const auto g = ground_state_derivs(model, r);
    const double L = model.profile.log_derivative(r);
    const double ps = model.profile.psi(r);
    const double lap = g.d2 + (N - 1) * L * g.d1;
    return -lap - (N - 1) / 4.0 * lambda_rad_at(model, r) * g.u0 -
           0.25 * g.u0 / (r * r) - p * (p - 1.0) * g.u0 / (ps * ps);
}

double ground_state_residual_scale(const ManifoldModel& model, double r) {
    const auto g = ground_state_derivs(model, r);
    return std::abs(g.u0) / (r * r) + std::abs(g.d2);
}

CutoffValue cutoff_phi(long long n, double alpha, double r) {
    if (n < 3) throw std::invalid_argument("cutoff sequence index must be >= 3");
    if (!(alpha > 1.0)) throw std::invalid_argument("cutoff exponent must satisfy alpha > 1");
    const double na = std::pow(static_cast<double>(n), -alpha);
    CutoffValue c;
    if (r <= 1.0) {
        return c;
    }
    if (r <= 2.0) {
        c.value = na * (r - 1.0);
        c.derivative = na;
    } else if (r <= static_cast<double>(n)) {
        c.value = na;
        c.derivative = 0.0;
    } else {
        c.value = std::pow(r, -alpha);
        c.derivative = -alpha * std::pow(r, -alpha - 1.0);
    }
    return c;
}

RadialTestFunction ground_state_test_function(const ManifoldModel& model, long long n,
                                              double alpha) {
    RadialTestFunction f;
    f.kind = TestFunctionKind::ground_state_product;
    f.support_lo = 1.0;
    f.support_hi = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "ground_state_product(n=" << n << ",alpha=" << alpha << ")";
        f.label = os.str();
    }
    f.value = [&model, n, alpha](double r) {
        if (r <= 1.0) return 0.0;
        return ground_state(model, r) * cutoff_phi(n, alpha, r).value;
    };
    f.deriv1 = [&model, n, alpha](double r) {
        if (r <= 1.0) return 0.0;
        const auto g = ground_state_derivs(model, r);
        const auto c = cutoff_phi(n, alpha, r);
        return g.d1 * c.value + g.u0 * c.derivative;
    };
    f.deriv2 = [&model, n, alpha](double r) {
        if (r <= 1.0) return 0.0;
        const auto g = ground_state_derivs(model, r);
        const auto c = cutoff_phi(n, alpha, r);
        double phi_dd = 0.0;
        if (r > static_cast<double>(n)) phi_dd = alpha * (alpha + 1.0) * std::pow(r, -alpha - 2.0);
        return g.d2 * c.value + 2.0 * g.d1 * c.derivative + g.u0 * phi_dd;
    };
    return f;
}

ClosedFormIntegrals closed_form_integrals(long long n, double alpha, int N) {
    if (n < 3) throw std::invalid_argument("closed-form estimates require n >= 3");
    if (!(alpha > 1.0)) throw std::invalid_argument("closed-form estimates require alpha > 1");
    const double omega = sphere_area(N);
    const double scale = omega * std::pow(static_cast<double>(n), -2.0 * alpha);
    ClosedFormIntegrals cf;
    cf.denom_bound = scale * (std::log(n / 2.0) + 1.0 / (2.0 * alpha));
    cf.grad_term = scale * (1.5 + 0.5 * alpha);
    const double s1 = std::sinh(1.0);
    cf.psi_bound = scale * (7.0 / (12.0 * s1 * s1) +
                            std::log(std::abs((std::exp(-static_cast<double>(n)) - 1.0) /
                                              (std::exp(-static_cast<double>(n)) + 1.0))) -
                            std::log(std::abs((std::exp(-2.0) - 1.0) / (std::exp(-2.0) + 1.0))) +
                            1.0 / alpha);
    return cf;
}

namespace {

// Scaled cutoff n^{alpha} phi_n and its derivative; O(1) everywhere.
struct ScaledCutoff {
    double n;
    double alpha;
    double value(double r) const {
        if (r <= 1.0) return 0.0;
        if (r <= 2.0) return r - 1.0;
        if (r <= n) return 1.0;
        return std::pow(r / n, -alpha);
    }
    double derivative(double r) const {
        if (r <= 1.0 || (r > 2.0 && r <= n)) return 0.0;
        if (r <= 2.0) return 1.0;
        return -alpha * std::pow(r / n, -alpha) / r;
    }
};

// Doubling-block integration toward infinity for the sequence tails.
IntegrationResult tail_integral(const std::function<double(double)>& f, double from,
                                const QuadratureSpec& spec) {
    IntegrationResult total;
    double lo = from;
    double width = std::max(1.0, from);
    for (int k = 0; k < 64; ++k) {
        IntegrationResult block = integrate(f, lo, lo + width, spec);
        total += block;
        lo += width;
        width *= 2.0;
        if (k >= 2 && std::abs(block.value) <=
                          std::max(spec.abs_tol, 1e-3 * spec.rel_tol * std::abs(total.value))) {
            return total;
        }
    }
    throw std::runtime_error("tail truncation did not converge");
}

}  // namespace

SequenceQuotientResult sequence_quotient(const ManifoldModel& model, long long n, double alpha,
                                         const QuadratureSpec& spec) {
    if (n < 3) throw std::invalid_argument("sequence index must be >= 3");
    if (!model.profile.asymptotic) {
        throw InvalidParameterError("sequence quotient needs the profile's asymptotic exponent");
    }
    const double a_exp = model.profile.asymptotic->a;
    if (!(alpha > 1.0 + a_exp)) {
        throw InvalidParameterError("sequence quotient requires alpha > 1 + a");
    }
    if (model.profile.valid_from > 1.0) {
        throw InvalidParameterError("sequence quotient integrates from r = 1; profile undefined there");
    }
    {
        std::vector<double> radii(33);
        const double lo = std::max(1.0, model.profile.valid_from);
        for (int i = 0; i < 33; ++i) radii[i] = lo + i * 0.5;
        if (!check_curvature_bound(model.profile, radii).passed) {
            throw InvalidParameterError("sequence quotient requires the radial curvature bound");
        }
    }

    const int N = model.dimension;
    const double p = (N - 1) / 2.0;
    const ScaledCutoff phi{static_cast<double>(n), alpha};
    const auto& prof = model.profile;

    // All integrands carry the exact reduction u0^2 psi^{N-1} = r.
    auto num_f = [&](double r) {
        const double v = phi.value(r);
        const double s = v * (1.0 / (2.0 * r) - p * prof.log_derivative(r)) + phi.derivative(r);
        const double mass = (N - 1) / 4.0 * lambda_rad_at(model, r);
        return r * (s * s - mass * v * v);
    };
    auto den_f = [&](double r) {
        const double v = phi.value(r);
        return v * v / r;
    };
    auto psi_f = [&](double r) {
        const double v = phi.value(r);
        const double ps = prof.psi(r);
        return r * v * v / (ps * ps);
    };
    auto gradphi_f = [&](double r) {
        const double d = phi.derivative(r);
        return r * d * d;
    };

    const double nd = static_cast<double>(n);
    auto piecewise = [&](const std::function<double(double)>& f) {
        IntegrationResult total = integrate(f, 1.0, 2.0, spec);
        double lo = 2.0;
        while (lo < nd) {  // doubling blocks keep the adaptive heap local
            const double hi = std::min(nd, lo * 2.0);
            total += integrate(f, lo, hi, spec);
            lo = hi;
        }
        total += tail_integral(f, nd, spec);
        return total;
    };

    const IntegrationResult num = piecewise(num_f);
    const IntegrationResult den = piecewise(den_f);
    const IntegrationResult psi_term = piecewise(psi_f);
    const IntegrationResult gradphi = piecewise(gradphi_f);

    const double omega = sphere_area(N);
    const double scale = omega * std::pow(nd, -2.0 * alpha);
    SequenceQuotientResult q;
    q.n = n;
    q.alpha = alpha;
    q.numerator = scale * num.value;
    q.denominator = scale * den.value;
    q.psi_weight_term = scale * psi_term.value;
    q.grad_phi_term = scale * gradphi.value;
    q.quotient = num.value / den.value;
    q.quad_error = scale * (num.error + den.error + psi_term.error + gradphi.error);
    return q;
}

const char* to_string(SharpnessExperiment e) {
    switch (e) {
        case SharpnessExperiment::sequence_quotient: return "sequence_quotient";
        case SharpnessExperiment::spectral_quotient: return "spectral_quotient";
        case SharpnessExperiment::poincare_gap: return "poincare_gap";
    }
    return "unknown";
}

namespace {

SharpnessResult fit_two_parameter(const std::vector<std::pair<double, double>>& samples,
                                  const std::function<double(double)>& basis,
                                  const std::string& model_desc, SharpnessExperiment id) {
    double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (const auto& [param, value] : samples) {
        const double x = basis(param);
        s1 += 1.0;
        sx += x;
        sxx += x * x;
        sy += value;
        sxy += x * value;
    }
    const double det = s1 * sxx - sx * sx;
    if (!(std::abs(det) > 1e-14 * std::max(1.0, sxx) * s1)) {
        throw FitDegenerateError("fit basis values are degenerate");
    }
    const double c1 = (s1 * sxy - sx * sy) / det;
    const double c0 = (sy - c1 * sx) / s1;
    double ss = 0.0;
    for (const auto& [param, value] : samples) {
        const double e = value - (c0 + c1 * basis(param));
        ss += e * e;
    }
    SharpnessResult result;
    result.experiment_id = id;
    result.samples = samples;
    result.fitted_limit = c0;
    result.fit_model = model_desc;
    result.fit_residual = std::sqrt(ss / s1);
    return result;
}

}  // namespace

SharpnessResult fit_limit(const std::vector<std::pair<double, double>>& samples, double alpha) {
    if (samples.size() < 4) throw FitDegenerateError("limit fit needs at least 4 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].first > samples[i - 1].first)) {
            throw FitDegenerateError("limit fit needs strictly increasing sequence indices");
        }
    }
    std::ostringstream os;
    os << "c0 + c1/(log(n/2) + 1/(2*" << alpha << "))";
    return fit_two_parameter(samples,
                             [alpha](double nv) {
                                 return 1.0 / (std::log(nv / 2.0) + 1.0 / (2.0 * alpha));
                             },
                             os.str(), SharpnessExperiment::sequence_quotient);
}

const char* to_string(SpectralTarget t) {
    return t == SpectralTarget::poincare_gap ? "poincare_gap" : "cm_quotient";
}

SpectralTarget spectral_target_from_string(const std::string& s) {
    if (s == "poincare_gap") return SpectralTarget::poincare_gap;
    if (s == "cm_quotient") return SpectralTarget::cm_quotient;
    throw std::invalid_argument("unknown spectral target: " + s);
}

namespace {

// Count of eigenvalues of the symmetric tridiagonal matrix below sigma.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double sigma) {
    int count = 0;
    double q = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = i == 0 ? d[0] - sigma : d[i] - sigma - e[i - 1] * e[i - 1] / q;
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

double smallest_eigenvalue_bisection(const std::vector<double>& d, const std::vector<double>& e) {
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double left = i > 0 ? std::abs(e[i - 1]) : 0.0;
        const double right = i < e.size() ? std::abs(e[i]) : 0.0;
        lo = std::min(lo, d[i] - left - right);
        hi = std::max(hi, d[i] + left + right);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(hi))) return 0.5 * (lo + hi);
    }
    throw std::runtime_error("eigenvalue bisection did not converge");
}

}  // namespace

SpectralSample spectral_constant_estimate(const ManifoldModel& model, SpectralTarget target,
                                          double R, int grid_points) {
    if (!(R > 1.0)) throw std::invalid_argument("truncation radius must exceed 1");
    if (grid_points < 256) throw std::invalid_argument("spectral grid needs at least 256 points");
    if (target == SpectralTarget::cm_quotient) {
        if (!model.profile.is_global()) {
            throw InvalidParameterError("the quotient estimate needs a global profile");
        }
        std::vector<double> radii(33);
        for (int i = 0; i < 33; ++i) radii[i] = 0.1 + (R - 0.1) * i / 32.0;
        if (!check_curvature_bound(model.profile, radii).passed) {
            throw InvalidParameterError("the quotient estimate requires the curvature bound");
        }
    }

    const int N = model.dimension;
    const int M = grid_points;
    const double eps = R / grid_points;
    const double h = (R - eps) / M;
    const auto& prof = model.profile;

    auto weight = [&](double r) {
        double w = 1.0;
        const double ps = prof.psi(r);
        for (int i = 0; i < N - 1; ++i) w *= ps;
        return w;
    };

    std::vector<double> wmid(M);
    for (int j = 0; j < M; ++j) wmid[j] = weight(eps + (j + 0.5) * h);

    const int interior = M - 1;
    std::vector<double> diag(interior), mass(interior), off(interior > 0 ? interior - 1 : 0);
    for (int i = 1; i <= interior; ++i) {
        const double r = eps + i * h;
        diag[i - 1] = (wmid[i - 1] + wmid[i]) / h;
        const double wr = weight(r);
        if (target == SpectralTarget::cm_quotient) {
            diag[i - 1] -= (N - 1) / 4.0 * lambda_rad_at(model, r) * wr * h;
            mass[i - 1] = wr / (r * r) * h;
        } else {
            mass[i - 1] = wr * h;
        }
        if (!(mass[i - 1] > 0.0)) throw std::runtime_error("non-positive mass weight");
    }
    for (int i = 0; i + 1 < interior; ++i) off[i] = -wmid[i + 1] / h;

    std::vector<double> d(interior), e(off.size());
    for (int i = 0; i < interior; ++i) {
        d[i] = diag[i] / mass[i];
        if (!std::isfinite(d[i])) throw std::runtime_error("spectral weights overflow; reduce R or N");
    }
    for (std::size_t i = 0; i < off.size(); ++i) {
        e[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
        if (!std::isfinite(e[i])) throw std::runtime_error("spectral weights overflow; reduce R or N");
    }

    SpectralSample sample;
    sample.R = R;
    sample.grid_points = grid_points;
    sample.epsilon = eps;
    sample.eigenvalue = smallest_eigenvalue_bisection(d, e);
    return sample;
}

SharpnessResult spectral_sweep(const ManifoldModel& model, SpectralTarget target,
                               const std::vector<double>& radii, int grid_points) {
    if (radii.empty()) throw std::invalid_argument("spectral sweep needs at least one radius");
    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    const double r_max = sorted.back();
    std::vector<std::pair<double, double>> samples;
    samples.reserve(sorted.size());
    for (double R : sorted) {
        const int pts = std::max(256, static_cast<int>(std::lround(grid_points * R / r_max)));
        samples.emplace_back(R, spectral_constant_estimate(model, target, R, pts).eigenvalue);
    }
    const SharpnessExperiment id = target == SpectralTarget::poincare_gap
                                       ? SharpnessExperiment::poincare_gap
                                       : SharpnessExperiment::spectral_quotient;
    if (samples.size() == 1) {
        SharpnessResult result;
        result.experiment_id = id;
        result.samples = samples;
        result.fitted_limit = samples.front().second;
        result.fit_model = "single sample";
        return result;
    }
    if (target == SpectralTarget::poincare_gap) {
        return fit_two_parameter(samples, [](double R) { return 1.0 / (R * R); }, "c0 + c1/R^2", id);
    }
    return fit_two_parameter(samples, [](double R) { return 1.0 / std::log(R); }, "c0 + c1/log(R)",
                             id);
}

double radial_transform_identity_gap(const ManifoldModel& model, const RadialTestFunction& a,
                                     const QuadratureSpec& spec) {
    const int N = model.dimension;
    const double p = (N - 1) / 2.0;
    const double omega = sphere_area(N);
    const auto& prof = model.profile;

    auto lhs = integrate_weighted(model, [&](double r) {
        const double d = a.deriv1(r);
        return d * d;
    }, a, spec);

    // d = psi^p a; d' = psi^p (a' + p L a). The substitution turns the weighted
    // gradient integral into three unweighted pieces.
    const double lo = std::max(a.support_lo, std::max(prof.valid_from, 1e-12));
    auto d_grad = integrate([&](double r) {
        const double ps = std::pow(prof.psi(r), p);
        const double d = ps * (a.deriv1(r) + p * prof.log_derivative(r) * a.value(r));
        return d * d;
    }, lo, a.support_hi, spec);
    auto mass = integrate([&](double r) {
        const double dv = std::pow(prof.psi(r), p) * a.value(r);
        return lambda_rad_at(model, r) * dv * dv;
    }, lo, a.support_hi, spec);
    auto psi_term = integrate([&](double r) {
        const double dv = std::pow(prof.psi(r), p) * a.value(r);
        const double ps = prof.psi(r);
        return dv * dv / (ps * ps);
    }, lo, a.support_hi, spec);

    const double left = omega * lhs.value;
    const double right = omega * (d_grad.value + (N - 1) / 4.0 * mass.value +
                                  (N - 1) * (N - 3) / 4.0 * psi_term.value);
    return std::abs(left - right) / std::max(std::abs(left), 1e-300);
}

}  // namespace warpineq
