#include "warpineq/test_function.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace warpineq {

void validate_modes(const ModalTestFunction& u) {
    if (u.modes.empty()) {
        throw std::invalid_argument("modal test function requires at least one mode");
    }
    std::set<int> seen;
    for (const auto& [n, a] : u.modes) {
        if (n < 0) throw std::invalid_argument("mode indices must be >= 0");
        if (!seen.insert(n).second) {
            throw std::invalid_argument("duplicate mode index " + std::to_string(n));
        }
        (void)a;
    }
}

RadialTestFunction make_bump(double center, double half_width, double amplitude) {
    if (!(half_width > 0.0)) throw std::invalid_argument("bump half-width must be positive");
    if (center - half_width < 0.0) {
        throw std::invalid_argument("bump support must not extend below r = 0");
    }
    const double c = center, w = half_width, A = amplitude;
    RadialTestFunction f;
    f.kind = TestFunctionKind::bump;
    f.support_lo = c - w;
    f.support_hi = c + w;
    {
        std::ostringstream os;
        os << "bump(c=" << c << ",w=" << w << ",A=" << A << ")";
        f.label = os.str();
    }
    f.value = [c, w, A](double r) {
        const double t = (r - c) / w;
        const double q = 1.0 - t * t;
        if (q <= 0.0) return 0.0;
        return A * std::exp(-1.0 / q);
    };
    f.deriv1 = [c, w, A](double r) {
        const double t = (r - c) / w;
        const double q = 1.0 - t * t;
        if (q <= 0.0) return 0.0;
        const double e = std::exp(-1.0 / q);
        if (e == 0.0) return 0.0;
        return A * e * (-2.0 * t / (q * q)) / w;
    };
    f.deriv2 = [c, w, A](double r) {
        const double t = (r - c) / w;
        const double q = 1.0 - t * t;
        if (q <= 0.0) return 0.0;
        const double e = std::exp(-1.0 / q);
        if (e == 0.0) return 0.0;
        const double s1 = -2.0 * t / (q * q);
        const double s2 = -(2.0 + 6.0 * t * t) / (q * q * q);
        return A * e * (s1 * s1 + s2) / (w * w);
    };
    return f;
}

namespace {

// Cubic B-spline profile on [-2, 2], peak value 2/3 at t = 0.
double bspline(double t) {
    t = std::abs(t);
    if (t >= 2.0) return 0.0;
    if (t >= 1.0) {
        const double u = 2.0 - t;
        return u * u * u / 6.0;
    }
    return (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0;
}

double bspline_d1(double t) {
    const double s = t < 0.0 ? -1.0 : 1.0;
    t = std::abs(t);
    if (t >= 2.0) return 0.0;
    if (t >= 1.0) {
        const double u = 2.0 - t;
        return -s * u * u / 2.0;
    }
    return s * t * (3.0 * t - 4.0) / 2.0;
}

double bspline_d2(double t) {
    t = std::abs(t);
    if (t >= 2.0) return 0.0;
    if (t >= 1.0) return 2.0 - t;
    return 3.0 * t - 2.0;
}

}  // namespace

RadialTestFunction make_spline(double center, double half_width, double amplitude) {
    if (!(half_width > 0.0)) throw std::invalid_argument("spline half-width must be positive");
    if (center - half_width < 0.0) {
        throw std::invalid_argument("spline support must not extend below r = 0");
    }
    const double c = center, w = half_width;
    const double scale = amplitude * 1.5;  // normalize the 2/3 peak
    RadialTestFunction f;
    f.kind = TestFunctionKind::spline;
    f.support_lo = c - w;
    f.support_hi = c + w;
    {
        std::ostringstream os;
        os << "spline(c=" << c << ",w=" << w << ",A=" << amplitude << ")";
        f.label = os.str();
    }
    f.value = [c, w, scale](double r) { return scale * bspline(2.0 * (r - c) / w); };
    f.deriv1 = [c, w, scale](double r) { return scale * bspline_d1(2.0 * (r - c) / w) * 2.0 / w; };
    f.deriv2 = [c, w, scale](double r) { return scale * bspline_d2(2.0 * (r - c) / w) * 4.0 / (w * w); };
    return f;
}

RadialTestFunction zero_test_function() {
    RadialTestFunction f;
    f.kind = TestFunctionKind::custom;
    f.support_lo = 1.0;
    f.support_hi = 2.0;
    f.label = "zero";
    f.value = [](double) { return 0.0; };
    f.deriv1 = [](double) { return 0.0; };
    f.deriv2 = [](double) { return 0.0; };
    return f;
}

double differentiate(const std::function<double(double)>& f, double r, int order) {
    if (order == 1) {
        const double h = std::max(1e-5, 1e-5 * r);
        return (f(r + h) - f(r - h)) / (2.0 * h);
    }
    if (order == 2) {
        const double h = std::max(1e-4, 1e-4 * r);
        return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
    }
    throw std::invalid_argument("differentiate supports orders 1 and 2");
}

}  // namespace warpineq
