#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace warpineq {

enum class TestFunctionKind { bump, spline, ground_state_product, custom };

/// A smooth radial test function with analytic first and second derivatives.
/// Compactly supported kinds vanish identically outside [support_lo, support_hi].
struct RadialTestFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv1;
    std::function<double(double)> deriv2;
    double support_lo = 0.0;
    double support_hi = std::numeric_limits<double>::infinity();
    TestFunctionKind kind = TestFunctionKind::custom;
    std::string label;
};

/// A finite sum of radial coefficients against sphere harmonics. The mode-0
/// coefficient is the radial part of the function itself (harmonics are scaled
/// so the constant mode is identically 1).
struct ModalTestFunction {
    std::vector<std::pair<int, RadialTestFunction>> modes;
};

void validate_modes(const ModalTestFunction& u);

/// amplitude * exp(-1/(1-t^2)) with t = (r-c)/w, zero outside |t| < 1.
RadialTestFunction make_bump(double center, double half_width, double amplitude = 1.0);

/// Cubic B-spline bump scaled to peak `amplitude` at the center; C^2, compact support.
RadialTestFunction make_spline(double center, double half_width, double amplitude = 1.0);

RadialTestFunction zero_test_function();

/// Central finite differences, step max(1e-5, 1e-5 r) for order 1 and
/// max(1e-4, 1e-4 r) for order 2.
double differentiate(const std::function<double(double)>& f, double r, int order);

}  // namespace warpineq
