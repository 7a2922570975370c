#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "warpineq/geometry.hpp"

namespace warpineq {

class NanIntegrandError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Controls the adaptive integrator. panel_rule is the Kronrod order of the
/// nested panel rule (only 15 is built in).
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4096;
    int panel_rule = 15;

    void validate() const;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int panels = 0;

    IntegrationResult& operator+=(const IntegrationResult& other) {
        value += other.value;
        error += other.error;
        converged = converged && other.converged;
        panels += other.panels;
        return *this;
    }
};

/// Globally adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
/// Optional breakpoints seed panel boundaries (kinks, support edges).
IntegrationResult integrate(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec = {},
                            std::span<const double> breakpoints = {});

/// Integral of g against the volume weight psi^{N-1} over [lo, hi].
/// A support endpoint at 0 is clipped to 1e-12; the weight keeps the
/// integrands of interest finite there.
IntegrationResult integrate_weighted(const ManifoldModel& model,
                                     const std::function<double(double)>& g, double lo, double hi,
                                     const QuadratureSpec& spec = {});

/// Same weight, integrated over the test function's support.
IntegrationResult integrate_weighted(const ManifoldModel& model,
                                     const std::function<double(double)>& g,
                                     const RadialTestFunction& support_of,
                                     const QuadratureSpec& spec = {});

/// Integrates f over [a, inf) by doubling blocks until a block's contribution
/// is negligible against the accumulated total.
IntegrationResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                        const QuadratureSpec& spec = {}, int max_blocks = 64);

}  // namespace warpineq
