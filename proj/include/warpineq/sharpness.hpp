#pragma once

#include <utility>
#include <vector>

#include "warpineq/functionals.hpp"

namespace warpineq {

/// r^{1/2} / psi^{(N-1)/2}: the radial function saturating the first-order
/// inequality pointwise.
double ground_state(const ManifoldModel& model, double r);

struct GroundStateDerivs {
    double u0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

GroundStateDerivs ground_state_derivs(const ManifoldModel& model, double r);

/// Residual of the critical identity satisfied by the ground state; zero for
/// every model up to rounding.
double ground_state_residual(const ManifoldModel& model, double r);

/// Natural scale |u0|/r^2 + |u0''| against which the residual is compared.
double ground_state_residual_scale(const ManifoldModel& model, double r);

struct CutoffValue {
    double value = 0.0;
    double derivative = 0.0;
};

/// Piecewise cutoff: 0 on (0,1], n^{-a}(r-1) on [1,2], n^{-a} on [2,n],
/// r^{-a} on [n, inf).
CutoffValue cutoff_phi(long long n, double alpha, double r);

/// u0 * phi_n as a radial test function (tail-supported, not compact).
/// The closures keep a reference to the model, which must outlive them.
RadialTestFunction ground_state_test_function(const ManifoldModel& model, long long n, double alpha);

struct ClosedFormIntegrals {
    double denom_bound = 0.0;  // lower bound for the u0^2 phi^2 / r^2 volume integral
    double grad_term = 0.0;    // exact value of the u0^2 (phi')^2 volume integral
    double psi_bound = 0.0;    // upper bound for the u0^2 phi^2 / psi^2 volume integral
};

/// Closed-form estimates for the minimizing-sequence integrals on the
/// hyperbolic-type tail (volume normalization included).
ClosedFormIntegrals closed_form_integrals(long long n, double alpha, int N);

struct SequenceQuotientResult {
    long long n = 0;
    double alpha = 0.0;
    double quotient = 0.0;
    double numerator = 0.0;        // grad integral minus curvature mass integral
    double denominator = 0.0;      // u^2 / r^2 volume integral
    double grad_phi_term = 0.0;    // u0^2 (phi')^2 volume integral
    double psi_weight_term = 0.0;  // u^2 / psi^2 volume integral
    double quad_error = 0.0;
};

/// Rayleigh-type quotient of the minimizing sequence u0 phi_n, computed by
/// quadrature in a scale-free form (all integrands reduced through
/// u0^2 psi^{N-1} = r).
SequenceQuotientResult sequence_quotient(const ManifoldModel& model, long long n, double alpha,
                                         const QuadratureSpec& spec = {});

enum class SharpnessExperiment { sequence_quotient, spectral_quotient, poincare_gap };

const char* to_string(SharpnessExperiment e);

struct SharpnessResult {
    SharpnessExperiment experiment_id = SharpnessExperiment::sequence_quotient;
    std::vector<std::pair<double, double>> samples;  // (parameter, value), parameter-sorted
    double fitted_limit = 0.0;
    std::string fit_model;
    double fit_residual = 0.0;
};

/// Fits q(n) ~ c0 + c1 / (log(n/2) + 1/(2 alpha)) and extrapolates c0.
SharpnessResult fit_limit(const std::vector<std::pair<double, double>>& samples, double alpha);

enum class SpectralTarget { poincare_gap, cm_quotient };

const char* to_string(SpectralTarget t);
SpectralTarget spectral_target_from_string(const std::string& s);

struct SpectralSample {
    double R = 0.0;
    double eigenvalue = 0.0;
    int grid_points = 0;
    double epsilon = 0.0;
};

/// Smallest generalized eigenvalue of the discretized quadratic-form pencil on
/// [eps, R], eps = R/grid_points, Dirichlet ends, mass-lumped first differences.
SpectralSample spectral_constant_estimate(const ManifoldModel& model, SpectralTarget target,
                                          double R, int grid_points);

/// Sweep over truncation radii. grid_points applies to the largest radius;
/// smaller radii use proportionally fewer points so the inner cutoff eps is
/// identical across the sweep (truncated domains then nest).
SharpnessResult spectral_sweep(const ManifoldModel& model, SpectralTarget target,
                               const std::vector<double>& radii, int grid_points);

/// Diagnostic: relative gap of the substitution identity obtained by writing a
/// radial coefficient through d = psi^{(N-1)/2} a. Near zero for smooth input.
double radial_transform_identity_gap(const ManifoldModel& model, const RadialTestFunction& a,
                                     const QuadratureSpec& spec = {});

}  // namespace warpineq
