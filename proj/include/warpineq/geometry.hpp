#pragma once

#include <cstdint>

#include "warpineq/profile.hpp"
#include "warpineq/test_function.hpp"

namespace warpineq {

class DimensionError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A rotationally symmetric model: dimension N >= 3 plus a warping profile.
struct ManifoldModel {
    int dimension = 3;
    WarpingProfile profile;

    ManifoldModel(int N, WarpingProfile prof) : dimension(N), profile(std::move(prof)) {
        if (N < 3) throw DimensionError("model dimension must be >= 3");
    }
};

/// Sectional curvatures at one radius and the combination entering the
/// curvature mass term: lambda_rad = -2 k_rad - (N-3) h_tan.
struct CurvatureSample {
    double r = 0.0;
    double k_rad = 0.0;
    double h_tan = 0.0;
    double lambda_rad = 0.0;
};

/// Sphere Laplacian mode: eigenvalue n^2 + (N-2) n with its eigenspace dimension.
struct SphereMode {
    int n = 0;
    double lambda_n = 0.0;
    std::uint64_t c_n = 1;
};

CurvatureSample curvature_at(const ManifoldModel& model, double r);

/// Closed-form curvature for the prototype families, evaluated from the listed
/// algebraic expressions. Independent cross-check for curvature_at.
CurvatureSample prototype_curvature_closed_form(ProfileFamily family, const ProfileParams& params,
                                                int N, double r);

/// u'' + (N-1) (psi'/psi) u' at r.
double radial_laplacian(const ManifoldModel& model, const RadialTestFunction& f, double r);

/// Radial Laplacian minus the mode-n sphere eigenvalue term lambda_n a / psi^2.
double modal_laplacian(const ManifoldModel& model, const RadialTestFunction& a, int n, double r);

SphereMode sphere_mode(int n, int N);

/// Surface measure of the unit (N-1)-sphere: 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

/// lambda_rad evaluated without the full sample (used inside integrands).
double lambda_rad_at(const ManifoldModel& model, double r);

inline ConditionReport check_curvature_bound(const ManifoldModel& model,
                                             const std::vector<double>& radii) {
    return check_curvature_bound(model.profile, radii);
}

inline ConditionReport check_con3(const ManifoldModel& model, const std::vector<double>& radii) {
    return check_con3(model.profile, radii);
}

}  // namespace warpineq
