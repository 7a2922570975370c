#pragma once

#include <cstdint>

#include "warpineq/functionals.hpp"

namespace warpineq {

/// Runs body(0..count-1) across OpenMP threads. Iterations must be independent;
/// results written to index-distinct slots come out identical to the serial
/// reference below regardless of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  int workers = 0);

/// Serial reference loop with the same contract; kept for testing and as the
/// benchmark baseline.
void serial_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Deterministic seeded test-function draws. Centers are log-uniform in
/// [lo + width, hi - width]; the unit doubles come straight from the raw
/// 64-bit generator words, so a seed pins the byte stream.
class BumpSampler {
public:
    BumpSampler(std::uint64_t seed, double support_lo, double support_hi, double width);

    RadialTestFunction next();
    std::vector<RadialTestFunction> draw(int count);

private:
    double unit();
    std::uint64_t state_;
    double lo_, hi_, width_;
};

struct VerifyCase {
    InequalityId id = InequalityId::first_order;
    RadialTestFunction u;                  // radial-input inequalities
    std::optional<ModalTestFunction> modal;  // gradient / rad_lap
};

/// Evaluates every case against the model; `workers` <= 1 forces the serial path.
std::vector<InequalityReport> run_batch(const ManifoldModel& model,
                                        const std::vector<VerifyCase>& cases,
                                        const EvaluateOptions& opt, int workers);

/// Serial reference implementation of run_batch.
std::vector<InequalityReport> run_batch_serial(const ManifoldModel& model,
                                               const std::vector<VerifyCase>& cases,
                                               const EvaluateOptions& opt);

/// Curvature table over radii, parallel across samples.
std::vector<CurvatureSample> curvature_table(const ManifoldModel& model,
                                             const std::vector<double>& radii, int workers);

}  // namespace warpineq
