#pragma once

// Test-only reference integrators and helpers, independent of the adaptive
// quadrature under test.

#include <cmath>
#include <cstdint>
#include <random>

namespace oracles {

/// Composite Simpson rule with long double accumulation. The panel count is
/// fixed (no adaptivity), so this shares nothing with the adaptive integrator.
template <class F>
double simpson(F f, double a, double b, long long panels = 1'000'000) {
    const long double h = (static_cast<long double>(b) - a) / panels;
    long double sum = f(a) + f(b);
    for (long long i = 1; i < panels; ++i) {
        const double x = static_cast<double>(a + h * i);
        sum += (i % 2 == 1 ? 4.0L : 2.0L) * f(x);
    }
    return static_cast<double>(sum * h / 3.0L);
}

/// Deterministic uniform double in [lo, hi).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace oracles
