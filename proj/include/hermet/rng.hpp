#pragma once

#include <complex>
#include <cstdint>

namespace hermet {

/// Deterministic splitmix64 generator. The standard library distributions are
/// implementation-defined, so all randomness in the toolkit flows through this
/// class to keep reports byte-identical across platforms and runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::complex<double> complex_in_disk(double radius = 1.0) {
        return {uniform(-radius, radius), uniform(-radius, radius)};
    }

    /// Derive an independent substream; used for per-index determinism in
    /// sampling loops so serial and parallel sweeps agree.
    Rng fork(std::uint64_t index) const {
        return Rng(state_ ^ (0xD1B54A32D192ED03ull * (index + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace hermet
