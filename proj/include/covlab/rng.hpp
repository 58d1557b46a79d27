#pragma once

#include <cstdint>

#include "covlab/vec.hpp"

namespace covlab {

/// Seeded splitmix64 stream. Probe sets must be reproducible byte-for-byte
/// across runs, so all randomness in the library goes through this, never
/// through <random> (whose distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [0, n); modulo bias is irrelevant here, the
    /// contract is determinism.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1; }

    /// Rational in [-scale, scale] with denominator in [den_lo, den_hi].
    /// Large denominators keep probes off the measure-zero breakpoint
    /// arrangements of piecewise-polynomial covariograms.
    Rat rat(std::int64_t scale, std::int64_t den_lo = 64, std::int64_t den_hi = 127)
    {
        std::int64_t q = range(den_lo, den_hi);
        std::int64_t p = range(-scale * q, scale * q);
        return Rat(p, q);
    }

    Vec vec(int dim, std::int64_t scale, std::int64_t den_lo = 64, std::int64_t den_hi = 127)
    {
        Vec v(dim);
        for (int i = 0; i < dim; ++i)
            v[i] = rat(scale, den_lo, den_hi);
        return v;
    }

    Vec nonzero_vec(int dim, std::int64_t scale = 8)
    {
        for (;;) {
            Vec v = vec(dim, scale, 1, 8);
            if (!v.is_zero())
                return v;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace covlab
