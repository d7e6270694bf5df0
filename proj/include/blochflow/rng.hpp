#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace blochflow {

// Seeded random stream with an explicit substream layout.
//
// Substream derivation: the engine for (seed, stream) is seeded with the
// (stream+1)-th output of SplitMix64 started at `seed`.  SplitMix64 advances
// its state by a fixed odd constant, so output k is a pure bijective mix of
// seed + (k+1)*0x9E3779B97F4A7C15 and can be computed in constant time.
// Distinct (seed, stream) pairs therefore give engines whose seeds collide no
// more often than random 64-bit values.
//
// Stream conventions used across the library:
//   - ensemble sweeps draw instance i from stream i,
//   - a model's "own" spectrum uses stream 1<<62,
//   - bootstrap resampling uses stream 1<<63.
//
// The engine is std::mt19937_64, whose output sequence is pinned bit-exactly
// by the standard.  The uniform and gaussian transforms below are written out
// here (not taken from <random> distributions) because the standard does not
// pin distribution algorithms; this keeps streams bit-reproducible across
// standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Standard normal via the Marsaglia polar method (one spare cached).
    double gaussian();

    // Complex with independent standard normal real and imaginary parts.
    std::complex<double> gaussian_complex();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// The k-th SplitMix64 output for the given seed, k >= 1, in constant time.
std::uint64_t splitmix64_output(std::uint64_t seed, std::uint64_t k);

// Reserved stream indices (see the layout note above).
inline constexpr std::uint64_t kSpectrumStream = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kBootstrapStream = std::uint64_t{1} << 63;

}  // namespace blochflow
