#pragma once

#include <cstdint>

namespace biphoton {

/// splitmix64 finalizer; bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x);

/// Small counter-based stream: the state is derived from (seed, i, j), so any
/// scan point can be synthesized independently of evaluation order and the
/// parallel and serial paths agree bit for bit.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

    std::uint64_t next();
    /// Uniform draw in (0, 1].
    double uniform();

private:
    std::uint64_t state_;
};

/// Poisson draw by summing unit exponentials until the mean is exceeded.
/// Exact for any mean without underflow; cost is O(mean) draws.
long poisson_draw(CounterRng& rng, double mean);

}  // namespace biphoton
