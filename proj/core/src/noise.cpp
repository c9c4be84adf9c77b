#include "biphoton/noise.hpp"

#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t i, std::uint64_t j)
    : state_(mix64(mix64(mix64(seed) ^ (i * 0x9e3779b97f4a7c15ull)) ^
                   (j * 0xc2b2ae3d27d4eb4full))) {}

std::uint64_t CounterRng::next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
}

double CounterRng::uniform() {
    // 53 random bits, shifted into (0, 1].
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

long poisson_draw(CounterRng& rng, double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw InvalidInput("poisson_draw: mean must be finite and non-negative");
    }
    double t = 0.0;
    long k = -1;
    while (t < mean) {
        t -= std::log(rng.uniform());
        ++k;
    }
    return k < 0 ? 0 : k;
}

}  // namespace biphoton
