#ifndef MMP_RNG_HPP
#define MMP_RNG_HPP

#include <cstdint>
#include <random>

namespace mmp {

// splitmix64: used both to scramble user seeds and to derive independent
// child seeds so that parallel trials never share a stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }

    // Child generator with an independent stream, replayable from (seed, n).
    Rng split(std::uint64_t n) const {
        std::uint64_t s = seed_ ^ (0xa0761d6478bd642fULL * (n + 1));
        return Rng(splitmix64(s));
    }

    double uniform01() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform01() < p;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace mmp

#endif
