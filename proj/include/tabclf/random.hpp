#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace tabclf {

/// Seeded random source with portable draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The std distributions are not portable across standard
/// libraries, so every draw below is derived from raw 64-bit outputs by a
/// documented formula:
///   uniform()   = (bits >> 11) * 2^-53
///   below(n)    = rejection sampling on the top of the 64-bit range
///   normal()    = Box-Muller, cosine branch only (one draw per call)
/// Fixtures can therefore be regenerated from (algorithm "mt19937_64/v1", seed).
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64/v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seed for an independent stream, e.g. one per tree.
    static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    }

    std::uint64_t bits() { return engine_(); }

    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = bits();
        while (x >= limit) x = bits();
        return x % n;
    }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Fisher-Yates, from the back.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tabclf
