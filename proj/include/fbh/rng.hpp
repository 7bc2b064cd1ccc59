#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace fbh {

// splitmix64 step; used to hash (seed, stream) into independent engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xd1b54a32d192ed03ull * (stream + 1));
    return splitmix64(s);
}

// mt19937_64 is bit-reproducible across platforms by the standard; the
// std distributions are not, so the transforms below are hand-rolled.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller, spare cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> normal_complex() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fbh
