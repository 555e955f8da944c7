#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace riesz {

// SplitMix64-based generator. Unlike the std distributions, every output is
// fully specified by the recurrence, so a (seed, tag, index) triple names the
// same stream on every platform and in every build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], safe as a log argument
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal, Box-Muller with a cached spare
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 2.0 * 3.14159265358979323846 * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // CN(0,1): E|z|^2 = 1
    std::complex<double> complex_gaussian() {
        const double s = 0.70710678118654752440;
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

    int sign() { return (next_u64() >> 63) ? 1 : -1; }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Stream tags keep unrelated consumers of one user seed statistically apart.
inline constexpr std::uint64_t kStreamSphereSample = 0x01;
inline constexpr std::uint64_t kStreamHaar = 0x02;
inline constexpr std::uint64_t kStreamSigns = 0x03;
inline constexpr std::uint64_t kStreamAscent = 0x04;
inline constexpr std::uint64_t kStreamZeta = 0x05;
inline constexpr std::uint64_t kStreamBlock = 0x06;

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    Rng r(seed ^ (tag * 0xd1342543de82ef95ull));
    r.next_u64();
    std::uint64_t s = r.next_u64() ^ (index * 0x2545f4914f6cdd1dull);
    Rng r2(s);
    return r2.next_u64();
}

// Independent stream for (seed, tag, index); index-splittable by construction.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    return Rng(mix_seed(seed, tag, index));
}

}  // namespace riesz
