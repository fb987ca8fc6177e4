#pragma once

#include <cstdint>

namespace corrclus {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood). Pinned here so streams are
// reproducible across platforms and standard-library versions.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Combines a base seed with a stream key into an independent substream seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key) {
    return detail::mix64(base ^ detail::mix64(key * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL));
}

/// Seedable splittable generator built on the splitmix64 sequence.
/// All randomized code in this project draws exclusively from this class,
/// never from std:: distributions, so identical seeds give identical
/// results everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) via Lemire's multiply-reject method.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Independent substream; a function of the seed this Rng was constructed
    /// with and the key only, not of how many values were drawn so far.
    Rng child(std::uint64_t key) const { return Rng(derive_seed(seed_, key)); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace corrclus
