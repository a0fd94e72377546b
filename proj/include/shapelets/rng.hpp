#ifndef SHAPELETS_RNG_HPP
#define SHAPELETS_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace shapelets {

/// Portable seeded generator: xoshiro256** whose four state words are the
/// first four outputs of SplitMix64 started at `seed`.
///
/// Bounded draws use rejection on the low end of the 64-bit range followed by
/// a modulo, so `uniform(n)` is exactly uniform on [0, n) and the sequence is
/// identical on every platform. std::uniform_int_distribution is avoided
/// because its mapping is implementation-defined.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            word = splitmix64(sm);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("Rng::uniform: empty range");
        }
        // 2^64 mod n, computed without overflow
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = (*this)();
            if (x >= threshold) {
                return x % n;
            }
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static constexpr std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace shapelets

#endif
