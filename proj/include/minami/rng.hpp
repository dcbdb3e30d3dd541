#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace minami {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Per-sample substream seed: a pure function of (base, counter), so parallel
/// evaluation order cannot change which random numbers a sample sees.
inline std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t counter) {
    return splitmix64(base ^ splitmix64(counter + 0x9e3779b97f4a7c15ull));
}

/// xoshiro256++ with a splitmix64-expanded seed. All draws below avoid
/// std::uniform_real_distribution so streams are identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) {
            x = splitmix64(x);
            w = x;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53 significant bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [-half_width, half_width).
    double uniform_pm(double half_width) { return (2.0 * uniform01() - 1.0) * half_width; }

    /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double gaussian() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::array<std::uint64_t, 4> state_;
};

}  // namespace minami
