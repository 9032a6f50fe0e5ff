#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace tk {

// splitmix64 with Box-Muller on top.  The exact bit stream (including the
// split rule) is part of the test contract: seeds reproduce frozen fixtures.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next_u64() {
        s_ += 0x9E3779B97F4A7C15ull;
        return mix(s_);
    }

    // uniform in [0, 1), 53 bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::pair<double, double> next_gauss_pair() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    // Independent child stream i; does not advance this stream.
    Rng split(std::uint64_t i) const { return Rng(mix(s_ + (i + 1) * 0xD1B54A32D192ED03ull)); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }
    std::uint64_t s_;
};

}  // namespace tk
