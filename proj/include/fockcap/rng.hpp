#pragma once

#include <cmath>
#include <cstdint>

namespace fockcap {

// Finalizer of the splitmix64 generator; bijective 64-bit mixing.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream seed for task `task` under a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t task) {
    return mix64(seed ^ (0x632be59bd9b4e019ULL * (task + 1)));
}

/**
 * Deterministic, platform-independent stream of uniforms (splitmix64).
 * std::uniform_real_distribution is implementation-defined, so everything
 * reproducible goes through this instead.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on the open interval (0,1): 53-bit mantissa, half-ulp offset
    double next_u01() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double next_exp() { return -std::log(next_u01()); }

    double next_gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(next_u01()));
        double t = 2.0 * M_PI * next_u01();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fockcap
