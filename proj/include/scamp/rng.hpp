// rng.hpp
//
// Seeded random numbers for problem generation. mt19937_64 plus explicit
// uniform/normal mappings, so identical seeds give identical streams on
// every platform (std::uniform_real_distribution is not pinned by the
// standard and would break byte-reproducibility of benchmark output).

#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace scamp {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; draws are cached in pairs.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace scamp
