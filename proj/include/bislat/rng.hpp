#ifndef BISLAT_RNG_HPP
#define BISLAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace bislat {

/// Deterministic random source. Doubles are derived from raw engine words so
/// streams are reproducible across standard libraries (std distributions are
/// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

    int int_range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::uint64_t fork(std::uint64_t salt) {
        return eng_() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x7f4a7c159e3779b9ULL);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bislat

#endif
