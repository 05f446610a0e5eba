#pragma once

#include <cstdint>
#include <random>

namespace reebarr {

/// Seeded generator with a draw counter so campaigns can report how much
/// randomness they consumed. Doubles use the top 53 bits, which keeps the
/// stream identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() {
        ++count_;
        return eng_();
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
    std::uint64_t draws() const { return count_; }

private:
    std::mt19937_64 eng_;
    std::uint64_t count_ = 0;
};

}  // namespace reebarr
