#ifndef RCST_PRNG_HPP
#define RCST_PRNG_HPP

#include <cstdint>
#include <random>

namespace rcst {

// Deterministic seeded generator. mt19937_64 has a fixed standard-mandated
// output sequence, and uniformity below is done by rejection sampling, so
// the same seed draws the same numbers on every platform and compiler.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // exactly uniform on [0, k), k >= 1
    std::uint64_t below(std::uint64_t k) {
        if (k <= 1) return 0;
        const std::uint64_t threshold = (0 - k) % k; // 2^64 mod k
        for (;;) {
            std::uint64_t x = eng_();
            if (x >= threshold) return x % k;
        }
    }

    // exactly uniform on [lo, hi], inclusive
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (eng_() & 1u) != 0; }

  private:
    std::mt19937_64 eng_;
};

} // namespace rcst

#endif
