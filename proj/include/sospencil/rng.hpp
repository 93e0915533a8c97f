#pragma once
#include <cstdint>
#include <random>

#include "sospencil/rational.hpp"

namespace sospencil {

// Deterministic random source. mt19937_64 output is pinned by the standard,
// so sequences are reproducible across platforms; we avoid the standard
// distributions, whose mappings are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    int int_in(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform rational in [lo, hi] on the grid with denominator `denom`.
    Rational rational_in(int lo, int hi, int denom = 1000) {
        long span = static_cast<long>(hi - lo) * denom;
        long num = static_cast<long>(lo) * denom + static_cast<long>(below(span + 1));
        Rational r(mpz_class(num), mpz_class(static_cast<long>(denom)));
        r.canonicalize();
        return r;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sospencil
