#pragma once
#include <numeric>
#include <vector>

#include "sospencil/errors.hpp"

namespace sospencil {

// Exponent vector of a monomial. Index 0 corresponds to z1; in homogenized
// contexts the homogenizing variable z0 occupies the LAST slot.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : e(n, 0) {}
    MultiIndex(std::initializer_list<int> init) : e(init) {}
    explicit MultiIndex(std::vector<int> exps) : e(std::move(exps)) {}

    std::size_t size() const { return e.size(); }
    int operator[](std::size_t i) const { return e[i]; }
    int& operator[](std::size_t i) { return e[i]; }
    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        if (a.size() != b.size()) throw DimensionError("multi-index length mismatch");
        MultiIndex r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    // Unchecked componentwise difference; callers verify non-negativity where needed.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        if (a.size() != b.size()) throw DimensionError("multi-index length mismatch");
        MultiIndex r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] - b.e[i];
        return r;
    }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e != b.e; }

    bool nonnegative() const {
        for (int x : e) if (x < 0) return false;
        return true;
    }
};

// Lexicographic with z1 > z2 > ...: compare exponent of z1 first.
inline bool lex_less(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return a.size() < b.size();
}

inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return lex_less(a, b);
}

// Term-map comparator: iteration yields the leading (grlex-largest) term first.
struct GrlexDesc {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(b, a); }
};

// Basis enumeration order: total degree ascending, lex-descending within a
// degree. Gives 1, z1, z2, z1^2, z1*z2, z2^2, ...
inline bool basis_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return lex_less(b, a);
}

struct BasisOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return basis_less(a, b); }
};

}  // namespace sospencil
