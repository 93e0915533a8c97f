#pragma once
#include <map>
#include <optional>
#include <vector>

#include "sospencil/poly.hpp"

namespace sospencil {

// Total-degree bound n0 plus per-variable bounds n1..nd.
struct DegreeBounds {
    int n0 = 0;
    std::vector<int> nk;

    int d() const { return static_cast<int>(nk.size()); }
    bool admits(const MultiIndex& m) const;
};

// Bounds from a polynomial pair: n0 = max total degree, nk = max per-variable
// degree (zero polynomials contribute nothing).
DegreeBounds bounds_for_pair(const Poly& q, const Poly& p);

// Bounds halving f's degrees (rounded up): every support point of f is then
// a sum of two admissible exponents, so the basis suits Gram representations
// of f itself.
DegreeBounds half_bounds(const Poly& f);

// Ordered monomial list Psi = (z^a1, ..., z^aN): all exponents with total
// degree <= n0 and per-variable degree <= nk, in basis order (degree
// ascending, lex-descending within a degree). Homogenized bases append the
// z0 exponent as the LAST slot and preserve the pre-image order.
class MonomialBasis {
public:
    static constexpr std::size_t kDefaultCap = 5000;

    static MonomialBasis build(const DegreeBounds& b, std::size_t cap = kDefaultCap);

    MonomialBasis() = default;

    int size() const { return static_cast<int>(mons_.size()); }
    const MultiIndex& mono(int i) const { return mons_[i]; }  // 0-based
    const std::vector<MultiIndex>& monomials() const { return mons_; }
    const DegreeBounds& bounds() const { return bounds_; }
    bool homogenized() const { return homogenized_; }

    // Position in the basis, 1-based; nullopt when absent.
    std::optional<int> position(const MultiIndex& m) const;
    // 0-based index, -1 when absent.
    int index0(const MultiIndex& m) const;

    MonomialBasis homogenize() const;
    MonomialBasis dehomogenize() const;

    // Row vector Psi(z) evaluated exactly.
    std::vector<GaussianRational> eval(const std::vector<GaussianRational>& z) const;
    std::vector<Rational> eval_real(const std::vector<Rational>& z) const;

    friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) {
        return a.mons_ == b.mons_ && a.homogenized_ == b.homogenized_;
    }

private:
    DegreeBounds bounds_;
    std::vector<MultiIndex> mons_;
    bool homogenized_ = false;
    std::map<MultiIndex, int, BasisOrder> index_;

    void rebuild_index();
};

}  // namespace sospencil
