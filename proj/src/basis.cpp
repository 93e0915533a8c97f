#include "sospencil/basis.hpp"

#include <algorithm>

namespace sospencil {

bool DegreeBounds::admits(const MultiIndex& m) const {
    if (m.size() != nk.size()) return false;
    if (m.degree() > n0) return false;
    for (std::size_t k = 0; k < nk.size(); ++k)
        if (m[k] > nk[k]) return false;
    return true;
}

DegreeBounds bounds_for_pair(const Poly& q, const Poly& p) {
    if (q.nvars() != p.nvars()) throw DimensionError("variable count mismatch");
    int d = q.nvars();
    DegreeBounds b;
    b.n0 = std::max({q.degree(), p.degree(), 0});
    b.nk.resize(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k)
        b.nk[static_cast<std::size_t>(k - 1)] =
            std::max(q.is_zero() ? 0 : q.degree_in(k), p.is_zero() ? 0 : p.degree_in(k));
    return b;
}

DegreeBounds half_bounds(const Poly& f) {
    int d = f.nvars();
    DegreeBounds b;
    b.nk.resize(static_cast<std::size_t>(d));
    if (f.is_zero()) return b;
    b.n0 = (f.degree() + 1) / 2;
    for (int k = 1; k <= d; ++k)
        b.nk[static_cast<std::size_t>(k - 1)] = (f.degree_in(k) + 1) / 2;
    return b;
}

MonomialBasis MonomialBasis::build(const DegreeBounds& b, std::size_t cap) {
    MonomialBasis out;
    out.bounds_ = b;
    std::size_t d = b.nk.size();
    MultiIndex cur(d);
    // enumerate the box with the total-degree filter
    auto rec = [&](auto&& self, std::size_t k, int remaining) -> void {
        if (k == d) {
            out.mons_.push_back(cur);
            if (out.mons_.size() > cap)
                throw CapExceededError("basis would exceed cap of " + std::to_string(cap) +
                                       " monomials");
            return;
        }
        int top = std::min(b.nk[k], remaining);
        for (int e = 0; e <= top; ++e) {
            cur[k] = e;
            self(self, k + 1, remaining - e);
        }
        cur[k] = 0;
    };
    rec(rec, 0, b.n0);
    std::sort(out.mons_.begin(), out.mons_.end(), basis_less);
    out.rebuild_index();
    return out;
}

void MonomialBasis::rebuild_index() {
    index_.clear();
    for (int i = 0; i < size(); ++i) index_.emplace(mons_[static_cast<std::size_t>(i)], i);
}

std::optional<int> MonomialBasis::position(const MultiIndex& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second + 1;
}

int MonomialBasis::index0(const MultiIndex& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

MonomialBasis MonomialBasis::homogenize() const {
    if (homogenized_) throw PreconditionError("basis already homogenized");
    MonomialBasis out;
    out.bounds_ = bounds_;
    out.bounds_.nk.push_back(bounds_.n0);  // bound for the z0 slot
    out.homogenized_ = true;
    for (const MultiIndex& m : mons_) {
        MultiIndex h(m.size() + 1);
        for (std::size_t i = 0; i < m.size(); ++i) h[i] = m[i];
        h[m.size()] = bounds_.n0 - m.degree();
        out.mons_.push_back(h);
    }
    out.rebuild_index();
    return out;
}

MonomialBasis MonomialBasis::dehomogenize() const {
    if (!homogenized_) throw PreconditionError("basis is not homogenized");
    MonomialBasis out;
    out.bounds_ = bounds_;
    out.bounds_.nk.pop_back();
    out.homogenized_ = false;
    for (const MultiIndex& m : mons_) {
        MultiIndex h(m.size() - 1);
        for (std::size_t i = 0; i + 1 < m.size(); ++i) h[i] = m[i];
        out.mons_.push_back(h);
    }
    out.rebuild_index();
    return out;
}

std::vector<GaussianRational> MonomialBasis::eval(const std::vector<GaussianRational>& z) const {
    std::vector<GaussianRational> out;
    out.reserve(mons_.size());
    for (const MultiIndex& m : mons_) {
        GaussianRational t{Rational(1)};
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e) t = t * z[k];
        out.push_back(t);
    }
    return out;
}

std::vector<Rational> MonomialBasis::eval_real(const std::vector<Rational>& z) const {
    std::vector<Rational> out;
    out.reserve(mons_.size());
    for (const MultiIndex& m : mons_) {
        Rational t(1);
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e) t *= z[k];
        out.push_back(t);
    }
    return out;
}

}  // namespace sospencil
