#include "sospencil/psd.hpp"

#include "sospencil/errors.hpp"

namespace sospencil {

// Outer-product LDL^t with symmetric pivoting on the largest remaining
// diagonal. The matrix X accumulates the inverse congruence so that the
// working block always equals (X^t M X) restricted to the trailing
// coordinates; a bad vector w there maps to the exact witness X w.
PsdResult exact_psd_check(const Mat& m) {
    if (!m.is_symmetric())
        throw PreconditionError("semidefiniteness check needs a symmetric matrix");
    int n = m.rows();
    PsdResult res;
    Mat a = m;
    res.perm.resize(n);
    for (int i = 0; i < n; ++i) res.perm[i] = i;
    res.l = Mat(n, n);
    res.pivots.assign(n, Rational(0));
    Mat x = Mat::identity(n);

    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (a(i, i) > a(p, p)) p = i;

        if (sign_of(a(p, p)) < 0) {
            res.psd = false;
            res.witness.assign(n, Rational(0));
            for (int r = 0; r < n; ++r) res.witness[r] = x(r, p);
            res.value = a(p, p);
            return res;
        }
        if (sign_of(a(p, p)) == 0) {
            // the maximum is zero, so the remaining diagonal is <= 0; a
            // strictly negative entry is already a witness
            for (int i = k; i < n; ++i) {
                if (sign_of(a(i, i)) >= 0) continue;
                res.psd = false;
                res.witness.assign(n, Rational(0));
                for (int r = 0; r < n; ++r) res.witness[r] = x(r, i);
                res.value = a(i, i);
                return res;
            }
            // every remaining diagonal is zero: a nonzero off-diagonal entry
            // makes the block indefinite, otherwise the block vanishes
            for (int i = k; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (sign_of(a(i, j)) == 0) continue;
                    Rational s = sign_of(a(i, j)) > 0 ? Rational(-1) : Rational(1);
                    res.psd = false;
                    res.witness.assign(n, Rational(0));
                    for (int r = 0; r < n; ++r) res.witness[r] = x(r, i) + s * x(r, j);
                    res.value = Rational(2) * s * a(i, j);
                    return res;
                }
            for (int i = k; i < n; ++i) res.l(i, i) = 1;
            break;
        }

        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            for (int i = 0; i < n; ++i) std::swap(a(i, k), a(i, p));
            std::swap(res.perm[k], res.perm[p]);
            for (int j = 0; j < k; ++j) std::swap(res.l(k, j), res.l(p, j));
            for (int i = 0; i < n; ++i) std::swap(x(i, k), x(i, p));
        }

        Rational d = a(k, k);
        res.pivots[k] = d;
        res.l(k, k) = 1;
        for (int i = k + 1; i < n; ++i) res.l(i, k) = a(i, k) / d;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a(i, j) -= res.l(i, k) * res.l(j, k) * d;
        for (int j = k + 1; j < n; ++j) {
            const Rational& f = res.l(j, k);
            if (sign_of(f) == 0) continue;
            for (int r = 0; r < n; ++r) x(r, j) -= f * x(r, k);
        }
    }
    res.psd = true;
    return res;
}

}  // namespace sospencil
