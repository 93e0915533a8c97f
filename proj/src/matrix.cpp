#include "sospencil/matrix.hpp"

#include "sospencil/errors.hpp"

namespace sospencil {

Mat::Mat(const std::vector<std::vector<Rational>>& rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows[0].size()) : 0;
    a_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw DimensionError("ragged row list for matrix");
        for (const auto& v : r) a_.push_back(v);
    }
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool Mat::is_zero() const {
    for (const auto& v : a_)
        if (sign_of(v) != 0) return false;
    return true;
}

Mat Mat::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Mat s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix size mismatch");
    Mat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (sign_of(aik) == 0) continue;
            for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Mat operator*(const Rational& c, const Mat& m) {
    Mat r = m;
    for (auto& v : r.a_) v *= c;
    return r;
}

std::vector<Rational> mat_vec(const Mat& m, const std::vector<Rational>& v) {
    if (m.cols() != static_cast<int>(v.size()))
        throw DimensionError("matrix-vector size mismatch");
    std::vector<Rational> r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

Rref rref(const Mat& a) {
    Rref out;
    out.m = a;
    Mat& m = out.m;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (sign_of(m(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        Rational inv = Rational(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || sign_of(m(i, col)) == 0) continue;
            Rational f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    return out;
}

Rational det(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionError("determinant of non-square matrix");
    Mat m = a;
    int n = m.rows();
    Rational result(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (sign_of(m(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            result = -result;
        }
        result *= m(col, col);
        Rational inv = Rational(1) / m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (sign_of(m(i, col)) == 0) continue;
            Rational f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return result;
}

Mat nullspace(const Mat& a) {
    Rref r = rref(a);
    std::vector<int> free_cols;
    {
        std::size_t pi = 0;
        for (int c = 0; c < a.cols(); ++c) {
            if (pi < r.pivot_cols.size() && r.pivot_cols[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    Mat ker(a.cols(), static_cast<int>(free_cols.size()));
    for (int t = 0; t < static_cast<int>(free_cols.size()); ++t) {
        int f = free_cols[t];
        ker(f, t) = 1;
        for (int i = 0; i < r.rank; ++i) ker(r.pivot_cols[i], t) = -r.m(i, f);
    }
    return ker;
}

std::optional<Mat> inverse(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix");
    int n = a.rows();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    Rref r = rref(aug);
    if (r.rank < n || r.pivot_cols[n - 1] >= n) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
    return inv;
}

std::optional<std::vector<Rational>> solve(const Mat& a, const std::vector<Rational>& b) {
    if (a.rows() != static_cast<int>(b.size()))
        throw DimensionError("solve size mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Rref r = rref(aug);
    for (int c : r.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    std::vector<Rational> x(a.cols());
    for (int i = 0; i < r.rank; ++i) x[r.pivot_cols[i]] = r.m(i, a.cols());
    return x;
}

}  // namespace sospencil
