#pragma once
#include <optional>
#include <vector>

#include "sospencil/rational.hpp"

namespace sospencil {

// Dense matrix of exact rationals, row-major, 0-based indexing.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    explicit Mat(const std::vector<std::vector<Rational>>& rows);

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    Mat transpose() const;
    bool is_symmetric() const;
    bool is_zero() const;

    Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

    Mat& operator+=(const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const Rational& c, const Mat& m);
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

std::vector<Rational> mat_vec(const Mat& m, const std::vector<Rational>& v);

// Reduced row echelon form with pivot bookkeeping.
struct Rref {
    Mat m;
    std::vector<int> pivot_cols;
    int rank = 0;
};

Rref rref(const Mat& a);

Rational det(const Mat& a);

// Columns span the kernel; free coordinates are set to 1 one at a time.
Mat nullspace(const Mat& a);

std::optional<Mat> inverse(const Mat& a);

// One solution of A x = b with free coordinates set to zero, or nullopt when
// the system is inconsistent.
std::optional<std::vector<Rational>> solve(const Mat& a, const std::vector<Rational>& b);

}  // namespace sospencil
