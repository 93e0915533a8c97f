#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sospencil/gaussian.hpp"
#include "sospencil/multi_index.hpp"
#include "sospencil/rational.hpp"

namespace sospencil {

// Multivariate polynomial with exact rational coefficients.
// Terms are kept in graded-lex descending order (leading term first) and no
// zero coefficient is ever stored; the zero polynomial has an empty map.
class Poly {
public:
    using TermMap = std::map<MultiIndex, Rational, GrlexDesc>;

    explicit Poly(int nvars = 0) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c);
    static Poly monomial(const MultiIndex& m, const Rational& c = Rational(1));
    // The variable z_j, 1-based.
    static Poly variable(int nvars, int j);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }

    // -1 for the zero polynomial.
    int degree() const;
    int degree_in(int j) const;  // j 1-based

    Rational coeff(const MultiIndex& m) const;
    void add_term(const MultiIndex& m, const Rational& c);

    // Re-embed into a ring with more variables (new ones unused).
    Poly extended(int new_nvars) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Rational& c, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly derivative(int j) const;  // j 1-based

    GaussianRational eval(const std::vector<GaussianRational>& z) const;
    Rational eval_real(const std::vector<Rational>& z) const;
    double eval_double(const std::vector<double>& z) const;

    std::string str() const;

private:
    int nvars_;
    TermMap terms_;
};

// q * dp/dz_j - p * dq/dz_j, the numerator of d(p/q)/dz_j.
Poly wronskian(const Poly& q, const Poly& p, int j);

// Quotient a/b when b divides a exactly; throws otherwise.
Poly divide_exact(const Poly& a, const Poly& b);

// Parses the CLI grammar: terms joined by +/-, each an optional rational or
// integer coefficient followed by '*'-separated powers zK^E (K >= 1, E >= 1).
// nvars is max(max variable index seen, min_vars).
Poly parse_poly_text(const std::string& src, int min_vars = 0);

struct RationalFunction {
    Poly num, den;  // den must not be identically zero

    RationalFunction(Poly p, Poly q);
    int nvars() const { return num.nvars(); }
};

}  // namespace sospencil
