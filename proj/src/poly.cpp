#include "sospencil/poly.hpp"

#include <cctype>
#include <sstream>

namespace sospencil {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(MultiIndex(static_cast<std::size_t>(nvars)), c);
    return p;
}

Poly Poly::monomial(const MultiIndex& m, const Rational& c) {
    Poly p(static_cast<int>(m.size()));
    p.add_term(m, c);
    return p;
}

Poly Poly::variable(int nvars, int j) {
    if (j < 1 || j > nvars) throw DimensionError("variable index out of range");
    MultiIndex m(static_cast<std::size_t>(nvars));
    m[static_cast<std::size_t>(j - 1)] = 1;
    return monomial(m);
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.degree();  // leading term has maximal degree
}

int Poly::degree_in(int j) const {
    if (j < 1 || j > nvars_) throw DimensionError("variable index out of range");
    int best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, m[static_cast<std::size_t>(j - 1)]);
    return best;
}

Rational Poly::coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const MultiIndex& m, const Rational& c) {
    if (static_cast<int>(m.size()) != nvars_)
        throw DimensionError("term length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::extended(int new_nvars) const {
    if (new_nvars < nvars_) throw DimensionError("cannot shrink variable count");
    Poly out(new_nvars);
    for (const auto& [m, c] : terms_) {
        MultiIndex m2(static_cast<std::size_t>(new_nvars));
        for (std::size_t i = 0; i < m.size(); ++i) m2[i] = m[i];
        out.add_term(m2, c);
    }
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("variable count mismatch");
    Poly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("variable count mismatch");
    Poly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

Poly operator-(const Poly& a) {
    Poly out(a.nvars_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, -c);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("variable count mismatch");
    Poly out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma + mb, ca * cb);
    return out;
}

Poly operator*(const Rational& c, const Poly& p) {
    Poly out(p.nvars_);
    for (const auto& [m, pc] : p.terms_) out.add_term(m, c * pc);
    return out;
}

Poly Poly::derivative(int j) const {
    if (j < 1 || j > nvars_) throw DimensionError("variable index out of range");
    std::size_t k = static_cast<std::size_t>(j - 1);
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[k] == 0) continue;
        MultiIndex m2 = m;
        m2[k] -= 1;
        out.add_term(m2, c * m[k]);
    }
    return out;
}

GaussianRational Poly::eval(const std::vector<GaussianRational>& z) const {
    if (static_cast<int>(z.size()) != nvars_) throw DimensionError("point length mismatch");
    GaussianRational acc;
    for (const auto& [m, c] : terms_) {
        GaussianRational t{c};
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e) t = t * z[k];
        acc = acc + t;
    }
    return acc;
}

Rational Poly::eval_real(const std::vector<Rational>& z) const {
    if (static_cast<int>(z.size()) != nvars_) throw DimensionError("point length mismatch");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e) t *= z[k];
        acc += t;
    }
    return acc;
}

double Poly::eval_double(const std::vector<double>& z) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
        double t = rat_double(c);
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e) t *= z[k];
        acc += t;
    }
    return acc;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = sign_of(c) < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool has_vars = m.degree() > 0;
        if (!has_vars) {
            os << rat_str(a);
        } else {
            bool star = false;
            if (a != 1) {
                os << rat_str(a);
                star = true;
            }
            for (std::size_t k = 0; k < m.size(); ++k) {
                if (m[k] == 0) continue;
                if (star) os << "*";
                os << "z" << (k + 1);
                if (m[k] > 1) os << "^" << m[k];
                star = true;
            }
        }
    }
    return os.str();
}

Poly wronskian(const Poly& q, const Poly& p, int j) {
    if (q.nvars() != p.nvars()) throw DimensionError("variable count mismatch");
    return q * p.derivative(j) - p * q.derivative(j);
}

Poly divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
    int nv = std::max(a.nvars(), b.nvars());
    Poly rem = a.extended(nv);
    Poly div = b.extended(nv);
    Poly quot(nv);
    const auto& lead = *div.terms().begin();
    while (!rem.is_zero()) {
        const auto& lt = *rem.terms().begin();
        MultiIndex diff = lt.first - lead.first;
        if (!diff.nonnegative())
            throw PreconditionError("polynomial division is not exact");
        Rational c = lt.second / lead.second;
        quot.add_term(diff, c);
        rem = rem - Poly::monomial(diff, c) * div;
    }
    return quot;
}

RationalFunction::RationalFunction(Poly p, Poly q) : num(std::move(p)), den(std::move(q)) {
    if (den.is_zero()) throw PreconditionError("denominator is identically zero");
    if (num.nvars() != den.nvars()) {
        int nv = std::max(num.nvars(), den.nvars());
        num = num.extended(nv);
        den = den.extended(nv);
    }
}

// ---------------------------------------------------------------------------
// Grammar: poly := ['+'|'-'] term (('+'|'-') term)*
//          term := coeff ('*' power)* | power ('*' power)*
//          coeff := INT ['/' INT]
//          power := 'z' INT ['^' INT]   (variable index >= 1, exponent >= 1)

namespace {

struct Token {
    enum Kind { Int, Var, Plus, Minus, Star, Caret, Slash, End } kind;
    long value;       // Int: numeric value; Var: variable index
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) return {Token::End, 0, start};
        char c = s_[i_];
        switch (c) {
            case '+': ++i_; return {Token::Plus, 0, start};
            case '-': ++i_; return {Token::Minus, 0, start};
            case '*': ++i_; return {Token::Star, 0, start};
            case '^': ++i_; return {Token::Caret, 0, start};
            case '/': ++i_; return {Token::Slash, 0, start};
            default: break;
        }
        if (c == 'z') {
            ++i_;
            if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
                throw ParseError("'z' must be followed by a variable index", start);
            long v = read_int();
            if (v == 0) throw ParseError("z0 is reserved for homogenization", start);
            return {Token::Var, v, start};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = read_int();
            return {Token::Int, v, start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    long read_int() {
        long v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + (s_[i_] - '0');
            if (v > 1000000000L) throw ParseError("integer literal too large", i_);
            ++i_;
        }
        return v;
    }
    const std::string& s_;
    std::size_t i_ = 0;
};

}  // namespace

Poly parse_poly_text(const std::string& src, int min_vars) {
    Lexer lex(src);
    Token tok = lex.next();
    if (tok.kind == Token::End) throw ParseError("empty input", 0);

    struct RawTerm {
        Rational coeff;
        std::map<long, int> exps;
    };
    std::vector<RawTerm> terms;
    long max_var = 0;

    int pending_sign = 1;
    bool expect_term = true;
    if (tok.kind == Token::Plus || tok.kind == Token::Minus) {
        pending_sign = (tok.kind == Token::Minus) ? -1 : 1;
        tok = lex.next();
    }
    while (true) {
        if (expect_term) {
            RawTerm t;
            t.coeff = pending_sign;
            bool saw_any = false;
            if (tok.kind == Token::Int) {
                Rational c(tok.value);
                tok = lex.next();
                if (tok.kind == Token::Slash) {
                    tok = lex.next();
                    if (tok.kind != Token::Int)
                        throw ParseError("expected denominator after '/'", tok.pos);
                    if (tok.value == 0) throw ParseError("zero denominator", tok.pos);
                    c /= Rational(tok.value);
                    tok = lex.next();
                }
                t.coeff *= c;
                saw_any = true;
                if (tok.kind == Token::Star) {
                    tok = lex.next();
                    if (tok.kind != Token::Var)
                        throw ParseError("expected variable after '*'", tok.pos);
                    // fall through to the power loop below
                } else if (tok.kind == Token::Var) {
                    throw ParseError("missing '*' before variable", tok.pos);
                }
            }
            while (tok.kind == Token::Var) {
                long var = tok.value;
                int exp = 1;
                tok = lex.next();
                if (tok.kind == Token::Caret) {
                    tok = lex.next();
                    if (tok.kind != Token::Int)
                        throw ParseError("expected exponent after '^'", tok.pos);
                    if (tok.value < 1) throw ParseError("exponent must be >= 1", tok.pos);
                    exp = static_cast<int>(tok.value);
                    tok = lex.next();
                }
                t.exps[var] += exp;
                max_var = std::max(max_var, var);
                saw_any = true;
                if (tok.kind == Token::Star) {
                    tok = lex.next();
                    if (tok.kind != Token::Var)
                        throw ParseError("expected variable after '*'", tok.pos);
                    continue;
                }
                break;
            }
            if (!saw_any) throw ParseError("expected a term", tok.pos);
            terms.push_back(std::move(t));
            expect_term = false;
            continue;
        }
        if (tok.kind == Token::End) break;
        if (tok.kind == Token::Plus || tok.kind == Token::Minus) {
            pending_sign = (tok.kind == Token::Minus) ? -1 : 1;
            tok = lex.next();
            expect_term = true;
            continue;
        }
        throw ParseError("unexpected token", tok.pos);
    }

    int nvars = std::max(static_cast<int>(max_var), min_vars);
    Poly out(nvars);
    for (const auto& t : terms) {
        MultiIndex m(static_cast<std::size_t>(nvars));
        for (const auto& [var, exp] : t.exps) m[static_cast<std::size_t>(var - 1)] = exp;
        out.add_term(m, t.coeff);
    }
    return out;
}

}  // namespace sospencil
