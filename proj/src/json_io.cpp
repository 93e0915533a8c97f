#include "sospencil/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sospencil/errors.hpp"
#include "sospencil/polarize.hpp"
#include "sospencil/psd.hpp"
#include "sospencil/rng.hpp"

namespace sospencil {

namespace {

std::string rat_json(const Rational& r) { return rat_str(r); }

Rational rat_from(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
}

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("artifact is missing field \"") + key + "\"");
    return *it;
}

MultiIndex mi_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("exponent vector must be an array");
    std::vector<int> e;
    e.reserve(j.size());
    for (const Json& v : j) {
        int x = v.get<int>();
        if (x < 0) throw ParseError("negative exponent in basis listing");
        e.push_back(x);
    }
    return MultiIndex(std::move(e));
}

Json gr_to_json(const GaussianRational& g) {
    return Json{{"re", rat_json(g.re)}, {"im", rat_json(g.im)}};
}

GaussianRational gr_from_json(const Json& j) {
    return {rat_from(field(j, "re").get<std::string>()),
            rat_from(field(j, "im").get<std::string>())};
}

std::string sos_status_str(SosStatus s) {
    switch (s) {
        case SosStatus::certified:
            return "certified";
        case SosStatus::infeasible_evidence:
            return "infeasible-evidence";
        default:
            return "inconclusive";
    }
}

Json factors_to_json(const FactoredPoly& s) {
    Json out = Json::array();
    for (const auto& [p, m] : s.factors)
        out.push_back(Json{{"poly", p.str()}, {"multiplicity", m}});
    return out;
}

FactoredPoly factors_from_json(const Json& j, int d) {
    FactoredPoly s;
    for (const Json& e : j)
        s.factors.push_back(
            {parse_poly_text(field(e, "poly").get<std::string>(), d),
             field(e, "multiplicity").get<int>()});
    return s;
}

VerifyOutcome fail(const std::string& kind, std::string why) {
    return {false, kind, std::move(why)};
}

VerifyOutcome pass(const std::string& kind, std::string what) {
    return {true, kind, std::move(what)};
}

}  // namespace

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    int r = static_cast<int>(j.size());
    int c = r == 0 ? 0 : static_cast<int>(j.at(0).size());
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        const Json& row = j.at(i);
        if (static_cast<int>(row.size()) != c) throw ParseError("ragged matrix rows");
        for (int k = 0; k < c; ++k) m(i, k) = rat_from(row.at(k).get<std::string>());
    }
    return m;
}

Json basis_to_json(const MonomialBasis& b) {
    Json mons = Json::array();
    for (const MultiIndex& m : b.monomials()) {
        Json v = Json::array();
        for (std::size_t i = 0; i < m.size(); ++i) v.push_back(m[i]);
        mons.push_back(std::move(v));
    }
    return mons;
}

MonomialBasis basis_from_json(const Json& monomials, bool homogenized) {
    if (!monomials.is_array() || monomials.empty())
        throw ParseError("basis must be a non-empty array of exponent vectors");
    std::vector<MultiIndex> mons;
    mons.reserve(monomials.size());
    for (const Json& v : monomials) mons.push_back(mi_from_json(v));
    std::size_t slots = mons.front().size();
    for (const MultiIndex& m : mons)
        if (m.size() != slots) throw ParseError("basis exponent vectors differ in length");

    DegreeBounds b;
    if (!homogenized) {
        b.nk.assign(slots, 0);
        for (const MultiIndex& m : mons) {
            b.n0 = std::max(b.n0, m.degree());
            for (std::size_t k = 0; k < slots; ++k) b.nk[k] = std::max(b.nk[k], m[k]);
        }
        MonomialBasis rebuilt = MonomialBasis::build(b);
        if (!(rebuilt.monomials() == mons))
            throw ParseError("basis listing is not a canonical degree-bound enumeration");
        return rebuilt;
    }

    // z0 occupies the last slot and pads every monomial to the same total
    if (slots == 0) throw ParseError("homogenized basis needs at least the z0 slot");
    b.n0 = mons.front().degree();
    b.nk.assign(slots - 1, 0);
    for (const MultiIndex& m : mons) {
        if (m.degree() != b.n0)
            throw ParseError("homogenized basis listing has uneven total degree");
        for (std::size_t k = 0; k + 1 < slots; ++k) b.nk[k] = std::max(b.nk[k], m[k]);
    }
    MonomialBasis rebuilt = MonomialBasis::build(b).homogenize();
    if (!(rebuilt.monomials() == mons))
        throw ParseError("basis listing is not a canonical homogenized enumeration");
    return rebuilt;
}

Json pencil_to_json(const MatrixPencil& a) {
    Json mats = Json::array();
    for (const Mat& c : a.coeffs) mats.push_back(mat_to_json(c));
    Json out{{"d", a.nvars()}, {"basis", basis_to_json(a.basis)}, {"matrices", std::move(mats)}};
    if (a.basis.homogenized()) out["homogenized"] = true;
    return out;
}

MatrixPencil pencil_from_json(const Json& j) {
    int d = field(j, "d").get<int>();
    if (d < 0) throw ParseError("pencil variable count must be non-negative");
    bool hom = j.value("homogenized", false);
    MonomialBasis basis = basis_from_json(field(j, "basis"), hom);
    std::size_t slots = basis.monomials().front().size();
    if (slots != static_cast<std::size_t>(d) + (hom ? 1 : 0))
        throw ParseError("basis exponent length does not match the variable count");
    const Json& mats = field(j, "matrices");
    if (static_cast<int>(mats.size()) != d + 1)
        throw ParseError("pencil needs exactly d+1 coefficient matrices");
    MatrixPencil out;
    out.basis = std::move(basis);
    for (const Json& mj : mats) {
        Mat m = mat_from_json(mj);
        if (m.rows() != out.basis.size() || m.cols() != out.basis.size())
            throw ParseError("pencil coefficient size does not match the basis");
        out.coeffs.push_back(std::move(m));
    }
    return out;
}

Json polarization_artifact(const Poly& q, const Poly& p, const MatrixPencil& pencil,
                           bool psd_last) {
    return Json{{"kind", "polarization"}, {"d", pencil.nvars()},    {"q", q.str()},
                {"p", p.str()},           {"pencil", pencil_to_json(pencil)},
                {"psd_last", psd_last}};
}

Json resolvent_artifact(const RationalFunction& f, const ResolventRep& rep) {
    Json perm = Json::array();
    for (int i : rep.transform.perm) perm.push_back(i);
    Json blocks = Json::array();
    for (int i : rep.block_indices) blocks.push_back(i);
    return Json{{"kind", "resolvent"},
                {"d", rep.pencil.nvars()},
                {"num", f.num.str()},
                {"den", f.den.str()},
                {"rep",
                 Json{{"pencil", pencil_to_json(rep.pencil)},
                      {"scalar_index", rep.scalar_index},
                      {"block_indices", std::move(blocks)},
                      {"transform",
                       Json{{"perm", std::move(perm)}, {"q", mat_to_json(rep.transform.q)}}}}}};
}

Json wronskian_artifact(const Poly& q, const Poly& p, int j, const Poly& w) {
    return Json{{"kind", "wronskian"}, {"d", std::max(q.nvars(), p.nvars())}, {"q", q.str()},
                {"p", p.str()},        {"j", j},
                {"wronskian", w.str()}};
}

Json certificate_artifact(const GramCertificate& cert) {
    Json weights = Json::array();
    for (const Rational& w : cert.weights) weights.push_back(rat_json(w));
    Json factors = Json::array();
    for (const Poly& h : cert.factors) factors.push_back(h.str());
    return Json{{"kind", "gram_certificate"},
                {"d", cert.basis.bounds().d()},
                {"target", cert.target.str()},
                {"basis", basis_to_json(cert.basis)},
                {"gram", mat_to_json(cert.gram)},
                {"weights", std::move(weights)},
                {"factors", std::move(factors)}};
}

Json sos_failure_artifact(const Poly& target, const SosResult& r) {
    return Json{{"kind", "sos_failure"},
                {"d", target.nvars()},
                {"target", target.str()},
                {"status", sos_status_str(r.status)},
                {"reason", r.reason},
                {"margin", r.margin}};
}

Json ambiguity_basis_artifact(const MonomialBasis& basis,
                              const std::vector<AmbiguityBasisElement>& elements) {
    Json els = Json::array();
    for (const AmbiguityBasisElement& el : elements) {
        Json beta = Json::array();
        for (std::size_t i = 0; i < el.beta.size(); ++i) beta.push_back(el.beta[i]);
        Json support = Json::array();
        for (int i : el.support) support.push_back(i);
        Json entries = Json::array();
        for (int a = 0; a < el.matrix.rows(); ++a)
            for (int b = 0; b < el.matrix.cols(); ++b)
                if (sign_of(el.matrix(a, b)) != 0)
                    entries.push_back(Json::array({a, b, rat_json(el.matrix(a, b))}));
        els.push_back(Json{{"beta", std::move(beta)},
                           {"kind", el.kind == AmbiguityKind::triple ? "triple" : "quad"},
                           {"support", std::move(support)},
                           {"matrix", std::move(entries)}});
    }
    return Json{{"kind", "ambiguity_basis"},
                {"d", static_cast<int>(basis.monomials().front().size()) - 1},
                {"basis", basis_to_json(basis)},
                {"elements", std::move(els)}};
}

Json annihilating_pencil_artifact(const MatrixPencil& pencil) {
    return Json{{"kind", "annihilating_pencil"},
                {"d", pencil.nvars()},
                {"pencil", pencil_to_json(pencil)}};
}

Json symmetric_matrix_artifact(const Mat& m) {
    return Json{{"kind", "symmetric_matrix"}, {"matrix", mat_to_json(m)}};
}

Json nevanlinna_artifact(const RationalFunction& f, int samples, std::uint64_t seed,
                         const NevanlinnaReport& rep) {
    Json point = Json::array();
    for (const GaussianRational& c : rep.point) point.push_back(gr_to_json(c));
    return Json{{"kind", "nevanlinna_report"},
                {"d", f.nvars()},
                {"num", f.num.str()},
                {"den", f.den.str()},
                {"samples", samples},
                {"seed", seed},
                {"report",
                 Json{{"violation", rep.violation},
                      {"samples_checked", rep.samples_checked},
                      {"poles_skipped", rep.poles_skipped},
                      {"point", std::move(point)},
                      {"value", gr_to_json(rep.value)}}}};
}

Json strip_artifact(const Poly& f, const FactoredPoly& s, int sign_samples, std::uint64_t seed,
                    double tol, const StripReport& rep) {
    Json removed_ind = Json::array();
    for (const Poly& p : rep.removed_indefinite) removed_ind.push_back(p.str());
    Json removed_red = Json::array();
    for (const Poly& p : rep.removed_redundant) removed_red.push_back(p.str());
    return Json{{"kind", "artin_strip_report"},
                {"d", std::max(f.nvars(), s.nvars())},
                {"f", f.str()},
                {"factors", factors_to_json(s)},
                {"sign_samples", sign_samples},
                {"seed", seed},
                {"tol", tol},
                {"minimal", factors_to_json(rep.minimal)},
                {"removed_indefinite", std::move(removed_ind)},
                {"removed_redundant", std::move(removed_red)},
                {"final_status", sos_status_str(rep.final_check.status)},
                {"oracle_inconclusive", rep.oracle_inconclusive}};
}

namespace {

VerifyOutcome verify_polarization_artifact(const Json& a) {
    int d = field(a, "d").get<int>();
    MatrixPencil pencil = pencil_from_json(field(a, "pencil"));
    Poly q = parse_poly_text(field(a, "q").get<std::string>(), d);
    Poly p = parse_poly_text(field(a, "p").get<std::string>(), d);
    if (!pencil.symmetric()) return fail("polarization", "pencil is not symmetric");
    if (!verify_polarization(q, p, pencil))
        return fail("polarization", "bilinear product identity does not re-expand");
    if (!derivative_annihilation_holds(pencil))
        return fail("polarization", "top-derivative annihilation fails");
    if (a.value("psd_last", false) && !exact_psd_check(pencil.coeffs.back()).psd)
        return fail("polarization", "last coefficient is not positive semidefinite");
    return pass("polarization", "identity, annihilation and shape re-checked exactly");
}

VerifyOutcome verify_resolvent_artifact(const Json& a) {
    int d = field(a, "d").get<int>();
    const Json& rj = field(a, "rep");
    ResolventRep rep;
    rep.pencil = pencil_from_json(field(rj, "pencil"));
    rep.scalar_index = field(rj, "scalar_index").get<int>();
    for (const Json& v : field(rj, "block_indices")) rep.block_indices.push_back(v.get<int>());
    const Json& tj = field(rj, "transform");
    for (const Json& v : field(tj, "perm")) rep.transform.perm.push_back(v.get<int>());
    rep.transform.q = mat_from_json(field(tj, "q"));

    int n = rep.pencil.dim();
    if (rep.scalar_index < 0 || rep.scalar_index >= n)
        return fail("resolvent", "scalar index out of range");
    for (int i : rep.block_indices)
        if (i < 0 || i >= n) return fail("resolvent", "block index out of range");
    std::vector<int> perm = rep.transform.perm;
    std::sort(perm.begin(), perm.end());
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
        if (perm.size() != static_cast<std::size_t>(n) || perm[static_cast<std::size_t>(i)] != i)
            return fail("resolvent", "transform permutation is not a permutation");
    if (!rep.pencil.symmetric()) return fail("resolvent", "pencil is not symmetric");

    Poly num = parse_poly_text(field(a, "num").get<std::string>(), d);
    Poly den = parse_poly_text(field(a, "den").get<std::string>(), d);

    Rng rng(0);
    int agreed = 0;
    for (int t = 0; t < 200 && agreed < 20; ++t) {
        std::vector<GaussianRational> z(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
            z[static_cast<std::size_t>(k)] = GaussianRational(rng.rational_in(-10, 10, 1000));
        GaussianRational dv = den.eval(z);
        if (dv.is_zero()) continue;
        GaussianRational want = num.eval(z) / dv;
        try {
            if (!(eval_resolvent(rep, z) == want))
                return fail("resolvent", "Schur complement disagrees with num/den at a sample");
        } catch (const SingularBlockError&) {
            continue;
        }
        ++agreed;
    }
    if (agreed < 20)
        return fail("resolvent", "could not collect 20 nonsingular sample agreements");
    return pass("resolvent", "20 exact sample agreements with num/den");
}

VerifyOutcome verify_wronskian_artifact(const Json& a) {
    int d = field(a, "d").get<int>();
    Poly q = parse_poly_text(field(a, "q").get<std::string>(), d);
    Poly p = parse_poly_text(field(a, "p").get<std::string>(), d);
    int j = field(a, "j").get<int>();
    if (j < 1 || j > d) return fail("wronskian", "variable index out of range");
    Poly w = parse_poly_text(field(a, "wronskian").get<std::string>(), d);
    if (!(wronskian(q, p, j) == w))
        return fail("wronskian", "recomputed Wronskian differs");
    return pass("wronskian", "Wronskian re-derived exactly");
}

VerifyOutcome verify_certificate_artifact(const Json& a) {
    int d = field(a, "d").get<int>();
    GramCertificate cert;
    cert.basis = basis_from_json(field(a, "basis"), false);
    cert.gram = mat_from_json(field(a, "gram"));
    cert.target = parse_poly_text(field(a, "target").get<std::string>(), d);
    for (const Json& w : field(a, "weights")) cert.weights.push_back(rat_from(w.get<std::string>()));
    for (const Json& h : field(a, "factors"))
        cert.factors.push_back(parse_poly_text(h.get<std::string>(), d));
    if (!gram_certificate_valid(cert))
        return fail("gram_certificate", "re-expansion or exact PSD check failed");
    return pass("gram_certificate", "certificate re-validated exactly");
}

VerifyOutcome verify_sos_failure_artifact(const Json& a) {
    std::string status = field(a, "status").get<std::string>();
    if (status != "infeasible-evidence" && status != "inconclusive")
        return fail("sos_failure", "unexpected status \"" + status + "\"");
    std::string reason = field(a, "reason").get<std::string>();
    if (status == "infeasible-evidence" && reason.rfind("exact:", 0) != 0 &&
        reason.rfind("numeric:", 0) != 0)
        return fail("sos_failure", "reason lacks the exact:/numeric: prefix");
    return pass("sos_failure", "evidence report is well-formed; nothing to re-derive");
}

VerifyOutcome verify_ambiguity_basis_artifact(const Json& a) {
    MonomialBasis basis = basis_from_json(field(a, "basis"), true);
    int n = basis.size();
    for (const Json& ej : field(a, "elements")) {
        std::string kind = field(ej, "kind").get<std::string>();
        if (kind != "triple" && kind != "quad")
            return fail("ambiguity_basis", "unknown element kind \"" + kind + "\"");
        std::vector<int> support;
        for (const Json& v : field(ej, "support")) support.push_back(v.get<int>());
        if (support.size() != (kind == "triple" ? 3u : 4u))
            return fail("ambiguity_basis", "support size does not match the element kind");
        for (int i : support)
            if (i < 0 || i >= n) return fail("ambiguity_basis", "support index out of range");
        MultiIndex beta = mi_from_json(field(ej, "beta"));
        int k = static_cast<int>(support.size());
        Mat local(k, k);
        for (const Json& cell : field(ej, "matrix")) {
            int i = cell.at(0).get<int>(), j = cell.at(1).get<int>();
            if (i < 0 || i >= k || j < 0 || j >= k)
                return fail("ambiguity_basis", "matrix entry outside the support block");
            local(i, j) = rat_from(cell.at(2).get<std::string>());
        }
        if (!local.is_symmetric()) return fail("ambiguity_basis", "element is not symmetric");
        Mat scattered(n, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                scattered(support[static_cast<std::size_t>(i)],
                          support[static_cast<std::size_t>(j)]) += local(i, j);
                if (sign_of(local(i, j)) != 0 &&
                    basis.mono(support[static_cast<std::size_t>(i)]) +
                            basis.mono(support[static_cast<std::size_t>(j)]) !=
                        beta)
                    return fail("ambiguity_basis", "entry outside the declared beta group");
            }
        if (!quadratic_form(scattered, basis).is_zero())
            return fail("ambiguity_basis", "element does not annihilate the quadratic form");
    }
    return pass("ambiguity_basis", "all elements annihilate Psi S Psi^t exactly");
}

VerifyOutcome verify_annihilating_pencil_artifact(const Json& a) {
    MatrixPencil pencil = pencil_from_json(field(a, "pencil"));
    if (!pencil.symmetric()) return fail("annihilating_pencil", "pencil is not symmetric");
    for (const Poly& row : pencil_apply_basis(pencil))
        if (!row.is_zero())
            return fail("annihilating_pencil", "S(z) Psi^t has a nonzero row");
    return pass("annihilating_pencil", "S(z) Psi^t = 0 re-expanded exactly");
}

VerifyOutcome verify_symmetric_matrix_artifact(const Json& a) {
    Mat m = mat_from_json(field(a, "matrix"));
    if (!m.is_symmetric()) return fail("symmetric_matrix", "matrix is not symmetric");
    return pass("symmetric_matrix", "symmetry checked");
}

VerifyOutcome verify_nevanlinna_artifact(const Json& a) {
    int d = field(a, "d").get<int>();
    RationalFunction f(parse_poly_text(field(a, "num").get<std::string>(), d),
                       parse_poly_text(field(a, "den").get<std::string>(), d));
    int samples = field(a, "samples").get<int>();
    std::uint64_t seed = field(a, "seed").get<std::uint64_t>();
    NevanlinnaReport fresh = nevanlinna_sample_check(f, samples, seed);

    const Json& rj = field(a, "report");
    std::vector<GaussianRational> point;
    for (const Json& c : field(rj, "point")) point.push_back(gr_from_json(c));
    bool same = field(rj, "violation").get<bool>() == fresh.violation &&
                field(rj, "samples_checked").get<int>() == fresh.samples_checked &&
                field(rj, "poles_skipped").get<int>() == fresh.poles_skipped &&
                point == fresh.point && gr_from_json(field(rj, "value")) == fresh.value;
    if (!same) return fail("nevanlinna_report", "re-run with the recorded seed disagrees");
    return pass("nevanlinna_report", "sampling re-run reproduced the report");
}

VerifyOutcome verify_strip_artifact(const Json& a) {
    int d = field(a, "d").get<int>();
    Poly f = parse_poly_text(field(a, "f").get<std::string>(), d);
    FactoredPoly s = factors_from_json(field(a, "factors"), d);
    int sign_samples = field(a, "sign_samples").get<int>();
    std::uint64_t seed = field(a, "seed").get<std::uint64_t>();
    double tol = field(a, "tol").get<double>();
    StripReport fresh;
    try {
        fresh = minimal_denominator_strip(f, s, half_degree_oracle(tol), sign_samples, seed);
    } catch (const PreconditionError& e) {
        return fail("artin_strip_report", std::string("re-run refused the input: ") + e.what());
    }
    Json expect = strip_artifact(f, s, sign_samples, seed, tol, fresh);
    for (const char* key :
         {"minimal", "removed_indefinite", "removed_redundant", "final_status",
          "oracle_inconclusive"})
        if (field(a, key) != field(expect, key))
            return fail("artin_strip_report", std::string("re-run disagrees on \"") + key + "\"");
    return pass("artin_strip_report", "greedy strip re-run reproduced the report");
}

}  // namespace

VerifyOutcome verify_artifact(const Json& artifact) {
    std::string kind;
    try {
        kind = field(artifact, "kind").get<std::string>();
        if (kind == "polarization") return verify_polarization_artifact(artifact);
        if (kind == "resolvent") return verify_resolvent_artifact(artifact);
        if (kind == "wronskian") return verify_wronskian_artifact(artifact);
        if (kind == "gram_certificate") return verify_certificate_artifact(artifact);
        if (kind == "sos_failure") return verify_sos_failure_artifact(artifact);
        if (kind == "ambiguity_basis") return verify_ambiguity_basis_artifact(artifact);
        if (kind == "annihilating_pencil") return verify_annihilating_pencil_artifact(artifact);
        if (kind == "symmetric_matrix") return verify_symmetric_matrix_artifact(artifact);
        if (kind == "nevanlinna_report") return verify_nevanlinna_artifact(artifact);
        if (kind == "artin_strip_report") return verify_strip_artifact(artifact);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed artifact: ") + e.what());
    }
    throw ParseError("unknown artifact kind \"" + kind + "\"");
}

}  // namespace sospencil