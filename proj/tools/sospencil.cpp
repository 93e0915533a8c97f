// Command-line front end. Parses polynomial text, dispatches to the library
// and emits JSON artifacts that `verify` can re-check independently.
//
// Exit codes: 0 success or certified, 1 usage/parse/io error, 2 verified
// negative (counterexample, failed verification, exact infeasibility),
// 3 inconclusive.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sospencil/ambiguity.hpp"
#include "sospencil/artin.hpp"
#include "sospencil/errors.hpp"
#include "sospencil/json_io.hpp"
#include "sospencil/polarize.hpp"
#include "sospencil/psd.hpp"
#include "sospencil/resolvent.hpp"
#include "sospencil/sos.hpp"

using namespace sospencil;

namespace {

struct Output {
    bool json = false;
    std::string out_path;

    // Writes the artifact to --out (if given) and to stdout in --json mode.
    // Returns false on an unwritable path.
    bool emit(const Json& artifact) const {
        if (!out_path.empty()) {
            std::ofstream os(out_path);
            if (!os) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return false;
            }
            os << artifact.dump(2) << "\n";
        }
        if (json) std::cout << artifact.dump(2) << "\n";
        return true;
    }
};

void print_mat(const Mat& m, const std::string& label) {
    std::cout << label << ":\n";
    for (int i = 0; i < m.rows(); ++i) {
        std::cout << " ";
        for (int j = 0; j < m.cols(); ++j) std::cout << " " << rat_str(m(i, j));
        std::cout << "\n";
    }
}

void print_pencil(const MatrixPencil& a) {
    std::cout << "basis (" << a.basis.size() << "): ";
    for (int i = 0; i < a.basis.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << Poly::monomial(a.basis.mono(i)).str();
    }
    std::cout << "\n";
    if (a.dim() > 12) {
        std::cout << "(matrices suppressed at this size; use --json)\n";
        return;
    }
    for (std::size_t k = 0; k < a.coeffs.size(); ++k)
        print_mat(a.coeffs[k], "S_" + std::to_string(k));
}

// Parses a pair of polynomials over a shared variable count.
void parse_pair(const std::string& qt, const std::string& pt, Poly& q, Poly& p) {
    Poly q0 = parse_poly_text(qt);
    Poly p0 = parse_poly_text(pt);
    int d = std::max(q0.nvars(), p0.nvars());
    q = q0.extended(d);
    p = p0.extended(d);
}

DegreeBounds bounds_from_flags(int n0, const std::vector<int>& nk) {
    DegreeBounds b;
    b.n0 = n0;
    b.nk = nk;
    for (int v : nk)
        if (v < 0) throw ParseError("per-variable bounds must be non-negative");
    if (n0 < 0) throw ParseError("total degree bound must be non-negative");
    return b;
}

Json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path);
    Json j = Json::parse(is, nullptr, false);
    if (j.is_discarded()) throw ParseError("not valid JSON: " + path);
    return j;
}

// Accepts a symmetric_matrix artifact, a gram_certificate (its gram), or a
// bare array of rows.
Mat read_matrix_file(const std::string& path) {
    Json j = read_json_file(path);
    if (j.is_array()) return mat_from_json(j);
    std::string kind = j.value("kind", "");
    if (kind == "symmetric_matrix") return mat_from_json(j.at("matrix"));
    if (kind == "gram_certificate") return mat_from_json(j.at("gram"));
    throw ParseError("expected a matrix, a symmetric_matrix artifact or a gram_certificate");
}

int run_polarize(const std::string& qt, const std::string& pt, const Output& out) {
    Poly q, p;
    parse_pair(qt, pt, q, p);
    MatrixPencil b = product_pencil(q, p);
    if (!out.emit(polarization_artifact(q, p, b))) return 1;
    if (!out.json) {
        std::cout << "product polarization of (" << q.str() << ") * (" << p.str() << ")\n";
        print_pencil(b);
    }
    return 0;
}

int run_resolvent(const std::string& qt, const std::string& pt, const Output& out) {
    Poly q, p;
    parse_pair(qt, pt, q, p);
    RationalFunction f(p, q);
    ResolventRep rep = long_resolvent(f);
    if (!out.emit(resolvent_artifact(f, rep))) return 1;
    if (!out.json) {
        std::cout << "long resolvent of (" << p.str() << ") / (" << q.str() << ")\n"
                  << "pencil dimension " << rep.pencil.dim() << ", scalar row "
                  << rep.scalar_index << ", eliminated block of "
                  << rep.block_indices.size() << "\n";
    }
    return 0;
}

int run_wronskian(const std::string& qt, const std::string& pt, int j, const Output& out) {
    Poly q, p;
    parse_pair(qt, pt, q, p);
    if (j < 1 || j > q.nvars()) {
        std::cerr << "error: -j must name a variable between 1 and " << q.nvars() << "\n";
        return 1;
    }
    Poly w = wronskian(q, p, j);
    if (!out.emit(wronskian_artifact(q, p, j, w))) return 1;
    if (!out.json) std::cout << w.str() << "\n";
    return 0;
}

int run_sos(const std::string& ft, double tol, std::optional<int> n0,
            const std::vector<int>& nk, const Output& out) {
    Poly f = parse_poly_text(ft);
    DegreeBounds b;
    if (n0) {
        b = bounds_from_flags(*n0, nk);
        if (b.d() != f.nvars())
            throw ParseError("need exactly one --nk per variable of -f");
    } else {
        b = half_bounds(f);
    }
    SosResult r = sos_feasibility(f, MonomialBasis::build(b), tol);
    if (r.status == SosStatus::certified) {
        GramCertificate cert = *r.cert;
        for (const auto& [w, h] : extract_sos(cert)) {
            cert.weights.push_back(w);
            cert.factors.push_back(h);
        }
        if (!out.emit(certificate_artifact(cert))) return 1;
        if (!out.json) {
            std::cout << "certified: " << cert.weights.size()
                      << " weighted squares over " << cert.basis.size()
                      << " basis monomials\n";
            for (std::size_t i = 0; i < cert.factors.size(); ++i)
                std::cout << "  " << rat_str(cert.weights[i]) << " * ("
                          << cert.factors[i].str() << ")^2\n";
        }
        return 0;
    }
    if (!out.emit(sos_failure_artifact(f, r))) return 1;
    if (!out.json) {
        std::cout << (r.status == SosStatus::infeasible_evidence ? "not certifiable"
                                                                 : "inconclusive")
                  << ": " << r.reason << "\n";
    }
    return r.status == SosStatus::infeasible_evidence ? 2 : 3;
}

int run_ambiguity_basis(int n0, const std::vector<int>& nk, const Output& out) {
    DegreeBounds b = bounds_from_flags(n0, nk);
    MonomialBasis h = MonomialBasis::build(b).homogenize();
    std::vector<AmbiguityBasisElement> els = ambiguity_space_basis(h);
    if (!out.emit(ambiguity_basis_artifact(h, els))) return 1;
    if (!out.json) {
        int triples = 0;
        for (const AmbiguityBasisElement& el : els)
            if (el.kind == AmbiguityKind::triple) ++triples;
        std::cout << els.size() << " ambiguity basis elements over " << h.size()
                  << " homogenized monomials (" << triples << " triples, "
                  << els.size() - triples << " quads)\n";
    }
    return 0;
}

int run_lift(const std::string& matrix_path, int n0, const std::vector<int>& nk,
             const Output& out) {
    DegreeBounds b = bounds_from_flags(n0, nk);
    MonomialBasis basis = MonomialBasis::build(b);
    Mat s = read_matrix_file(matrix_path);
    try {
        MatrixPencil lifted = lift_ambiguity(s, basis, b);
        if (!out.emit(annihilating_pencil_artifact(lifted))) return 1;
        if (!out.json) {
            std::cout << "lifted to an annihilating pencil\n";
            print_pencil(lifted);
        }
        return 0;
    } catch (const NotLiftableError& e) {
        std::cerr << "no symmetric completion exists: " << e.what() << "\n";
        return 2;
    }
}

int run_psd_repair(const std::string& qt, const std::string& pt,
                   const std::string& matrix_path, const Output& out) {
    Poly q, p;
    parse_pair(qt, pt, q, p);
    Mat a_d = read_matrix_file(matrix_path);
    MatrixPencil repaired = psd_repair(product_pencil(q, p), q, p, a_d);
    if (!out.emit(polarization_artifact(q, p, repaired, true))) return 1;
    if (!out.json) {
        std::cout << "repaired pencil keeps the polarization identity with a PSD "
                     "last coefficient\n";
        print_pencil(repaired);
    }
    return 0;
}

int run_nevanlinna(const std::string& qt, const std::string& pt, int samples,
                   std::uint64_t seed, bool seed_given, const Output& out) {
    Poly q, p;
    parse_pair(qt, pt, q, p);
    RationalFunction f(p, q);
    NevanlinnaReport rep = nevanlinna_sample_check(f, samples, seed);
    if (!out.emit(nevanlinna_artifact(f, samples, seed, rep))) return 1;
    if (!out.json) {
        if (!seed_given) std::cout << "seed: 0 (default)\n";
        if (rep.violation) {
            std::cout << "violation: Im f < 0 at (";
            for (std::size_t i = 0; i < rep.point.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << gr_str(rep.point[i]);
            }
            std::cout << ") where f = " << gr_str(rep.value) << "\n";
        } else {
            std::cout << "no violation over " << rep.samples_checked << " samples ("
                      << rep.poles_skipped << " poles skipped)\n";
        }
    }
    return rep.violation ? 2 : 0;
}

int run_artin_strip(const std::string& ft, const std::vector<std::string>& factor_texts,
                    int sign_samples, std::uint64_t seed, bool seed_given, double tol,
                    const Output& out) {
    Poly f0 = parse_poly_text(ft);
    int d = f0.nvars();
    FactoredPoly s;
    for (const std::string& t : factor_texts) {
        Poly g = parse_poly_text(t);
        d = std::max(d, g.nvars());
    }
    Poly f = f0.extended(d);
    // repeating --factor with the same polynomial raises its multiplicity
    for (const std::string& t : factor_texts) {
        Poly g = parse_poly_text(t).extended(d);
        bool merged = false;
        for (auto& [fp, mult] : s.factors)
            if (fp == g) {
                ++mult;
                merged = true;
                break;
            }
        if (!merged) s.factors.push_back({g, 1});
    }
    StripReport rep = minimal_denominator_strip(f, s, half_degree_oracle(tol), sign_samples, seed);
    if (!out.emit(strip_artifact(f, s, sign_samples, seed, tol, rep))) return 1;
    if (!out.json) {
        if (!seed_given) std::cout << "seed: 0 (default)\n";
        std::cout << "minimal denominator:";
        if (rep.minimal.factors.empty()) std::cout << " 1";
        for (const auto& [fp, mult] : rep.minimal.factors) {
            std::cout << " (" << fp.str() << ")";
            if (mult > 1) std::cout << "^" << mult;
        }
        std::cout << "\nremoved " << rep.removed_indefinite.size()
                  << " indefinite and " << rep.removed_redundant.size()
                  << " redundant factor copies\n";
        if (rep.oracle_inconclusive)
            std::cout << "warning: some removals were skipped on inconclusive oracle "
                         "answers; the result may not be minimal\n";
    }
    return rep.oracle_inconclusive ? 3 : 0;
}

int run_verify(const std::string& path, const Output& out) {
    VerifyOutcome v = verify_artifact(read_json_file(path));
    if (out.json) {
        std::cout << Json{{"ok", v.ok}, {"kind", v.kind}, {"detail", v.detail}}.dump(2)
                  << "\n";
    } else {
        std::cout << (v.ok ? "ok " : "FAIL ") << v.kind << ": " << v.detail << "\n";
    }
    return v.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact matrix pencils, resolvents and sum-of-squares certificates "
                 "for rational functions"};
    app.require_subcommand(1);

    struct {
        std::string q, p, f, matrix, file;
        std::vector<std::string> factors;
        int j = 1, n0 = 0, samples = 1000, sign_samples = 400;
        std::vector<int> nk;
        std::uint64_t seed = 0;
        double tol = 1e-9;
        Output out;
    } opt;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_flag("--json", opt.out.json, "machine-readable output");
        cmd->add_option("--out", opt.out.out_path, "write the JSON artifact to this file");
    };

    CLI::App* polarize = app.add_subcommand(
        "polarize", "symmetric pencil with Psi B(z) Psi^t = q(z) p(z)");
    polarize->add_option("-q", opt.q, "left factor")->required();
    polarize->add_option("-p", opt.p, "right factor")->required();
    add_io(polarize);

    CLI::App* resolvent = app.add_subcommand(
        "resolvent", "long resolvent representation of f = p/q");
    resolvent->add_option("-q", opt.q, "denominator")->required();
    resolvent->add_option("-p", opt.p, "numerator")->required();
    add_io(resolvent);

    CLI::App* wronsk = app.add_subcommand(
        "wronskian", "partial Wronskian W_j[q, p] = q dp/dz_j - p dq/dz_j");
    wronsk->add_option("-q", opt.q, "left polynomial")->required();
    wronsk->add_option("-p", opt.p, "right polynomial")->required();
    wronsk->add_option("-j", opt.j, "variable index, 1-based")->required();
    add_io(wronsk);

    CLI::App* sos = app.add_subcommand(
        "sos", "decide a weighted sum-of-squares representation");
    sos->add_option("-f", opt.f, "target polynomial")->required();
    sos->add_option("--tol", opt.tol, "numeric residual tolerance")->capture_default_str();
    CLI::Option* sos_n0 = sos->add_option("--n0", opt.n0, "total degree bound override");
    sos->add_option("--nk", opt.nk, "per-variable bound override, one per variable")
        ->needs(sos_n0);
    add_io(sos);

    CLI::App* amb = app.add_subcommand(
        "ambiguity-basis", "sparse basis of the pencil ambiguity space");
    amb->add_option("--n0", opt.n0, "total degree bound")->required();
    amb->add_option("--nk", opt.nk, "per-variable bound, repeat once per variable")
        ->required();
    add_io(amb);

    CLI::App* lift = app.add_subcommand(
        "lift", "complete a last-variable ambiguity to an annihilating pencil");
    lift->add_option("--matrix", opt.matrix, "JSON file with the symmetric S_d")
        ->required();
    lift->add_option("--n0", opt.n0, "total degree bound")->required();
    lift->add_option("--nk", opt.nk, "per-variable bound, repeat once per variable")
        ->required();
    add_io(lift);

    CLI::App* repair = app.add_subcommand(
        "psd-repair", "swap a product pencil's last coefficient for a PSD Gram");
    repair->add_option("-q", opt.q, "left factor")->required();
    repair->add_option("-p", opt.p, "right factor")->required();
    repair->add_option("--matrix", opt.matrix, "JSON file with the PSD Gram of W_d")
        ->required();
    add_io(repair);

    CLI::App* nev = app.add_subcommand(
        "nevanlinna-check", "sample Im f on the upper poly-halfplane for f = p/q");
    nev->add_option("-q", opt.q, "denominator")->required();
    nev->add_option("-p", opt.p, "numerator")->required();
    nev->add_option("--samples", opt.samples, "sample count")->capture_default_str();
    CLI::Option* nev_seed = nev->add_option("--seed", opt.seed, "RNG seed");
    add_io(nev);

    CLI::App* strip = app.add_subcommand(
        "artin-strip", "greedily remove unnecessary denominator factors");
    strip->add_option("-f", opt.f, "numerator of the Artin quotient")->required();
    strip->add_option("--factor", opt.factors,
                      "denominator factor, repeat to raise multiplicity")
        ->required();
    strip->add_option("--sign-samples", opt.sign_samples, "sign sampling budget")
        ->capture_default_str();
    CLI::Option* strip_seed = strip->add_option("--seed", opt.seed, "RNG seed");
    strip->add_option("--tol", opt.tol, "oracle tolerance")->capture_default_str();
    add_io(strip);

    CLI::App* verify = app.add_subcommand(
        "verify", "independently re-check a JSON artifact");
    verify->add_option("file", opt.file, "artifact path")->required();
    verify->add_flag("--json", opt.out.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the usage message; --help lands here too
        return code == 0 ? 0 : 1;
    }

    try {
        if (polarize->parsed()) return run_polarize(opt.q, opt.p, opt.out);
        if (resolvent->parsed()) return run_resolvent(opt.q, opt.p, opt.out);
        if (wronsk->parsed()) return run_wronskian(opt.q, opt.p, opt.j, opt.out);
        if (sos->parsed())
            return run_sos(opt.f, opt.tol,
                           sos_n0->count() ? std::optional<int>(opt.n0) : std::nullopt,
                           opt.nk, opt.out);
        if (amb->parsed()) return run_ambiguity_basis(opt.n0, opt.nk, opt.out);
        if (lift->parsed()) return run_lift(opt.matrix, opt.n0, opt.nk, opt.out);
        if (repair->parsed()) return run_psd_repair(opt.q, opt.p, opt.matrix, opt.out);
        if (nev->parsed())
            return run_nevanlinna(opt.q, opt.p, opt.samples, opt.seed,
                                  nev_seed->count() > 0, opt.out);
        if (strip->parsed())
            return run_artin_strip(opt.f, opt.factors, opt.sign_samples, opt.seed,
                                   strip_seed->count() > 0, opt.tol, opt.out);
        if (verify->parsed()) return run_verify(opt.file, opt.out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}