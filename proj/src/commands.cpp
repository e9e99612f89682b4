#include "ainf/commands.hpp"

#include <json.hpp>

#include <functional>
#include <set>
#include <sstream>

#include "ainf/oracle.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Pipeline {
    DgAlgebra algebra;
    Retraction retraction;
    int K;
    Transferred transferred;
};

std::set<int> support_of(const GradedModule& H) {
    const auto d = H.degrees();
    return {d.begin(), d.end()};
}

int choose_arity(const InputDocument& doc, const RunOptions& opts, const GradedModule& H) {
    std::optional<int> K = opts.max_arity;
    if (!K && doc.run) K = doc.run->max_arity;
    if (!K) K = degree_forced_arity(support_of(H));
    if (!K) throw UsageError("no truncation is forced by the homology degrees; pass --max-arity");
    if (*K < 2) throw UsageError("--max-arity must be at least 2");
    return *K;
}

Pipeline prepare(const InputDocument& doc, const RunOptions& opts, std::optional<int> forced_K = std::nullopt) {
    DgAlgebra A = to_dga(doc, opts.ring);
    Retraction r = homology_with_retraction(A.complex());
    const int K = forced_K ? *forced_K : choose_arity(doc, opts, *r.H);
    StructurePtr S = share(A.as_ainfinity(K));
    Transferred t = transfer_all(S, r);
    return Pipeline{std::move(A), std::move(r), K, std::move(t)};
}

std::string ranks_text(const GradedModule& H) {
    std::ostringstream os;
    bool first = true;
    for (int n : H.degrees()) {
        os << (first ? "" : ", ") << "H_" << n << " = " << H.in_degree(n).size();
        first = false;
    }
    return first ? "all zero" : os.str();
}

json terms_json(const SparseVec& v, const GradedModule& m) {
    json arr = json::array();
    for (const auto& t : v) arr.push_back(json{{"basis", m.element(t.index).name}, {"coeff", t.coeff.to_string()}});
    return arr;
}

json family_json(const GradedModule& source, const GradedModule& target, int K,
                 const std::function<MultilinearMap(int)>& classical) {
    json arr = json::array();
    for (int k = 1; k <= K; ++k) {
        const MultilinearMap m = classical(k);
        for (WordCode code : m.sorted_codes()) {
            json inputs = json::array();
            for (int x : m.decode(code)) inputs.push_back(source.element(x).name);
            arr.push_back(json{{"arity", k}, {"inputs", inputs}, {"output", terms_json(*m.find(code), target)}});
        }
    }
    return arr;
}

json checks_json(const Report& rep) {
    json arr = json::array();
    for (const auto& c : rep.checks) {
        json o{{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) o["detail"] = c.detail;
        arr.push_back(o);
    }
    return arr;
}

std::string checks_text(const Report& rep) {
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        os << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

json basis_json(const GradedModule& m) {
    json arr = json::array();
    for (const auto& b : m.basis()) arr.push_back(json{{"name", b.name}, {"degree", b.degree}});
    return arr;
}

Family classical_family(const AInfStructure& m) {
    Family out(1);
    for (int k = 1; k <= m.K(); ++k) out.push_back(m.classical(k));
    return out;
}

Report transfer_checks(const Pipeline& p) {
    Report rep;
    for (const auto& c : verify_retraction(p.retraction).checks) rep.add("retraction: " + c.name, c.passed, c.detail);
    const auto& T = p.transferred;
    const int sq = first_nonzero_arity(coderivation_square(*T.structure));
    rep.add("Stasheff identities up to K", sq == 0, sq ? "fails in arity " + std::to_string(sq) : "");
    rep.add("independent expansion agrees",
            coderivation_square(*T.structure) == brute_force_stasheff(*T.structure));
    const int di = first_nonzero_arity(morphism_defect(T.iota));
    rep.add("iota is an infinity-morphism", di == 0, di ? "fails in arity " + std::to_string(di) : "");
    const int dp = first_nonzero_arity(morphism_defect(T.pi));
    rep.add("pi is an infinity-morphism", dp == 0, dp ? "fails in arity " + std::to_string(dp) : "");
    rep.add("pi∘iota = id", compose(T.pi, T.iota).components() == identity_morphism(T.structure).components());
    return rep;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

int resolve_class(const GradedModule& H, const std::string& name) {
    std::string key = name;
    if (key.empty() || key.front() != '[') key = "[" + key + "]";
    if (auto i = H.find(key)) return *i;
    std::string known;
    for (const auto& n : H.names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown homology class '" + name + "' (classes: " + (known.empty() ? "none" : known) + ")");
}

}  // namespace

CommandResult cmd_transfer(const InputDocument& doc, const RunOptions& opts) {
    Pipeline p = prepare(doc, opts);
    const Report rep = transfer_checks(p);
    const GradedModule& H = *p.retraction.H;
    const int code = rep.all_passed() ? exit_ok : exit_precondition;
    if (opts.format == OutputFormat::machine) {
        json out{{"command", "transfer"},
                 {"ring", p.algebra.ring().name()},
                 {"K", p.K},
                 {"homology", basis_json(H)},
                 {"structure", family_json(H, H, p.K, [&](int k) { return p.transferred.structure->classical(k); })},
                 {"inclusion", family_json(H, *p.algebra.module(), p.K,
                                           [&](int k) { return p.transferred.iota.classical(k); })},
                 {"checks", checks_json(rep)},
                 {"exit_code", code}};
        return {code, render(out)};
    }
    std::ostringstream os;
    os << "transfer over " << p.algebra.ring().name() << ", truncation K = " << p.K << "\n";
    os << "homology: " << ranks_text(H) << "\n";
    os << "homology basis:";
    for (const auto& b : H.basis()) os << " " << b.name << " (" << b.degree << ")";
    os << "\ntransferred structure (classical signs):\n"
       << format_family("mu", H, H, classical_family(*p.transferred.structure));
    os << "checks:\n" << checks_text(rep);
    return {code, os.str()};
}

CommandResult cmd_formality(const InputDocument& doc, const RunOptions& opts) {
    Pipeline p = prepare(doc, opts);
    const Ring& ring = p.algebra.ring();
    const bool overridden = opts.alpha || opts.c;
    std::optional<Scalar> alpha;
    if (opts.alpha) {
        try {
            alpha = Scalar::parse(ring, *opts.alpha);
        } catch (const std::exception&) {
            throw UsageError("--alpha '" + *opts.alpha + "' is not an element of " + ring.name());
        }
    } else {
        alpha = twist_alpha(doc, ring);
    }
    if (!alpha) throw UsageError("no twist given; pass --alpha (and --c) or add a twist to the document");
    const int c = opts.c ? *opts.c : (doc.twist ? doc.twist->c : 1);
    if (c < 1) throw UsageError("--c must be at least 1");

    std::optional<GradedMap> sigma = overridden ? std::nullopt : endomorphism_map(doc, p.algebra.module());
    if (!sigma) sigma = degree_twisting(p.algebra.module(), *alpha, c);
    const TwistData twist{*alpha, c, *sigma};
    const Report tw = verify_degree_twisting(p.algebra, twist, p.retraction);

    std::optional<int> target = opts.target_n;
    if (!target && doc.run) target = doc.run->target_n;
    const int target_n = target.value_or(default_probe_limit);

    if (!tw.all_passed()) {
        if (opts.format == OutputFormat::machine)
            return {exit_precondition, render(json{{"command", "formality"},
                                                   {"status", "rejected-twisting"},
                                                   {"K", p.K},
                                                   {"checks", checks_json(tw)},
                                                   {"exit_code", exit_precondition}})};
        return {exit_precondition, "twisting rejected (truncation K = " + std::to_string(p.K) + ")\n" + checks_text(tw)};
    }

    AInfMorphism s1 = induce_s1(p.transferred.pi, *sigma, p.transferred.iota);
    FormalityCertificate cert = run_formality(p.transferred.structure, s1, twist, target_n);
    const int code = cert.flag == FormalityFlag::n_formal_up_to_K ? exit_partial : exit_ok;

    if (opts.format == OutputFormat::machine) {
        const GradedModule& H = *cert.final_structure->module();
        json out{{"command", "formality"},
                 {"status", to_string(cert.flag)},
                 {"ring", cert.ring.name()},
                 {"alpha", cert.alpha.to_string()},
                 {"c", cert.c},
                 {"K", cert.K},
                 {"target_n", cert.target_n},
                 {"achieved_n", cert.achieved_n},
                 {"scope_n", cert.scope_n},
                 {"vanishing_through", cert.vanishing_through}};
        out["obstruction"] = cert.obstruction ? json{{"k", cert.obstruction->k},
                                                    {"denominator", cert.obstruction->denominator.to_string()}}
                                              : json(nullptr);
        out["upgrade"] = cert.upgrade.empty() ? json(nullptr) : json(cert.upgrade);
        out["homology"] = basis_json(H);
        out["twisting_checks"] = checks_json(tw);
        out["final_structure"] =
            family_json(H, H, cert.K, [&](int k) { return cert.final_structure->classical(k); });
        out["isomorphism"] = family_json(H, H, cert.K, [&](int k) { return cert.iso->classical(k); });
        out["exit_code"] = code;
        return {code, render(out)};
    }
    std::ostringstream os;
    os << "homology: " << ranks_text(*p.retraction.H) << "\n";
    os << "twisting checks:\n" << checks_text(tw);
    os << certificate_text(cert);
    return {code, os.str()};
}

CommandResult cmd_massey(const InputDocument& doc, const std::string& x, const std::string& y, const std::string& z,
                         const RunOptions& opts) {
    Pipeline p = prepare(doc, opts, 3);
    const GradedModule& H = *p.retraction.H;
    const Ring& ring = H.ring();
    const int ix = resolve_class(H, x), iy = resolve_class(H, y), iz = resolve_class(H, z);
    const MasseyResult m =
        massey_triple(*p.transferred.structure, unit_vector(ring, ix), unit_vector(ring, iy), unit_vector(ring, iz));
    const bool obstructs = m.defined && !m.value.empty();
    const std::string label = "<" + H.element(ix).name + ", " + H.element(iy).name + ", " + H.element(iz).name + ">";
    if (opts.format == OutputFormat::machine) {
        json ind = json::array();
        for (const auto& v : m.indeterminacy) ind.push_back(terms_json(v, H));
        json out{{"command", "massey"},   {"K", 3},
                 {"inputs", {H.element(ix).name, H.element(iy).name, H.element(iz).name}},
                 {"value", terms_json(m.value, H)},
                 {"indeterminacy", ind},  {"defined", m.defined},
                 {"not_2_formal", obstructs}, {"exit_code", exit_ok}};
        return {exit_ok, render(out)};
    }
    std::ostringstream os;
    const auto names = H.names();
    os << "Massey product over " << ring.name() << " (transferred mu_3, classical signs, truncation K = 3)\n";
    os << label << " = " << (m.value.empty() ? "0" : format_vector(m.value, names)) << "\n";
    if (m.indeterminacy.empty()) {
        os << "indeterminacy: zero\n";
    } else {
        os << "indeterminacy spanned by:";
        for (const auto& v : m.indeterminacy) os << " " << format_vector(v, names) << ";";
        os << "\n";
    }
    if (obstructs) os << "advisory: nonzero product with zero indeterminacy, the algebra is not 2-formal\n";
    return {exit_ok, os.str()};
}

CommandResult cmd_verify(const InputDocument& doc, const RunOptions& opts) {
    DgAlgebra A = to_dga(doc, opts.ring);
    Report rep;
    const Report dga = verify_dga(A);
    for (const auto& c : dga.checks) rep.add(c.name, c.passed, c.detail);
    std::optional<Retraction> r;
    if (dga.find("d∘d = 0")->passed) {
        try {
            r.emplace(homology_with_retraction(A.complex()));
            for (const auto& c : verify_retraction(*r).checks) rep.add("retraction: " + c.name, c.passed, c.detail);
        } catch (const NonFreeHomology& e) {
            rep.add("homology is free", false, e.what());
        }
    }
    if (auto sigma = endomorphism_map(doc, A.module())) {
        const Matrix& d = A.d().matrix();
        rep.add("endomorphism commutes with d", sigma->matrix() * d == d * sigma->matrix());
        std::string bad;
        const GradedModule& M = *A.module();
        for (int a = 0; a < M.dim() && bad.empty(); ++a)
            for (int b = 0; b < M.dim() && bad.empty(); ++b)
                if (sigma->apply(A.multiply(a, b)) != A.multiply(sigma->image(a), sigma->image(b)))
                    bad = M.element(a).name + ", " + M.element(b).name;
        rep.add("endomorphism is multiplicative", bad.empty(), bad.empty() ? "" : "fails on (" + bad + ")");
        if (auto alpha = twist_alpha(doc, A.ring()); alpha && r) {
            try {
                const Report tw = verify_degree_twisting(A, TwistData{*alpha, doc.twist->c, *sigma}, *r);
                if (const Check* c = tw.find("acts by alpha^{n/c} on homology"))
                    rep.add("endomorphism acts by alpha^{n/c} on homology", c->passed, c->detail);
            } catch (const DegreeNotDivisible& e) {
                rep.add("homology degrees divisible by c", false, e.what());
            }
        }
    }
    const int code = rep.all_passed() ? exit_ok : exit_precondition;
    if (opts.format == OutputFormat::machine)
        return {code, render(json{{"command", "verify"}, {"checks", checks_json(rep)}, {"exit_code", code}})};
    return {code, std::string(rep.all_passed() ? "all checks pass\n" : "some checks fail\n") + checks_text(rep)};
}

CommandResult cmd_export_fixture(const std::string& name) {
    try {
        return {exit_ok, serialize_document(document_from_fixture(name))};
    } catch (const UnknownFixture& e) {
        std::string known;
        for (const auto& n : fixture_names()) known += " " + n;
        return {exit_input, std::string("error: ") + e.what() + " (known:" + known + ")\n"};
    }
}

CommandResult run_guarded(const std::string& text, const std::function<CommandResult(const InputDocument&)>& body,
                          OutputFormat format) {
    auto error = [&](int code, const std::string& kind, const std::string& msg) {
        if (format == OutputFormat::machine)
            return CommandResult{code, render(json{{"status", "error"}, {"kind", kind}, {"message", msg},
                                                   {"exit_code", code}})};
        return CommandResult{code, kind + ": " + msg + "\n"};
    };
    try {
        return body(parse_document(text));
    } catch (const ParseError& e) {
        return error(exit_input, "parse error", e.what());
    } catch (const ValidationError& e) {
        return error(exit_input, "invalid document", e.what());
    } catch (const UsageError& e) {
        return error(exit_input, "usage", e.what());
    } catch (const NotAComplex& e) {
        return error(exit_precondition, "not a complex", e.what());
    } catch (const NonFreeHomology& e) {
        return error(exit_precondition, "torsion in homology", e.what());
    } catch (const ProductsNonzero& e) {
        return error(exit_precondition, "Massey product undefined", e.what());
    } catch (const DegreeNotDivisible& e) {
        return error(exit_precondition, "twisting rejected", e.what());
    } catch (const PreconditionViolated& e) {
        return error(exit_precondition, "precondition", e.what());
    } catch (const NonInvertibleLinearPart& e) {
        return error(exit_precondition, "precondition", e.what());
    } catch (const InvariantViolation& e) {
        return error(1, "internal error", e.what());
    } catch (const ShapeMismatch& e) {
        return error(exit_input, "invalid document", e.what());
    } catch (const std::invalid_argument& e) {
        return error(exit_input, "usage", e.what());
    } catch (const std::exception& e) {
        return error(1, "internal error", e.what());
    }
}

}  // namespace ainf
