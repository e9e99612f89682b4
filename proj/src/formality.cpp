#include "ainf/formality.hpp"

#include <sstream>

namespace ainf {

GradedMap degree_twisting(const ModulePtr& module, const Scalar& alpha, int c) {
    if (c < 1) throw std::invalid_argument("c must be positive");
    if (!alpha.is_unit()) throw NonUnit("alpha = " + alpha.to_string() + " is not a unit");
    Matrix m(module->ring(), module->dim(), module->dim());
    for (int i = 0; i < module->dim(); ++i) {
        const int n = module->degree(i);
        if (n % c != 0)
            throw DegreeNotDivisible("degree " + std::to_string(n) + " of " + module->element(i).name +
                                     " is not divisible by c = " + std::to_string(c));
        m.at(i, i) = alpha.pow(n / c);
    }
    return GradedMap(module, module, 0, std::move(m));
}

Report verify_degree_twisting(const DgAlgebra& A, const TwistData& t, const Retraction& r) {
    for (int n : r.H->degrees())
        if (n % t.c != 0)
            throw DegreeNotDivisible("homology occupies degree " + std::to_string(n) + ", not divisible by c = " +
                                     std::to_string(t.c));
    Report rep;
    const GradedMap& s = t.sigma_hat;
    if (s.degree() != 0 || !same_module(s.source(), A.module()) || !same_module(s.target(), A.module())) {
        rep.add("shape", false, "the endomorphism is not a degree 0 map of the algebra");
        return rep;
    }
    rep.add("commutes with d", compose_map(s, A.d()) == compose_map(A.d(), s));

    std::string bad;
    const int D = A.module()->dim();
    for (int a = 0; a < D && bad.empty(); ++a)
        for (int b = 0; b < D && bad.empty(); ++b) {
            SparseVec lhs = s.apply(A.multiply(a, b));
            SparseVec rhs = A.multiply(s.image(a), s.image(b));
            if (lhs != rhs) bad = A.module()->element(a).name + "*" + A.module()->element(b).name;
        }
    rep.add("multiplicative", bad.empty(), bad.empty() ? "" : "fails on " + bad);

    const GradedMap induced = compose_map(r.p, compose_map(s, r.i));
    std::string wrong;
    for (int j = 0; j < r.H->dim() && wrong.empty(); ++j) {
        const int n = r.H->degree(j);
        SparseVec expected = {Term{j, t.alpha.pow(n / t.c)}};
        if (induced.image(j) != expected) wrong = r.H->element(j).name;
    }
    rep.add("acts by alpha^{n/c} on homology", wrong.empty(), wrong.empty() ? "" : "fails on " + wrong);
    return rep;
}

AInfMorphism induce_s1(const AInfMorphism& pi, const GradedMap& sigma_hat, const AInfMorphism& iota) {
    const StructurePtr& A = iota.target();
    return compose(pi, compose(strict_from_linear(sigma_hat, A, A), iota));
}

namespace {

void require_twisting_linear_part(const AInfMorphism& s, const TwistData& t) {
    const GradedMap expected = degree_twisting(s.source()->module(), t.alpha, t.c);
    if (!(s.component(1) == linear_table(expected)))
        throw PreconditionViolated("linear part of s is not the degree twisting diag(alpha^{n/c})");
}

std::string vanishing_failure(const AInfStructure& m, int lo, int hi) {
    for (int k = lo; k <= std::min(hi, m.K()); ++k)
        if (!m.bar(k).empty()) return "component " + std::to_string(k) + " of m is nonzero";
    return {};
}

}  // namespace

KeyLemmaStep key_lemma_step(const StructurePtr& m, const AInfMorphism& s, int n, const TwistData& t) {
    const int K = m->K();
    const GradedModule& mod = *m->module();
    if (n < 1 || n + 1 > K) throw PreconditionViolated("key lemma index n must satisfy 1 <= n <= K - 1");
    if (!same_structure(s.source(), m) || !same_structure(s.target(), m))
        throw PreconditionViolated("s is not an endomorphism of m");
    if (!m->bar(1).empty()) throw PreconditionViolated("component 1 of m (the differential) is nonzero");
    if (auto why = vanishing_failure(*m, 3, n + 1); !why.empty()) throw PreconditionViolated(why);
    require_twisting_linear_part(s, t);
    for (int k = 2; k <= n; ++k)
        if (!s.component(k).empty())
            throw PreconditionViolated("component " + std::to_string(k) + " of s is nonzero");

    if (n % t.c == 0) {
        const Scalar den = t.alpha.pow(n / t.c) - Scalar::one(t.alpha.ring());
        if (!den.is_unit()) throw NonUnitDenominator(n / t.c, den);
    }

    Family f = empty_family(K, mod.dim());
    f[1] = linear_table(GradedMap::identity(m->module()));
    for (const auto& [code, vec] : s.component(n + 1).table()) {
        auto w = f[n + 1].decode(code);
        int N = 0;
        for (int x : w) N += mod.degree(x);
        if (N % t.c != 0 || (N + n) % t.c != 0)
            throw InvariantViolation("component " + std::to_string(n + 1) + " of s leaves the c-divisible grading");
        const Scalar den = t.alpha.pow((N + n) / t.c) - t.alpha.pow(N / t.c);
        f[n + 1].set(code, scaled(vec, den.inverse()));
    }

    StructurePtr mp = share(conjugate_structure(f, *m));
    AInfMorphism sp = conjugate_morphism(f, s, mp);

    if (!mp->bar(1).empty() || !(mp->bar(2) == m->bar(2)))
        throw InvariantViolation("key lemma step changed the components of arity 1 or 2");
    if (auto why = vanishing_failure(*mp, 3, n + 2); !why.empty())
        throw InvariantViolation("after step " + std::to_string(n) + ": " + why);
    if (!(sp.component(1) == s.component(1))) throw InvariantViolation("key lemma step changed the linear part of s");
    for (int k = 2; k <= std::min(n + 1, K); ++k)
        if (!sp.component(k).empty())
            throw InvariantViolation("after step " + std::to_string(n) + ": component " + std::to_string(k) +
                                     " of s' is nonzero");
    return KeyLemmaStep{AInfMorphism(m, mp, std::move(f)), mp, std::move(sp)};
}

std::string to_string(FormalityFlag f) {
    switch (f) {
        case FormalityFlag::n_formal_up_to_K: return "n-formal-up-to-K";
        case FormalityFlag::formal_up_to_K: return "formal-up-to-K";
        case FormalityFlag::formal: return "formal";
    }
    return "?";
}

AInfMorphism compose_tower(const StructurePtr& start, const std::vector<AInfMorphism>& steps) {
    AInfMorphism out = identity_morphism(start);
    for (const auto& step : steps) out = compose(step, out);
    return out;
}

FormalityCertificate run_formality(const StructurePtr& m1, const AInfMorphism& s1, const TwistData& t, int target_n) {
    if (target_n < 0) throw std::invalid_argument("target_n must be nonnegative");
    if (!m1->bar(1).empty()) throw PreconditionViolated("the structure has a nonzero differential");
    if (!same_structure(s1.source(), m1) || !same_structure(s1.target(), m1))
        throw PreconditionViolated("s1 is not an endomorphism of the structure");
    require_twisting_linear_part(s1, t);
    if (int k = first_nonzero_arity(morphism_defect(s1)); k != 0)
        throw PreconditionViolated("s1 is not an infinity-morphism (defect in arity " + std::to_string(k) + ")");

    FormalityCertificate cert;
    cert.ring = m1->ring();
    cert.alpha = t.alpha;
    cert.c = t.c;
    cert.K = m1->K();
    cert.target_n = target_n;
    cert.initial = m1;

    StructurePtr m = m1;
    AInfMorphism s = s1;
    const Scalar one = Scalar::one(t.alpha.ring());
    for (int k = 1; k <= target_n; ++k) {
        const Scalar den = t.alpha.pow(k) - one;
        if (!den.is_unit()) {
            cert.obstruction = Obstruction{k, den};
            break;
        }
        for (int n = t.c * (k - 1) + 1; n <= t.c * k && n <= cert.K - 1; ++n) {
            KeyLemmaStep step = key_lemma_step(m, s, n, t);
            if (int a = first_nonzero_arity(coderivation_square(*step.m_prime)); a != 0)
                throw InvariantViolation("step " + std::to_string(n) + " produced an invalid structure (arity " +
                                         std::to_string(a) + ")");
            if (int a = first_nonzero_arity(morphism_defect(step.s_prime)); a != 0)
                throw InvariantViolation("step " + std::to_string(n) + " produced an invalid s' (arity " +
                                         std::to_string(a) + ")");
            if (int a = first_nonzero_arity(morphism_defect(step.f)); a != 0)
                throw InvariantViolation("step " + std::to_string(n) + " produced an invalid f (arity " +
                                         std::to_string(a) + ")");
            m = step.m_prime;
            s = step.s_prime;
            cert.steps.push_back(std::move(step.f));
        }
        cert.achieved_n = k;
    }
    cert.scope_n = t.c * cert.achieved_n;
    cert.vanishing_through = std::min(cert.scope_n + 2, cert.K);
    cert.final_structure = m;
    cert.iso = compose_tower(m1, cert.steps);
    if (!same_structure(cert.iso->target(), m) || first_nonzero_arity(morphism_defect(*cert.iso)) != 0)
        throw InvariantViolation("composite isomorphism failed re-verification");

    bool all_vanish = true;
    for (int k = 3; k <= cert.K; ++k)
        if (!m->bar(k).empty()) all_vanish = false;
    if (cert.obstruction || !all_vanish)
        cert.flag = FormalityFlag::n_formal_up_to_K;
    else
        cert.flag = FormalityFlag::formal_up_to_K;

    std::set<int> support;
    for (int n : m->module()->degrees()) support.insert(n);
    if (n_formal_implies_formal_chains(support, cert.scope_n)) {
        cert.flag = FormalityFlag::formal;
        cert.upgrade = "chains: homology concentrated in [0, " + std::to_string(cert.scope_n) + "]";
    } else if (!support.empty() && *support.rbegin() <= -1) {
        const int q = -*support.rbegin();
        if (n_formal_implies_formal_cochains(support, cert.scope_n, 1, q)) {
            cert.flag = FormalityFlag::formal;
            cert.upgrade = "cochains: homology concentrated in [" +
                           std::to_string(cert.scope_n - q * cert.scope_n) + ", " + std::to_string(-q) + "]";
        }
    }
    return cert;
}

bool n_formal_implies_formal_chains(const std::set<int>& support, int n) {
    for (int d : support)
        if (d < 0 || d > n) return false;
    return true;
}

bool n_formal_implies_formal_cochains(const std::set<int>& support, int n, int j, int q) {
    if (j < 1 || q < 1) throw std::invalid_argument("cochains predicate needs j >= 1 and q >= 1");
    const int lo = n - q * (n + j - 1);
    for (int d : support)
        if (d < lo || d > -q) return false;
    return true;
}

MasseyResult massey_triple(const AInfStructure& mt, const SparseVec& x, const SparseVec& y, const SparseVec& z) {
    if (mt.K() < 3) throw std::invalid_argument("Massey triple products need K >= 3");
    const GradedModule& H = *mt.module();
    const Ring& ring = mt.ring();
    const MultilinearMap mu2 = mt.classical(2), mu3 = mt.classical(3);
    Accumulator acc(ring, H.dim());
    auto apply = [&](const MultilinearMap& mu, std::vector<const SparseVec*> args) {
        eval_tensor(mu, args.data(), static_cast<int>(args.size()), Scalar::one(ring), acc);
        return acc.take();
    };
    if (!apply(mu2, {&x, &y}).empty()) throw ProductsNonzero("mu_2(x, y) is nonzero");
    if (!apply(mu2, {&y, &z}).empty()) throw ProductsNonzero("mu_2(y, z) is nonzero");

    MasseyResult out;
    out.value = apply(mu3, {&x, &y, &z});
    std::vector<SparseVec> gens;
    for (int e = 0; e < H.dim(); ++e) {
        SparseVec u = unit_vector(ring, e);
        gens.push_back(apply(mu2, {&x, &u}));
        gens.push_back(apply(mu2, {&u, &z}));
    }
    int current = 0;
    for (auto& g : gens) {
        if (g.empty()) continue;
        Matrix m(ring, H.dim(), current + 1);
        for (int c = 0; c < current; ++c)
            for (const auto& t : out.indeterminacy[c]) m.at(t.index, c) = t.coeff;
        for (const auto& t : g) m.at(t.index, current) = t.coeff;
        if (rank(m) == current + 1) {
            out.indeterminacy.push_back(g);
            ++current;
        }
    }
    out.defined = out.indeterminacy.empty();
    return out;
}

std::optional<int> degree_forced_arity(const std::set<int>& support, int probe_limit) {
    if (support.empty()) return 2;
    std::set<int> sums = {0};
    int last = 2;
    for (int k = 1; k <= probe_limit; ++k) {
        std::set<int> next;
        for (int a : sums)
            for (int d : support) next.insert(a + d);
        sums = std::move(next);
        bool possible = false;
        for (int N : sums)
            if (support.count(N + k - 2) || support.count(N + k - 1)) {
                possible = true;
                break;
            }
        if (possible) last = std::max(last, k);
    }
    if (last > probe_limit / 2) return std::nullopt;
    return last;
}

std::string format_family(const std::string& name, const GradedModule& source, const GradedModule& target,
                          const Family& classical) {
    std::ostringstream os;
    const auto tnames = target.names();
    for (std::size_t k = 1; k < classical.size(); ++k)
        for (WordCode code : classical[k].sorted_codes()) {
            auto w = classical[k].decode(code);
            os << "  " << name << "_" << k << "(";
            for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << source.element(w[i]).name;
            os << ") = " << format_vector(*classical[k].find(code), tnames) << "\n";
        }
    return os.str();
}

std::string certificate_text(const FormalityCertificate& cert) {
    std::ostringstream os;
    os << "formality certificate\n";
    os << "ring: " << cert.ring.name() << "\n";
    os << "alpha: " << cert.alpha.to_string() << "\n";
    os << "c: " << cert.c << "\n";
    os << "truncation K: " << cert.K << " (all statements hold up to arity " << cert.K << ")\n";
    os << "target_n: " << cert.target_n << "\n";
    os << "achieved_n: " << cert.achieved_n << " (" << cert.scope_n << "-formal up to K)\n";
    if (cert.obstruction)
        os << "obstruction: k = " << cert.obstruction->k << ", alpha^" << cert.obstruction->k
           << " - 1 = " << cert.obstruction->denominator.to_string() << " is not a unit\n";
    else
        os << "obstruction: none\n";
    os << "flag: " << to_string(cert.flag);
    if (!cert.upgrade.empty()) os << " (upgraded by " << cert.upgrade << ")";
    os << "\n";
    os << "higher components vanish in arities 3.." << cert.vanishing_through << "\n";
    os << "steps: " << cert.steps.size() << "\n";
    os << "tables use the classical sign convention\n";
    const GradedModule& H = *cert.final_structure->module();
    Family fs(1), iso(1);
    for (int k = 1; k <= cert.K; ++k) {
        fs.push_back(cert.final_structure->classical(k));
        iso.push_back(cert.iso->classical(k));
    }
    os << "final structure:\n" << format_family("mu", H, H, fs);
    os << "isomorphism:\n" << format_family("f", H, H, iso);
    return os.str();
}

}  // namespace ainf
