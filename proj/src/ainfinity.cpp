#include "ainf/ainfinity.hpp"

#include "ainf/errors.hpp"

namespace ainf {

namespace {

void check_family_degrees(const GradedModule& source, const GradedModule& target, int K, const Family& fam,
                          int offset, const char* what) {
    if (static_cast<int>(fam.size()) != K + 1)
        throw ShapeMismatch(std::string(what) + ": expected components for arities 1.." + std::to_string(K));
    for (int k = 1; k <= K; ++k) {
        const auto& m = fam[k];
        if (m.arity() != k || m.source_dim() != source.dim())
            throw ShapeMismatch(std::string(what) + ": component " + std::to_string(k) + " has the wrong shape");
        for (const auto& [code, vec] : m.table()) {
            auto w = m.decode(code);
            int N = 0;
            for (int x : w) N += source.degree(x);
            for (const auto& t : vec)
                if (t.index < 0 || t.index >= target.dim() || target.degree(t.index) != N + k + offset)
                    throw ShapeMismatch(std::string(what) + ": arity " + std::to_string(k) +
                                        " component is not homogeneous of degree " + std::to_string(k + offset));
        }
    }
}

MultilinearMap to_classical(const GradedModule& m, const MultilinearMap& bar) {
    MultilinearMap out(bar.arity(), bar.source_dim());
    for (const auto& [code, vec] : bar.table()) {
        auto w = bar.decode(code);
        out.set(code, suspension_sign(m, w.data(), bar.arity()) ? scaled(vec, -Scalar::one(m.ring())) : vec);
    }
    return out;
}

// Per-word context shared by the kernels below.
struct Word {
    const int* w;
    int k;
    std::vector<char> parity;  // parity[i]: parity of sum of shifted degrees of w_0..w_{i-1}

    Word(const GradedModule& mod, const int* word, int len) : w(word), k(len), parity(len + 1, 0) {
        for (int i = 0; i < len; ++i) parity[i + 1] = parity[i] ^ ((mod.degree(word[i]) + 1) & 1);
    }
};

// Values of an inner family on every subword: table[a * (k + 1) + l].
std::vector<const SparseVec*> blocks(const Family& inner, const Word& W, int D) {
    std::vector<const SparseVec*> t(static_cast<std::size_t>(W.k) * (W.k + 1), nullptr);
    const int maxlen = static_cast<int>(inner.size()) - 1;
    for (int a = 0; a < W.k; ++a) {
        WordCode code = 0;
        for (int l = 1; a + l <= W.k && l <= maxlen; ++l) {
            code = code * static_cast<WordCode>(D) + W.w[a + l - 1];
            if (!inner[l].empty()) t[a * (W.k + 1) + l] = inner[l].find(code);
        }
    }
    return t;
}

struct Kernels {
    const Ring ring;
    const Scalar one, minus_one;
    std::vector<SparseVec> units;
    int D;

    explicit Kernels(const GradedModule& mod)
        : ring(mod.ring()), one(Scalar::one(mod.ring())), minus_one(-Scalar::one(mod.ring())), D(mod.dim()) {
        for (int i = 0; i < D; ++i) units.push_back(unit_vector(ring, i));
    }

    // sum (-1)^{sd(w_1..w_r)} outer_{r+1+t}(w_1..w_r, inner_s(...), ...), restricted to inner arity s in [s_lo, s_hi].
    void insertion(const Family& outer, const Family& inner, const Word& W, bool negate, Accumulator& acc,
                   int s_lo = 1, int s_hi = 1 << 20) const {
        const int K_out = static_cast<int>(outer.size()) - 1;
        const int K_in = static_cast<int>(inner.size()) - 1;
        std::vector<const SparseVec*> factors(W.k);
        for (int r = 0; r < W.k; ++r) {
            for (int s = std::max(1, s_lo); s <= std::min(W.k - r, std::min(K_in, s_hi)); ++s) {
                const int t = W.k - r - s;
                const int o = r + 1 + t;
                if (o > K_out || outer[o].empty() || inner[s].empty()) continue;
                const SparseVec* v = inner[s].find(W.w + r);
                if (!v) continue;
                int j = 0;
                for (int i = 0; i < r; ++i) factors[j++] = &units[W.w[i]];
                factors[j++] = v;
                for (int i = r + s; i < W.k; ++i) factors[j++] = &units[W.w[i]];
                eval_tensor(outer[o], factors.data(), o, (W.parity[r] != 0) != negate ? minus_one : one, acc);
            }
        }
    }

    // sum over block decompositions of outer_r(inner(B_1), ..., inner(B_r)), r in [r_lo, r_hi].
    void composite(const Family& outer, const std::vector<const SparseVec*>& tab, const Word& W, bool negate,
                   Accumulator& acc, int r_lo = 1, int r_hi = 1 << 20) const {
        std::vector<const SparseVec*> factors;
        factors.reserve(W.k);
        const int K_out = static_cast<int>(outer.size()) - 1;
        r_hi = std::min(r_hi, K_out);
        composite_rec(outer, tab, W, 0, factors, negate ? minus_one : one, acc, r_lo, r_hi);
    }

    void composite_rec(const Family& outer, const std::vector<const SparseVec*>& tab, const Word& W, int pos,
                       std::vector<const SparseVec*>& factors, const Scalar& c, Accumulator& acc, int r_lo,
                       int r_hi) const {
        const int r = static_cast<int>(factors.size());
        if (pos == W.k) {
            if (r >= r_lo && r <= r_hi && !outer[r].empty()) eval_tensor(outer[r], factors.data(), r, c, acc);
            return;
        }
        if (r + 1 > r_hi) return;
        for (int l = 1; pos + l <= W.k; ++l) {
            const SparseVec* v = tab[pos * (W.k + 1) + l];
            if (!v) continue;
            factors.push_back(v);
            composite_rec(outer, tab, W, pos + l, factors, c, acc, r_lo, r_hi);
            factors.pop_back();
        }
    }

    // sum over decompositions with exactly one block fed to q instead of g:
    // (-1)^{sd(before q-block)} outer_r(g(B_1), .., q(B_j), .., g(B_r)).
    void special(const Family& outer, const std::vector<const SparseVec*>& gtab,
                 const std::vector<const SparseVec*>& qtab, const Word& W, Accumulator& acc) const {
        std::vector<const SparseVec*> factors;
        factors.reserve(W.k);
        special_rec(outer, gtab, qtab, W, 0, false, false, factors, acc);
    }

    void special_rec(const Family& outer, const std::vector<const SparseVec*>& gtab,
                     const std::vector<const SparseVec*>& qtab, const Word& W, int pos, bool used, bool neg,
                     std::vector<const SparseVec*>& factors, Accumulator& acc) const {
        const int r = static_cast<int>(factors.size());
        const int K_out = static_cast<int>(outer.size()) - 1;
        if (pos == W.k) {
            if (used && r <= K_out && !outer[r].empty()) eval_tensor(outer[r], factors.data(), r, neg ? minus_one : one, acc);
            return;
        }
        if (r + 1 > K_out) return;
        for (int l = 1; pos + l <= W.k; ++l) {
            if (const SparseVec* v = gtab[pos * (W.k + 1) + l]) {
                factors.push_back(v);
                special_rec(outer, gtab, qtab, W, pos + l, used, neg, factors, acc);
                factors.pop_back();
            }
            if (!used) {
                if (const SparseVec* v = qtab[pos * (W.k + 1) + l]) {
                    factors.push_back(v);
                    special_rec(outer, gtab, qtab, W, pos + l, true, W.parity[pos] != 0, factors, acc);
                    factors.pop_back();
                }
            }
        }
    }
};

}  // namespace

MultilinearMap linear_table(const GradedMap& phi) {
    MultilinearMap out(1, phi.source()->dim());
    for (int j = 0; j < phi.source()->dim(); ++j) out.set(static_cast<WordCode>(j), phi.image(j));
    return out;
}

GradedMap linear_map(const ModulePtr& source, const ModulePtr& target, int degree, const MultilinearMap& m) {
    Matrix mat(source->ring(), target->dim(), source->dim());
    for (const auto& [code, vec] : m.table())
        for (const auto& t : vec) mat.at(t.index, static_cast<int>(code)) = t.coeff;
    return GradedMap(source, target, degree, std::move(mat));
}

AInfStructure::AInfStructure(ModulePtr module, int K, Family bar)
    : module_(std::move(module)), K_(K), bar_(std::move(bar)) {
    if (K_ < 2) throw std::invalid_argument("truncation arity K must be at least 2");
    check_family_degrees(*module_, *module_, K_, bar_, -2, "A-infinity structure");
}

AInfStructure AInfStructure::from_classical(ModulePtr module, int K, const Family& classical) {
    Family bar;
    bar.emplace_back();
    for (std::size_t k = 1; k < classical.size(); ++k) bar.push_back(to_classical(*module, classical[k]));
    return AInfStructure(std::move(module), K, std::move(bar));
}

MultilinearMap AInfStructure::classical(int k) const { return to_classical(*module_, bar_.at(k)); }

AInfMorphism::AInfMorphism(StructurePtr source, StructurePtr target, Family components)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
    if (source_->K() != target_->K()) throw ShapeMismatch("morphism between structures of different truncation");
    if (!(source_->ring() == target_->ring())) throw RingMismatch("morphism between structures over different rings");
    check_family_degrees(*source_->module(), *target_->module(), source_->K(), f_, -1, "infinity-morphism");
}

MultilinearMap AInfMorphism::classical(int k) const { return to_classical(*source_->module(), f_.at(k)); }

GradedMap AInfMorphism::linear_part() const { return linear_map(source_->module(), target_->module(), 0, f_.at(1)); }

bool same_structure(const StructurePtr& a, const StructurePtr& b) { return a == b || *a == *b; }

Family coderivation_square(const AInfStructure& m) {
    const GradedModule& mod = *m.module();
    Kernels ker(mod);
    Family out(1);
    for (int k = 1; k <= m.K(); ++k)
        out.push_back(tabulate(mod, mod, k, k - 3, [&](const int* w, Accumulator& acc) {
            Word W(mod, w, k);
            ker.insertion(m.bar_family(), m.bar_family(), W, false, acc);
        }));
    return out;
}

Family morphism_defect(const AInfMorphism& f) {
    const GradedModule& S = *f.source()->module();
    const GradedModule& T = *f.target()->module();
    Kernels ker(S);
    Family out(1);
    for (int k = 1; k <= f.K(); ++k)
        out.push_back(tabulate(S, T, k, k - 2, [&](const int* w, Accumulator& acc) {
            Word W(S, w, k);
            ker.insertion(f.components(), f.source()->bar_family(), W, false, acc);
            ker.composite(f.target()->bar_family(), blocks(f.components(), W, S.dim()), W, true, acc);
        }));
    return out;
}

AInfMorphism identity_morphism(const StructurePtr& m) {
    Family f = empty_family(m->K(), m->module()->dim());
    f[1] = linear_table(GradedMap::identity(m->module()));
    return AInfMorphism(m, m, std::move(f));
}

AInfMorphism strict_from_linear(const GradedMap& phi, const StructurePtr& source, const StructurePtr& target) {
    if (phi.degree() != 0) throw ShapeMismatch("strict morphism needs a degree 0 map");
    if (!same_module(phi.source(), source->module()) || !same_module(phi.target(), target->module()))
        throw ShapeMismatch("linear map does not match the structures");
    Family f = empty_family(source->K(), source->module()->dim());
    f[1] = linear_table(phi);
    return AInfMorphism(source, target, std::move(f));
}

Family compose_families(const GradedModule& source, const GradedModule& middle, const GradedModule& target,
                        const Family& g, const Family& f) {
    (void)middle;
    Kernels ker(source);
    const int K = static_cast<int>(f.size()) - 1;
    Family out(1);
    for (int k = 1; k <= K; ++k)
        out.push_back(tabulate(source, target, k, k - 1, [&](const int* w, Accumulator& acc) {
            Word W(source, w, k);
            ker.composite(g, blocks(f, W, source.dim()), W, false, acc);
        }));
    return out;
}

AInfMorphism compose(const AInfMorphism& g, const AInfMorphism& f) {
    if (!same_structure(f.target(), g.source()))
        throw ShapeMismatch("compose: the target of f is not the source of g");
    return AInfMorphism(f.source(), g.target(),
                        compose_families(*f.source()->module(), *f.target()->module(), *g.target()->module(),
                                         g.components(), f.components()));
}

Family invert_family(const GradedModule& source, const GradedModule& target, const Family& f) {
    // f: source -> target; the result maps target -> source.
    const int K = static_cast<int>(f.size()) - 1;
    auto S = std::make_shared<const GradedModule>(source);
    auto T = std::make_shared<const GradedModule>(target);
    const GradedMap g1 = invert_map(linear_map(S, T, 0, f[1]));
    Family g(1);
    g.push_back(linear_table(g1));
    Kernels ker(target);
    Accumulator scratch(source.ring(), target.dim());
    for (int k = 2; k <= K; ++k) {
        g.emplace_back(k, target.dim());
        // f∘g = id gives f_1 g_k = -sum_{r >= 2} f_r(g(B_1), ..., g(B_r)).
        MultilinearMap gk = tabulate(target, source, k, k - 1, [&](const int* w, Accumulator& acc) {
            Word W(target, w, k);
            ker.composite(f, blocks(g, W, target.dim()), W, true, scratch, 2);
            acc.add(g1.apply(scratch.take()), ker.one);
        });
        g[k] = std::move(gk);
    }
    return g;
}

AInfMorphism invert(const AInfMorphism& f) {
    return AInfMorphism(f.target(), f.source(),
                        invert_family(*f.source()->module(), *f.target()->module(), f.components()));
}

AInfStructure conjugate_structure(const Family& f, const AInfStructure& m) {
    const GradedModule& mod = *m.module();
    const int K = m.K();
    if (static_cast<int>(f.size()) != K + 1) throw ShapeMismatch("conjugating family has the wrong truncation");
    const Family g = invert_family(mod, mod, f);
    Kernels ker(mod);

    Family q(1);
    for (int k = 1; k <= K; ++k)
        q.push_back(tabulate(mod, mod, k, k - 2, [&](const int* w, Accumulator& acc) {
            Word W(mod, w, k);
            ker.composite(m.bar_family(), blocks(g, W, mod.dim()), W, false, acc);
        }));

    Family out(1);
    for (int k = 1; k <= K; ++k)
        out.push_back(tabulate(mod, mod, k, k - 2, [&](const int* w, Accumulator& acc) {
            Word W(mod, w, k);
            ker.special(f, blocks(g, W, mod.dim()), blocks(q, W, mod.dim()), W, acc);
        }));
    return AInfStructure(m.module(), K, std::move(out));
}

Family conjugate_structure_fast(const Family& f, const AInfStructure& m, int n) {
    const GradedModule& mod = *m.module();
    const int K = m.K();
    if (n < 1) throw PreconditionViolated("fast conjugation needs n >= 1");
    if (static_cast<int>(f.size()) != K + 1) throw ShapeMismatch("conjugating family has the wrong truncation");
    if (!m.bar(1).empty()) throw PreconditionViolated("fast conjugation needs a zero differential");
    if (!(f[1] == linear_table(GradedMap::identity(m.module()))))
        throw PreconditionViolated("fast conjugation needs f_1 = id");
    for (int k = 2; k <= std::min(n, K); ++k)
        if (!f[k].empty()) throw PreconditionViolated("fast conjugation needs f_" + std::to_string(k) + " = 0");

    Family out(1);
    for (int k = 1; k <= std::min(n + 1, K); ++k) out.push_back(m.bar(k));
    if (n + 2 <= K) {
        // b_{n+2} + b_2 ◁ g_{n+1} + f_{n+1} ◁ b_2, with g_{n+1} = -f_{n+1}.
        Family fn = empty_family(n + 1, mod.dim());
        fn[n + 1] = f[n + 1];
        Kernels ker(mod);
        const int k = n + 2;
        out.push_back(tabulate(mod, mod, k, k - 2, [&](const int* w, Accumulator& acc) {
            if (const SparseVec* v = m.bar(k).find(w)) acc.add(*v, ker.one);
            Word W(mod, w, k);
            auto tab = blocks(fn, W, mod.dim());
            for (int a = 0; a < k; ++a) tab[a * (k + 1) + 1] = &ker.units[w[a]];
            ker.composite(m.bar_family(), tab, W, true, acc, 2, 2);
            ker.insertion(fn, m.bar_family(), W, false, acc, 2, 2);
        }));
    }
    return out;
}

AInfMorphism conjugate_morphism(const Family& f, const AInfMorphism& s, const StructurePtr& m_prime) {
    if (!same_structure(s.source(), s.target())) throw ShapeMismatch("conjugate_morphism needs an endomorphism");
    const GradedModule& mod = *s.source()->module();
    if (!same_module(m_prime->module(), s.source()->module())) throw ShapeMismatch("conjugate_morphism: module mismatch");
    const Family g = invert_family(mod, mod, f);
    Family sg = compose_families(mod, mod, mod, s.components(), g);
    return AInfMorphism(m_prime, m_prime, compose_families(mod, mod, mod, f, sg));
}

}  // namespace ainf
