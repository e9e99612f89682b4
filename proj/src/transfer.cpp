#include "ainf/transfer.hpp"

#include "ainf/errors.hpp"

namespace ainf {

std::string PlanarBinaryTree::to_string() const {
    if (is_leaf()) return "|";
    return "(" + left->to_string() + " " + right->to_string() + ")";
}

std::vector<TreePtr> planar_trees(int k) {
    if (k < 1) throw std::invalid_argument("planar_trees needs k >= 1");
    static std::vector<std::vector<TreePtr>> memo;
    if (memo.empty()) memo.push_back({});
    while (static_cast<int>(memo.size()) <= k) {
        const int n = static_cast<int>(memo.size());
        std::vector<TreePtr> trees;
        if (n == 1) {
            trees.push_back(std::make_shared<const PlanarBinaryTree>());
        } else {
            for (int a = 1; a < n; ++a)
                for (const auto& l : memo[a])
                    for (const auto& r : memo[n - a]) {
                        auto t = std::make_shared<PlanarBinaryTree>();
                        t->left = l;
                        t->right = r;
                        t->leaves = n;
                        t->internal_edges = l->internal_edges + r->internal_edges + !l->is_leaf() + !r->is_leaf();
                        trees.push_back(std::move(t));
                    }
        }
        memo.push_back(std::move(trees));
    }
    return memo[k];
}

namespace {

SparseVec tree_value(const PlanarBinaryTree& t, const AInfStructure& A, const Retraction& r, const int* word) {
    if (t.is_leaf()) return r.i.image(word[0]);
    auto child = [&](const PlanarBinaryTree& c, const int* w) {
        SparseVec v = tree_value(c, A, r, w);
        return c.is_leaf() ? v : scaled(r.h.apply(v), -Scalar::one(A.ring()));
    };
    SparseVec lv = child(*t.left, word);
    SparseVec rv = child(*t.right, word + t.left->leaves);
    Accumulator acc(A.ring(), A.module()->dim());
    const SparseVec* f[2] = {&lv, &rv};
    eval_tensor(A.bar(2), f, 2, Scalar::one(A.ring()), acc);
    return acc.take();
}

void check_inputs(const StructurePtr& A, const Retraction& r) {
    if (!same_module(A->module(), r.A.module())) throw PreconditionViolated("retraction is for a different module");
    for (int k = 3; k <= A->K(); ++k)
        if (!A->bar(k).empty())
            throw PreconditionViolated("transfer needs a strict dg-algebra; component " + std::to_string(k) + " is nonzero");
    for (int j = 0; j < A->module()->dim(); ++j) {
        const int w[1] = {j};
        const SparseVec* v = A->bar(1).find(w);
        if ((v ? *v : SparseVec{}) != r.A.d().image(j))
            throw PreconditionViolated("differential of the structure differs from the retraction's complex");
    }
}

}  // namespace

SparseVec evaluate_tree(const PlanarBinaryTree& tree, const AInfStructure& A, const Retraction& r, const int* word,
                        bool as_inclusion) {
    SparseVec v = tree_value(tree, A, r, word);
    if (as_inclusion) return tree.is_leaf() ? v : scaled(r.h.apply(v), -Scalar::one(A.ring()));
    return r.p.apply(v);
}

Transferred transfer_all(const StructurePtr& A, const Retraction& r) {
    check_inputs(A, r);
    const GradedModule& Am = *A->module();
    const GradedModule& Hm = *r.H;
    const Ring& ring = Am.ring();
    const int K = A->K();
    const Scalar one = Scalar::one(ring), minus_one = -one;
    const MultilinearMap& b2 = A->bar(2);

    Family iota = empty_family(K, Hm.dim());
    Family bt = empty_family(K, Hm.dim());
    iota[1] = linear_table(r.i);

    // lambda_a = sum_j b_2(iota_j ⊗ iota_{a-j}); iota_a = -h lambda_a; bt_a = p lambda_a.
    Accumulator acc(ring, Am.dim());
    for (int a = 2; a <= K; ++a) {
        for_each_word(Hm, a, [&](const int* w, int N) {
            if (!Am.has_degree(N + a - 2)) return;
            for (int j = 1; j < a; ++j) {
                const SparseVec* l = iota[j].find(w);
                const SparseVec* rr = l ? iota[a - j].find(w + j) : nullptr;
                if (!rr) continue;
                const SparseVec* f[2] = {l, rr};
                eval_tensor(b2, f, 2, one, acc);
            }
            SparseVec lambda = acc.take();
            if (lambda.empty()) return;
            const WordCode code = iota[a].encode(w);
            iota[a].set(code, scaled(r.h.apply(lambda), minus_one));
            bt[a].set(code, r.p.apply(lambda));
        });
    }

    // pi_k(u) = -pi_{k-1}(B_2 𝐇 u), where 𝐇 = sum ± 1^{⊗j} ⊗ h ⊗ (ip)^{⊗rest}.
    Family pi = empty_family(K, Am.dim());
    pi[1] = linear_table(r.p);
    const GradedMap ip = compose_map(r.i, r.p);
    std::vector<SparseVec> units, ipv, hv;
    for (int j = 0; j < Am.dim(); ++j) {
        units.push_back(unit_vector(ring, j));
        ipv.push_back(ip.image(j));
        hv.push_back(r.h.image(j));
    }
    Accumulator out(ring, Hm.dim());
    for (int k = 2; k <= K; ++k) {
        if (pi[k - 1].empty()) continue;
        std::vector<const SparseVec*> F(k), G(k - 1);
        std::vector<int> dF(k);
        for_each_word(Am, k, [&](const int* u, int N) {
            if (!Hm.has_degree(N + k - 1)) return;
            int parity_h = 0;
            for (int i = 0; i < k; ++i) {
                if (i > 0) parity_h ^= (Am.degree(u[i - 1]) + 1) & 1;
                if (hv[u[i]].empty()) continue;
                bool dead = false;
                for (int m = 0; m < k; ++m) {
                    F[m] = m < i ? &units[u[m]] : m == i ? &hv[u[m]] : &ipv[u[m]];
                    dF[m] = Am.degree(u[m]) + (m == i);
                    if (F[m]->empty()) dead = true;
                }
                if (dead) continue;
                int parity_b = 0;
                for (int j = 0; j + 1 < k; ++j) {
                    if (j > 0) parity_b ^= (dF[j - 1] + 1) & 1;
                    const SparseVec* pair[2] = {F[j], F[j + 1]};
                    eval_tensor(b2, pair, 2, one, acc);
                    SparseVec merged = acc.take();
                    if (merged.empty()) continue;
                    for (int m = 0, g = 0; m < k; ++m) {
                        if (m == j) {
                            G[g++] = &merged;
                            ++m;
                        } else {
                            G[g++] = F[m];
                        }
                    }
                    eval_tensor(pi[k - 1], G.data(), k - 1, (parity_h ^ parity_b) ? one : minus_one, out);
                }
            }
            SparseVec v = out.take();
            if (!v.empty()) pi[k].set(pi[k].encode(u), std::move(v));
        });
    }

    Transferred t{A, nullptr, identity_morphism(A), identity_morphism(A)};
    t.structure = share(AInfStructure(r.H, K, std::move(bt)));
    t.iota = AInfMorphism(t.structure, A, std::move(iota));
    t.pi = AInfMorphism(A, t.structure, std::move(pi));
    return t;
}

AInfStructure transfer_structure(const StructurePtr& A, const Retraction& r) { return *transfer_all(A, r).structure; }
AInfMorphism transfer_inclusion(const StructurePtr& A, const Retraction& r) { return transfer_all(A, r).iota; }
AInfMorphism transfer_projection(const StructurePtr& A, const Retraction& r) { return transfer_all(A, r).pi; }

}  // namespace ainf
