#include <doctest.h>

#include "ainf/errors.hpp"
#include "helpers.hpp"

using namespace ainf;
using testing::S;

namespace {

Family identity_family(const ModulePtr& M, int K) {
    Family f = empty_family(K, M->dim());
    f[1] = linear_table(GradedMap::identity(M));
    return f;
}

StructurePtr strict_on(const DgAlgebra& H, int K) { return share(H.as_ainfinity(K)); }

}  // namespace

TEST_SUITE("ainfinity") {

TEST_CASE("strict dg-algebras have zero Stasheff defect") {
    for (const auto& name : fixture_names()) {
        const AInfStructure m = fixture(name).algebra.as_ainfinity(5);
        CHECK(is_zero(coderivation_square(m)));
        CHECK(is_zero(brute_force_stasheff(m)));
    }
}

TEST_CASE("a lone mu_3 fails the identities first in arity 5") {
    // x in degree 0, mu_3(x,x,x) = y, mu_3(x,x,y) = z; only mu_3(x,x,mu_3(x,x,x)) survives.
    const Ring Q = Ring::rationals();
    ModulePtr M = make_module(Q, {{"x", 0}, {"y", 1}, {"z", 2}});
    Family cl = empty_family(5, 3);
    cl[3].set(std::vector<int>{0, 0, 0}, unit_vector(Q, 1));
    cl[3].set(std::vector<int>{0, 0, 1}, unit_vector(Q, 2));
    const AInfStructure m = AInfStructure::from_classical(M, 5, cl);
    const Family sq = coderivation_square(m);
    CHECK(first_nonzero_arity(sq) == 5);
    CHECK(sq[5].size() == 1);
    CHECK(sq == brute_force_stasheff(m));
}

TEST_CASE("classical round trip") {
    const AInfStructure m = random_structure(Ring::prime_field(7), 3, 4, -1, 1, 9, 0.5);
    Family cl(1);
    for (int k = 1; k <= 4; ++k) cl.push_back(m.classical(k));
    CHECK(AInfStructure::from_classical(m.module(), 4, cl) == m);
}

TEST_CASE("degree violations are rejected") {
    const Ring Q = Ring::rationals();
    ModulePtr M = make_module(Q, {{"x", 0}, {"y", 0}});
    Family bar = empty_family(3, 2);
    bar[3].set(std::vector<int>{0, 0, 0}, unit_vector(Q, 1));  // must land in degree 1
    CHECK_THROWS_AS(AInfStructure(M, 3, bar), ShapeMismatch);
}

TEST_CASE("morphism defects") {
    const Fixture m5 = fixture("massey5");
    StructurePtr A = strict_on(m5.algebra, 4);
    CHECK(is_zero(morphism_defect(identity_morphism(A))));

    const Fixture tp = fixture("truncpoly");
    StructurePtr T = strict_on(tp.algebra, 4);
    CHECK(is_zero(morphism_defect(strict_from_linear(tp.twist->sigma_hat, T, T))));

    // sigma_alpha does not commute with ds = w
    const GradedMap sigma = degree_twisting(m5.algebra.module(), S(Ring::rationals(), "2"), 1);
    CHECK(first_nonzero_arity(morphism_defect(strict_from_linear(sigma, A, A))) == 1);

    // identity plus f_2(x, y) = s: d f_2(x, y) = w is not matched
    Family f = identity_family(A->module(), 4);
    const ModulePtr& M = A->module();
    f[2].set(std::vector<int>{*M->find("x"), *M->find("y")}, unit_vector(M->ring(), *M->find("s")));
    const AInfMorphism F(A, A, f);
    CHECK(first_nonzero_arity(morphism_defect(F)) == 2);
    CHECK(morphism_defect(F) == brute_force_morphism_defect(F));
}

TEST_CASE("composition and inversion") {
    for (Ring ring : {Ring::rationals(), Ring::prime_field(5)}) {
        int checked = 0;
        for (std::uint64_t seed = 0; checked < 8 && seed < 40; ++seed) {
            const DgAlgebra H = testing::zero_differential_dga(ring, seed, 3);
            if (H.module()->dim() == 0) continue;
            StructurePtr M0 = strict_on(H, 5);
            const Family phi = random_family(H.module(), 5, seed, false, 1, 0.5);
            StructurePtr m1 = share(conjugate_structure(phi, *M0));
            const AInfMorphism F(M0, m1, phi);
            CHECK(is_zero(coderivation_square(*m1)));
            CHECK(is_zero(morphism_defect(F)));

            const AInfMorphism G = invert(F);
            CHECK(compose(G, F).components() == identity_morphism(M0).components());
            CHECK(compose(F, G).components() == identity_morphism(m1).components());
            CHECK(is_zero(morphism_defect(G)));
            CHECK(compose(identity_morphism(m1), F).components() == F.components());

            // back again
            CHECK(conjugate_structure(G.components(), *m1) == *M0);

            // associativity
            const Family psi = random_family(H.module(), 5, seed + 1000, false, 1, 0.5);
            StructurePtr m2 = share(conjugate_structure(psi, *m1));
            const AInfMorphism P(m1, m2, psi);
            const Family chi = random_family(H.module(), 5, seed + 2000, true, 1, 0.5);
            StructurePtr m3 = share(conjugate_structure(chi, *m2));
            const AInfMorphism X(m2, m3, chi);
            CHECK(compose(X, compose(P, F)).components() == compose(compose(X, P), F).components());
            ++checked;
        }
        CHECK(checked == 8);
    }
}

// truncpoly lives in even degrees, where every even-arity component must vanish.
DgAlgebra mixed_parity() {
    for (std::uint64_t seed = 0;; ++seed) {
        DgAlgebra H = testing::zero_differential_dga(Ring::rationals(), seed, 4);
        const Family f = random_family(H.module(), 5, 1, true, 1, 1.0);
        if (!f[2].empty() && !f[4].empty()) return H;
    }
}

TEST_CASE("inverse of identity plus a single higher component") {
    const DgAlgebra H = mixed_parity();
    for (int n = 1; n <= 4; ++n) {
        Family f = random_family(H.module(), 6, 17 + n, true, n, 1.0);
        for (int k = n + 2; k <= 6; ++k) f[k] = MultilinearMap(k, H.module()->dim());
        REQUIRE_FALSE(f[n + 1].empty());
        const Family g = invert_family(*H.module(), *H.module(), f);
        CHECK(g[1] == f[1]);
        for (int k = 2; k <= n; ++k) CHECK(g[k].empty());
        MultilinearMap neg(n + 1, H.module()->dim());
        for (const auto& [code, v] : f[n + 1].table()) neg.set(code, scaled(v, -Scalar::one(H.ring())));
        CHECK(g[n + 1] == neg);
    }
}

TEST_CASE("non-invertible linear part") {
    StructurePtr A = strict_on(fixture("truncpoly").algebra, 3);
    const GradedMap zero = GradedMap::zero(A->module(), A->module(), 0);
    CHECK_THROWS_AS(invert(strict_from_linear(zero, A, A)), NonInvertibleLinearPart);
}

TEST_CASE("strict conjugation by a twisting") {
    const Fixture tp = fixture("truncpoly");
    const GradedMap& sigma = tp.twist->sigma_hat;
    StructurePtr T = strict_on(tp.algebra, 4);
    Family f = empty_family(4, 3);
    f[1] = linear_table(sigma);
    const AInfStructure c = conjugate_structure(f, *T);
    const GradedMap inv = invert_map(sigma);
    // mu'_2(a, b) = sigma(mu_2(sigma^{-1} a, sigma^{-1} b)), computed on the product table
    const ModulePtr& M = T->module();
    const MultilinearMap mu2 = T->classical(2), got = c.classical(2);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            SparseVec ia = inv.image(a), ib = inv.image(b);
            Accumulator acc(M->ring(), 3);
            const SparseVec* args[2] = {&ia, &ib};
            eval_tensor(mu2, args, 2, Scalar::one(M->ring()), acc);
            const SparseVec expected = sigma.apply(acc.take());
            const int w[2] = {a, b};
            const SparseVec* v = got.find(w);
            CHECK((v ? *v : SparseVec{}) == expected);
        }
    for (int k = 3; k <= 4; ++k) CHECK(c.bar(k).empty());
    // a degree twisting is an automorphism of the graded algebra, so nothing changes
    CHECK(c == *T);
}

TEST_CASE("conjugation by the identity") {
    const FormalInstance inst = conjugated_formal_instance(fixture("truncpoly").algebra, S(Ring::rationals(), "2"), 2,
                                                           3, 5, 1, 0.6);
    const Family id = identity_family(inst.m->module(), 5);
    CHECK(conjugate_structure(id, *inst.m) == *inst.m);
    CHECK(conjugate_morphism(id, inst.s, inst.m).components() == inst.s.components());
    const Family fast = conjugate_structure_fast(id, *inst.m, 3);
    for (int k = 1; k <= 5; ++k) CHECK(fast[k] == inst.m->bar(k));
}

TEST_CASE("fast conjugation agrees with the full one") {
    int nontrivial = 0;
    for (Ring ring : {Ring::rationals(), Ring::prime_field(7)})
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const DgAlgebra H = testing::zero_differential_dga(ring, seed, 4);
            const int K = 6;
            const int n = 1 + static_cast<int>(seed % 3);
            const FormalInstance inst =
                conjugated_formal_instance(H, Scalar::from_int(ring, 2), 1, seed, K, n, 0.5);
            const Family f = random_family(H.module(), K, seed + 5, true, n, 0.5);
            const Family fast = conjugate_structure_fast(f, *inst.m, n);
            const AInfStructure full = conjugate_structure(f, *inst.m);
            for (int k = 1; k <= std::min(n + 2, K); ++k) CHECK(fast[k] == full.bar(k));
            if (!full.bar(n + 2).empty()) ++nontrivial;
        }
    CHECK(nontrivial > 10);
}

TEST_CASE("fast conjugation checks its precondition") {
    const DgAlgebra H = mixed_parity();
    StructurePtr T = strict_on(H, 5);
    const Family f = random_family(H.module(), 5, 1, true, 1, 1.0);
    REQUIRE_FALSE(f[2].empty());
    CHECK_THROWS_AS(conjugate_structure_fast(f, *T, 2), PreconditionViolated);
    const Family g = random_family(H.module(), 5, 1, false, 1, 1.0);
    CHECK_THROWS_AS(conjugate_structure_fast(g, *T, 1), PreconditionViolated);
}

TEST_CASE("compose checks that the structures match") {
    StructurePtr A = strict_on(fixture("truncpoly").algebra, 3);
    StructurePtr B = strict_on(fixture("massey5").algebra, 3);
    CHECK_THROWS_AS(compose(identity_morphism(A), identity_morphism(B)), ShapeMismatch);
}

}
