#include <doctest.h>

#include "ainf/errors.hpp"
#include "ainf/transfer.hpp"
#include "helpers.hpp"

using namespace ainf;
using testing::S;

TEST_SUITE("oracle") {

TEST_CASE("brute-force Stasheff agrees on random structures") {
    int nonzero = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Ring ring = seed % 2 ? Ring::prime_field(5) : Ring::rationals();
        const int dim = 1 + static_cast<int>(seed % 4);
        const int K = 2 + static_cast<int>(seed % 4);
        const AInfStructure m = random_structure(ring, dim, K, -1, 1, seed, 0.4);
        const Family a = coderivation_square(m);
        CHECK(a == brute_force_stasheff(m));
        nonzero += !is_zero(a);
    }
    CHECK(nonzero > 50);
}

TEST_CASE("brute-force morphism defect agrees on random morphisms") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Ring ring = seed % 2 ? Ring::prime_field(7) : Ring::rationals();
        StructurePtr a = share(random_structure(ring, 3, 4, -1, 1, seed, 0.4));
        // same seed, so the same degrees; the density changes the tables
        StructurePtr b =
            share(AInfStructure(a->module(), 4, random_structure(ring, 3, 4, -1, 1, seed, 0.7).bar_family()));
        const AInfMorphism f(a, b, random_family(a->module(), 4, seed, false, 1, 0.5));
        CHECK(morphism_defect(f) == brute_force_morphism_defect(f));
    }
}

TEST_CASE("a sign-flipped mu_3 is caught by both paths") {
    const Fixture f = fixture("massey5");
    const Retraction r = homology_with_retraction(f.algebra.complex());
    const Transferred t = transfer_all(share(f.algebra.as_ainfinity(5)), r);
    Family bar = t.structure->bar_family();
    MultilinearMap flipped(3, r.H->dim());
    for (const auto& [code, v] : bar[3].table()) flipped.set(code, scaled(v, -Scalar::one(r.H->ring())));
    bar[3] = flipped;
    // the flipped mu_3 still satisfies the identities on H (no mu_2 reaches its inputs), but iota
    // no longer intertwines it
    const StructurePtr bad = share(AInfStructure(t.structure->module(), 5, bar));
    CHECK(is_zero(coderivation_square(*bad)));
    const AInfMorphism iota(bad, t.iota.target(), t.iota.components());
    const Family a = morphism_defect(iota);
    CHECK_FALSE(is_zero(a));
    CHECK(a == brute_force_morphism_defect(iota));
}

TEST_CASE("random dgas") {
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        for (Ring ring : {Ring::rationals(), Ring::prime_field(5), Ring::local_integers(3)}) {
            const DgAlgebra a = random_dga(6, -2, 2, ring, seed);
            const DgAlgebra b = random_dga(6, -2, 2, ring, seed);
            CHECK(a.product() == b.product());
            CHECK(a.d() == b.d());
            CHECK(a.module()->dim() <= 6);
            const Report rep = verify_dga(a);
            for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, c.name << " " << c.detail << " seed " << seed);
        }
    CHECK(random_dga(0, -2, 2, Ring::rationals(), 1).module()->dim() == 0);
}

TEST_CASE("verify_dga catches broken algebras") {
    const Ring Q = Ring::rationals();
    ModulePtr M = make_module(Q, {{"a", 0}, {"b", 0}});
    MultilinearMap prod(2, 2);
    prod.set(std::vector<int>{0, 0}, unit_vector(Q, 1));
    prod.set(std::vector<int>{0, 1}, unit_vector(Q, 0));
    const DgAlgebra A(M, GradedMap::zero(M, M, -1), prod);
    // (aa)a = ba = 0, a(aa) = ab = a
    CHECK_FALSE(verify_dga(A).find("associative")->passed);
}

TEST_CASE("conjugated formal instances") {
    const Ring Q = Ring::rationals();
    const DgAlgebra H = fixture("truncpoly").algebra;
    const FormalInstance inst = conjugated_formal_instance(H, S(Q, "2"), 2, 5, 6, 1, 1.0);
    CHECK(is_zero(coderivation_square(*inst.m)));
    CHECK(is_zero(morphism_defect(inst.s)));
    CHECK(inst.m->bar(3).empty());  // odd arity vanishes in even degrees
    CHECK_FALSE(inst.m->bar(4).empty());
    // trivial conjugator
    const FormalInstance triv = conjugated_formal_instance(H, S(Q, "2"), 2, 5, 6, 6, 1.0);
    CHECK(*triv.m == *triv.formal);
    CHECK(triv.s.components() == triv.s0.components());

    const FormalityCertificate cert =
        run_formality(inst.m, inst.s, TwistData{S(Q, "2"), 2, degree_twisting(H.module(), S(Q, "2"), 2)});
    for (int k = 3; k <= 6; ++k) CHECK(cert.final_structure->bar(k).empty());
}

TEST_CASE("fixtures") {
    CHECK(fixture_names() == std::vector<std::string>{"acyclic2", "truncpoly", "massey5", "cpn_fp"});
    for (const auto& name : fixture_names()) {
        const Fixture f = fixture(name);
        CHECK(verify_dga(f.algebra).all_passed());
        if (!f.expected.homology_ranks.empty()) CHECK(homology_ranks(f.algebra.complex()) == f.expected.homology_ranks);
    }
    CHECK(fixture("cpn_fp").algebra.ring() == Ring::prime_field(5));
    CHECK(fixture("cpn_fp").expected.achieved_n == 3);
    CHECK_THROWS_AS(fixture("nope"), UnknownFixture);
}

}
