#pragma once

// Independent checkers, random generators and the named fixtures.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ainf/ainfinity.hpp"
#include "ainf/dga.hpp"
#include "ainf/formality.hpp"
#include "ainf/graded.hpp"
#include "ainf/report.hpp"

namespace ainf {

// Both expand the classical identities term by term (sum over r + s + t = k with the
// (-1)^{r+st} rule and Koszul signs on elements) and convert the result to the bar
// convention, so they can be compared entry by entry with coderivation_square and
// morphism_defect.
Family brute_force_stasheff(const AInfStructure& m);
Family brute_force_morphism_defect(const AInfMorphism& f);

// Transferred structure and inclusion from the perturbation lemma, on explicit tensors:
// b_k = (-1)^k p (B_2 𝐇)^{k-2} B_2 i^{⊗k},  iota_k = (-1)^{k-1} h (B_2 𝐇)^{k-2} B_2 i^{⊗k}.
struct PerturbationTransfer {
    Family structure;
    Family inclusion;
};
PerturbationTransfer perturbation_transfer(const AInfStructure& A, const Retraction& r);

// d∘d = 0, associativity and the Leibniz rule d(ab) = d(a)b + (-1)^{|a|} a d(b).
Report verify_dga(const DgAlgebra& A);

enum class DgaTemplate { matrix, square_zero };

struct RandomDgaOptions {
    Ring ring = Ring::rationals();
    int max_dim = 6;
    int min_degree = -2;
    int max_degree = 2;
    std::uint64_t seed = 0;
    std::optional<DgaTemplate> shape;  // chosen from the seed when unset
    bool zero_differential = false;
    int degree_step = 1;  // all degrees are multiples of this
};

// Upper-triangular matrix units (products E_ij E_jk = E_ik, differential a commutator with a
// strictly upper-triangular d_V) or a square-zero extension U ⊕ W. Deterministic in the seed.
DgAlgebra random_dga(const RandomDgaOptions& opts);
DgAlgebra random_dga(int max_dim, int min_degree, int max_degree, const Ring& ring, std::uint64_t seed);

// Degree-homogeneous random tables; not a valid structure in general.
AInfStructure random_structure(const Ring& ring, int dim, int K, int min_degree, int max_degree, std::uint64_t seed,
                               double density = 0.3);
// Random endo-family with f_1 an invertible degree 0 map (identity when identity_linear)
// and f_k = 0 for 2 <= k <= zero_through.
Family random_family(const ModulePtr& module, int K, std::uint64_t seed, bool identity_linear, int zero_through = 1,
                     double density = 0.3);
Scalar random_scalar(const Ring& ring, std::mt19937_64& rng, bool nonzero);

struct FormalInstance {
    StructurePtr formal;  // strict structure on H
    AInfMorphism s0;      // strict degree twisting
    Family phi;           // the conjugator
    StructurePtr m;       // Φ M_0 Φ^{-1}
    AInfMorphism s;       // Φ S_0 Φ^{-1}
};

// H must have zero differential and degrees divisible by c. phi_k = 0 for 2 <= k <= zero_through.
FormalInstance conjugated_formal_instance(const DgAlgebra& H, const Scalar& alpha, int c, std::uint64_t seed, int K,
                                          int zero_through = 1, double density = 0.3);

struct FixtureExpectations {
    std::map<int, int> homology_ranks;
    std::optional<int> achieved_n;    // run with the fixture's twist and default target
    std::optional<FormalityFlag> flag;
    int massey_sign = 0;              // massey5: classical mu_3([x],[y],[y]) = massey_sign [r]
};

struct Fixture {
    std::string name;
    DgAlgebra algebra;
    std::optional<TwistData> twist;
    FixtureExpectations expected;
};

std::vector<std::string> fixture_names();
// Throws UnknownFixture.
Fixture fixture(const std::string& name);
// Same fixture with coefficients read in another ring.
Fixture fixture(const std::string& name, const Ring& ring);

}  // namespace ainf
