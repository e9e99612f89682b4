#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ainf/ainfinity.hpp"
#include "ainf/dga.hpp"
#include "ainf/errors.hpp"
#include "ainf/graded.hpp"
#include "ainf/report.hpp"

namespace ainf {

struct TwistData {
    Scalar alpha;
    int c = 1;
    GradedMap sigma_hat;  // degree 0 endomorphism of the algebra
};

// diag(alpha^{n/c}) on degree n. Throws DegreeNotDivisible if some occupied degree is not divisible by c.
GradedMap degree_twisting(const ModulePtr& module, const Scalar& alpha, int c);

// Checks sigma_hat∘d = d∘sigma_hat, multiplicativity on the product table and that p∘sigma_hat∘i
// is multiplication by alpha^{n/c} on H_n. Throws DegreeNotDivisible when H_n != 0 with c not dividing n.
Report verify_degree_twisting(const DgAlgebra& A, const TwistData& t, const Retraction& r);

// s^[1] = pi ∘ sigma_hat ∘ iota, an automorphism of the transferred structure.
AInfMorphism induce_s1(const AInfMorphism& pi, const GradedMap& sigma_hat, const AInfMorphism& iota);

struct NonUnitDenominator : Error {
    NonUnitDenominator(int k_, Scalar value_)
        : Error("alpha^" + std::to_string(k_) + " - 1 = " + value_.to_string() + " is not a unit"),
          k(k_), value(std::move(value_)) {}
    int k;
    Scalar value;
};

struct KeyLemmaStep {
    AInfMorphism f;        // m -> m', components (id, 0, ..., 0, f_{n+1}, 0, ...)
    StructurePtr m_prime;  // F M F^{-1}
    AInfMorphism s_prime;  // F S F^{-1}
};

// One step of the induction at index n (arity n + 1 of s is removed, arity n + 2 of m vanishes).
KeyLemmaStep key_lemma_step(const StructurePtr& m, const AInfMorphism& s, int n, const TwistData& t);

struct Obstruction {
    int k;
    Scalar denominator;  // alpha^k - 1
};

enum class FormalityFlag { n_formal_up_to_K, formal_up_to_K, formal };
std::string to_string(FormalityFlag f);

struct FormalityCertificate {
    Ring ring = Ring::rationals();
    Scalar alpha;
    int c = 1;
    int K = 2;
    int target_n = 0;
    int achieved_n = 0;          // in units of the twist exponent k
    int scope_n = 0;             // c * achieved_n
    int vanishing_through = 2;   // higher components vanish in arities 3..vanishing_through
    StructurePtr initial;
    StructurePtr final_structure;
    std::vector<AInfMorphism> steps;
    std::optional<AInfMorphism> iso;  // always set by run_formality
    std::optional<Obstruction> obstruction;
    FormalityFlag flag = FormalityFlag::n_formal_up_to_K;
    std::string upgrade;  // predicate that upgraded the flag, if any
};

FormalityCertificate run_formality(const StructurePtr& m1, const AInfMorphism& s1, const TwistData& t,
                                   int target_n = default_probe_limit);

// Composite of consecutive steps, starting at `start` (identity for an empty list).
AInfMorphism compose_tower(const StructurePtr& start, const std::vector<AInfMorphism>& steps);

bool n_formal_implies_formal_chains(const std::set<int>& support, int n);
bool n_formal_implies_formal_cochains(const std::set<int>& support, int n, int j, int q);

struct MasseyResult {
    SparseVec value;                    // classical mu_3(x, y, z)
    std::vector<SparseVec> indeterminacy;  // basis of mu_2(x, H) + mu_2(H, z)
    bool defined = false;                  // indeterminacy is zero
};

// Throws ProductsNonzero when mu_2(x, y) or mu_2(y, z) is nonzero.
MasseyResult massey_triple(const AInfStructure& mt, const SparseVec& x, const SparseVec& y, const SparseVec& z);

// Smallest K such that no structure or morphism component of arity > K can be nonzero on a
// module with this degree support. nullopt when no bound up to the probe limit is forced.
std::optional<int> degree_forced_arity(const std::set<int>& support, int probe_limit = default_probe_limit);

std::string certificate_text(const FormalityCertificate& cert);
// One line "name_k(a, b, ...) = v" per nonzero entry of a family given in classical signs.
std::string format_family(const std::string& name, const GradedModule& source, const GradedModule& target,
                          const Family& classical);

}  // namespace ainf
