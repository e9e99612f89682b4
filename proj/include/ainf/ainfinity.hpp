#pragma once

// A-infinity structures and infinity-morphisms as truncated component families.
//
// Components are stored in the bar convention: b_k is the arity-k component of a
// square-zero coderivation of the tensor coalgebra on the suspension, and f_k the
// arity-k component of a coalgebra map. On a basis word w of length k the classical
// operations are
//     mu_k(w) = (-1)^{e(w)} b_k(w),   f^cl_k(w) = (-1)^{e(w)} f_k(w),
// with e(w) = sum_i (k - i) |w_i|. mu_k has degree k - 2 and f_k degree k - 1.

#include <memory>
#include <string>

#include "ainf/graded.hpp"
#include "ainf/multilinear.hpp"

namespace ainf {

class AInfStructure {
public:
    // bar[k], 1 <= k <= K. Throws ShapeMismatch on degree violations.
    AInfStructure(ModulePtr module, int K, Family bar);
    static AInfStructure from_classical(ModulePtr module, int K, const Family& classical);

    const ModulePtr& module() const { return module_; }
    const Ring& ring() const { return module_->ring(); }
    int K() const { return K_; }
    const MultilinearMap& bar(int k) const { return bar_.at(k); }
    const Family& bar_family() const { return bar_; }
    MultilinearMap classical(int k) const;

    friend bool operator==(const AInfStructure& a, const AInfStructure& b) {
        return a.K_ == b.K_ && same_module(a.module_, b.module_) && a.bar_ == b.bar_;
    }

private:
    ModulePtr module_;
    int K_;
    Family bar_;
};

using StructurePtr = std::shared_ptr<const AInfStructure>;

inline StructurePtr share(AInfStructure s) { return std::make_shared<const AInfStructure>(std::move(s)); }

class AInfMorphism {
public:
    // components[k], 1 <= k <= K, maps source^{⊗k} -> target.
    AInfMorphism(StructurePtr source, StructurePtr target, Family components);

    const StructurePtr& source() const { return source_; }
    const StructurePtr& target() const { return target_; }
    int K() const { return source_->K(); }
    const MultilinearMap& component(int k) const { return f_.at(k); }
    const Family& components() const { return f_; }
    MultilinearMap classical(int k) const;
    GradedMap linear_part() const;

private:
    StructurePtr source_;
    StructurePtr target_;
    Family f_;
};

// Components of M∘M projected to cogenerators, arities 1..K.
Family coderivation_square(const AInfStructure& m);
// Components of F∘M_source - M_target∘F, arities 1..K.
Family morphism_defect(const AInfMorphism& f);

AInfMorphism identity_morphism(const StructurePtr& m);
AInfMorphism strict_from_linear(const GradedMap& phi, const StructurePtr& source, const StructurePtr& target);

// g∘f. Throws ShapeMismatch unless f.target() and g.source() are the same structure.
AInfMorphism compose(const AInfMorphism& g, const AInfMorphism& f);
AInfMorphism invert(const AInfMorphism& f);

// The family G with F∘G = id (and G∘F = id), for f an endo-family of `module`
// or a family between two modules of equal rank.
Family invert_family(const GradedModule& source, const GradedModule& target, const Family& f);
// Composite of coalgebra-map families: (g∘f)_k.
Family compose_families(const GradedModule& source, const GradedModule& middle, const GradedModule& target,
                        const Family& g, const Family& f);

// The structure with coderivation F∘M∘F^{-1}. f is an endo-family of m's module.
AInfStructure conjugate_structure(const Family& f, const AInfStructure& m);
// Arities 1..min(n+2, K) of the conjugate, assuming f_1 = id and f_k = 0 for 2 <= k <= n
// (throws PreconditionViolated otherwise). Only linear insertions of f_{n+1} enter.
Family conjugate_structure_fast(const Family& f, const AInfStructure& m, int n);
// F∘S∘F^{-1} as an endomorphism of m_prime, where s is an endomorphism of m.
AInfMorphism conjugate_morphism(const Family& f, const AInfMorphism& s, const StructurePtr& m_prime);

// Arity-1 tables <-> linear maps.
MultilinearMap linear_table(const GradedMap& phi);
GradedMap linear_map(const ModulePtr& source, const ModulePtr& target, int degree, const MultilinearMap& m);

bool same_structure(const StructurePtr& a, const StructurePtr& b);

}  // namespace ainf
