#pragma once

#include "ainf/ainfinity.hpp"
#include "ainf/graded.hpp"
#include "ainf/multilinear.hpp"

namespace ainf {

// A strict dg-algebra: differential of degree -1 and an (ordinary, unsigned) product table.
// Axioms are not checked here; see verify_dga in the oracle module.
class DgAlgebra {
public:
    // product: arity 2 table, degree-additive. Throws ShapeMismatch on degree violations.
    DgAlgebra(ModulePtr module, GradedMap d, MultilinearMap product);

    const ModulePtr& module() const { return module_; }
    const Ring& ring() const { return module_->ring(); }
    const GradedMap& d() const { return d_; }
    const MultilinearMap& product() const { return product_; }
    SparseVec multiply(int a, int b) const;
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

    // Throws NotAComplex when d∘d != 0.
    ChainComplex complex() const { return ChainComplex(module_, d_); }
    // b_1 = d, b_2(a, b) = (-1)^{|a|} ab, higher components zero.
    AInfStructure as_ainfinity(int K) const;

private:
    ModulePtr module_;
    GradedMap d_;
    MultilinearMap product_;
};

}  // namespace ainf
