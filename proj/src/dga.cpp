#include "ainf/dga.hpp"

#include "ainf/errors.hpp"

namespace ainf {

DgAlgebra::DgAlgebra(ModulePtr module, GradedMap d, MultilinearMap product)
    : module_(std::move(module)), d_(std::move(d)), product_(std::move(product)) {
    if (d_.degree() != -1 || !same_module(d_.source(), module_) || !same_module(d_.target(), module_))
        throw ShapeMismatch("differential must be a degree -1 endomorphism");
    if (product_.arity() != 2 || product_.source_dim() != module_->dim())
        throw ShapeMismatch("product table has the wrong shape");
    for (const auto& [code, vec] : product_.table()) {
        auto w = product_.decode(code);
        const int deg = module_->degree(w[0]) + module_->degree(w[1]);
        for (const auto& t : vec)
            if (module_->degree(t.index) != deg)
                throw ShapeMismatch("product " + module_->element(w[0]).name + "*" + module_->element(w[1]).name +
                                    " has a term " + module_->element(t.index).name + " of the wrong degree");
    }
}

SparseVec DgAlgebra::multiply(int a, int b) const {
    int w[2] = {a, b};
    const SparseVec* v = product_.find(w);
    return v ? *v : SparseVec{};
}

SparseVec DgAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
    Accumulator acc(ring(), module_->dim());
    const SparseVec* f[2] = {&a, &b};
    eval_tensor(product_, f, 2, Scalar::one(ring()), acc);
    return acc.take();
}

AInfStructure DgAlgebra::as_ainfinity(int K) const {
    Family bar = empty_family(K, module_->dim());
    for (int j = 0; j < module_->dim(); ++j) bar[1].set(static_cast<WordCode>(j), d_.image(j));
    const Scalar minus = -Scalar::one(ring());
    for (const auto& [code, vec] : product_.table()) {
        auto w = product_.decode(code);
        bar[2].set(code, (module_->degree(w[0]) & 1) ? scaled(vec, minus) : vec);
    }
    return AInfStructure(module_, K, std::move(bar));
}

}  // namespace ainf
