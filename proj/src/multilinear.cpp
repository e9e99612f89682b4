#include "ainf/multilinear.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ainf {

MultilinearMap::MultilinearMap(int arity, int source_dim) : arity_(arity), source_dim_(source_dim) {
    if (arity < 0 || source_dim < 0) throw std::invalid_argument("negative arity or dimension");
    long double words = 1;
    for (int i = 0; i < arity; ++i) words *= source_dim;
    if (words > static_cast<long double>(std::numeric_limits<WordCode>::max() / 2))
        throw std::length_error("too many words: dimension " + std::to_string(source_dim) + " in arity " +
                                std::to_string(arity));
}

WordCode MultilinearMap::encode(const int* word) const {
    WordCode c = 0;
    for (int i = 0; i < arity_; ++i) c = c * static_cast<WordCode>(source_dim_) + static_cast<WordCode>(word[i]);
    return c;
}

std::vector<int> MultilinearMap::decode(WordCode code) const {
    std::vector<int> w(arity_);
    for (int i = arity_ - 1; i >= 0; --i) {
        w[i] = static_cast<int>(code % source_dim_);
        code /= source_dim_;
    }
    return w;
}

void MultilinearMap::set(WordCode code, SparseVec v) {
    if (v.empty())
        table_.erase(code);
    else
        table_[code] = std::move(v);
}

std::vector<WordCode> MultilinearMap::sorted_codes() const {
    std::vector<WordCode> out;
    out.reserve(table_.size());
    for (const auto& [c, _] : table_) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

Family empty_family(int K, int source_dim) {
    Family f;
    f.reserve(K + 1);
    f.emplace_back();
    for (int k = 1; k <= K; ++k) f.emplace_back(k, source_dim);
    return f;
}

bool is_zero(const Family& f) { return first_nonzero_arity(f) == 0; }

int first_nonzero_arity(const Family& f) {
    for (std::size_t k = 1; k < f.size(); ++k)
        if (!f[k].empty()) return static_cast<int>(k);
    return 0;
}

void for_each_word(const GradedModule& m, int k, const std::function<void(const int*, int)>& fn) {
    const int D = m.dim();
    if (k == 0) {
        fn(nullptr, 0);
        return;
    }
    if (D == 0) return;
    std::vector<int> w(k, 0);
    while (true) {
        int N = 0;
        for (int x : w) N += m.degree(x);
        fn(w.data(), N);
        int i = k - 1;
        while (i >= 0 && ++w[i] == D) w[i--] = 0;
        if (i < 0) break;
    }
}

namespace {

void eval_rec(const MultilinearMap& outer, const SparseVec* const* factors, int r, int j, WordCode code,
              const Scalar& coeff, Accumulator& acc) {
    if (j == r) {
        if (const SparseVec* v = outer.find(code)) acc.add(*v, coeff);
        return;
    }
    for (const auto& t : *factors[j])
        eval_rec(outer, factors, r, j + 1, code * static_cast<WordCode>(outer.source_dim()) + t.index,
                 coeff * t.coeff, acc);
}

}  // namespace

void eval_tensor(const MultilinearMap& outer, const SparseVec* const* factors, int r, const Scalar& coeff,
                 Accumulator& acc) {
    if (outer.empty()) return;
    eval_rec(outer, factors, r, 0, 0, coeff, acc);
}

bool suspension_sign(const GradedModule& m, const int* word, int k) {
    int e = 0;
    for (int i = 0; i < k; ++i) e += (k - 1 - i) * m.degree(word[i]);
    return (e & 1) != 0;
}

MultilinearMap tabulate(const GradedModule& source, const GradedModule& target, int k, int shift,
                        const std::function<void(const int*, Accumulator&)>& eval) {
    MultilinearMap out(k, source.dim());
    Accumulator acc(source.ring(), target.dim());
    for_each_word(source, k, [&](const int* w, int N) {
        if (!target.has_degree(N + shift)) return;
        eval(w, acc);
        SparseVec v = acc.take();
        if (!v.empty()) out.set(out.encode(w), std::move(v));
    });
    return out;
}

}  // namespace ainf
