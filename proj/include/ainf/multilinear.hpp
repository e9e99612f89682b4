#pragma once

// Sparse multilinear maps V^{⊗k} -> W stored on basis words.

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "ainf/graded.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

using WordCode = std::uint64_t;

class MultilinearMap {
public:
    MultilinearMap() = default;
    // Throws std::length_error when source_dim^arity does not fit a 64-bit code.
    MultilinearMap(int arity, int source_dim);

    int arity() const { return arity_; }
    int source_dim() const { return source_dim_; }

    WordCode encode(const int* word) const;
    std::vector<int> decode(WordCode code) const;

    const SparseVec* find(WordCode code) const {
        auto it = table_.find(code);
        return it == table_.end() ? nullptr : &it->second;
    }
    const SparseVec* find(const int* word) const { return find(encode(word)); }
    // Stores v (erases the entry when v is zero).
    void set(WordCode code, SparseVec v);
    void set(const std::vector<int>& word, SparseVec v) { set(encode(word.data()), std::move(v)); }

    bool empty() const { return table_.empty(); }
    std::size_t size() const { return table_.size(); }
    const std::unordered_map<WordCode, SparseVec>& table() const { return table_; }
    // Codes in lexicographic word order.
    std::vector<WordCode> sorted_codes() const;

    friend bool operator==(const MultilinearMap& a, const MultilinearMap& b) {
        return a.arity_ == b.arity_ && a.source_dim_ == b.source_dim_ && a.table_ == b.table_;
    }

private:
    int arity_ = 0;
    int source_dim_ = 0;
    std::unordered_map<WordCode, SparseVec> table_;
};

// Index k holds the arity-k component; index 0 is an unused placeholder.
using Family = std::vector<MultilinearMap>;

Family empty_family(int K, int source_dim);
bool is_zero(const Family& f);
// Smallest arity with a nonzero component, or 0.
int first_nonzero_arity(const Family& f);

// Calls fn(word, total_degree) for every basis word of length k.
void for_each_word(const GradedModule& m, int k, const std::function<void(const int*, int)>& fn);

// Adds coeff * outer(v_1 ⊗ ... ⊗ v_r) to acc.
void eval_tensor(const MultilinearMap& outer, const SparseVec* const* factors, int r, const Scalar& coeff,
                 Accumulator& acc);

// Parity of sum_i (k - i) * deg(w_i), i = 1..k: the sign relating bar and classical components.
bool suspension_sign(const GradedModule& m, const int* word, int k);

// Fills an arity-k table for every word whose output degree N + shift is occupied in target.
MultilinearMap tabulate(const GradedModule& source, const GradedModule& target, int k, int shift,
                        const std::function<void(const int*, Accumulator&)>& eval);

}  // namespace ainf
