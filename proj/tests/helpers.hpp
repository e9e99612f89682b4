#pragma once

#include <random>
#include <string>

#include "ainf/oracle.hpp"

namespace testing {

inline ainf::Scalar S(const ainf::Ring& r, const std::string& text) { return ainf::Scalar::parse(r, text); }

inline ainf::SparseVec vec(const ainf::Ring& r, std::initializer_list<std::pair<int, const char*>> terms) {
    ainf::Accumulator acc(r, 64);
    for (auto [i, c] : terms) acc.add(i, S(r, c));
    return acc.take();
}

// Dense product, used as an independent reference for Matrix::operator*.
inline ainf::Matrix naive_product(const ainf::Matrix& a, const ainf::Matrix& b) {
    ainf::Matrix out(a.ring(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            ainf::Scalar s = ainf::Scalar::zero(a.ring());
            for (int k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
            out.at(i, j) = s;
        }
    return out;
}

inline ainf::DgAlgebra zero_differential_dga(const ainf::Ring& ring, std::uint64_t seed, int max_dim = 4,
                                             int degree_step = 1) {
    ainf::RandomDgaOptions o;
    o.ring = ring;
    o.max_dim = max_dim;
    o.seed = seed;
    o.zero_differential = true;
    o.min_degree = -2 * degree_step;
    o.max_degree = degree_step;
    o.degree_step = degree_step;
    return ainf::random_dga(o);
}

}  // namespace testing
