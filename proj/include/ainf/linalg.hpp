#pragma once

#include <string>
#include <vector>

#include "ainf/coeff.hpp"

namespace ainf {

struct Term {
    int index;
    Scalar coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

// Sorted by index, no zero coefficients.
using SparseVec = std::vector<Term>;

// a / b when b divides a in the ring; throws NonUnit otherwise.
Scalar divide(const Scalar& a, const Scalar& b);

SparseVec unit_vector(const Ring& ring, int index);
SparseVec scaled(const SparseVec& v, const Scalar& s);
SparseVec add(const SparseVec& a, const SparseVec& b);
SparseVec sub(const SparseVec& a, const SparseVec& b);
std::string format_vector(const SparseVec& v, const std::vector<std::string>& names);

// Dense scratch space for summing many sparse contributions.
class Accumulator {
public:
    Accumulator(const Ring& ring, int dim);

    void add(int index, const Scalar& c);
    void sub(int index, const Scalar& c);
    void add(const SparseVec& v, const Scalar& c);
    // Returns the sum as a SparseVec and resets to zero.
    SparseVec take();
    const Ring& ring() const { return ring_; }

private:
    Ring ring_;
    std::vector<Scalar> values_;
    std::vector<char> touched_;
    std::vector<int> list_;
};

class Matrix {
public:
    Matrix(const Ring& ring, int rows, int cols);
    static Matrix identity(const Ring& ring, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Ring& ring() const { return ring_; }

    Scalar& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    SparseVec column(int c) const;
    bool is_zero() const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Ring ring_;
    int rows_;
    int cols_;
    std::vector<Scalar> data_;
};

// Inverse over the ring itself (not its fraction field). Throws NonUnit when
// the matrix is singular or its determinant is not a unit; ShapeMismatch if not square.
Matrix inverse(const Matrix& m);

// Rank over the fraction field of the ring.
int rank(const Matrix& m);

}  // namespace ainf
