#include "ainf/linalg.hpp"

#include <algorithm>
#include <climits>

#include "ainf/errors.hpp"

namespace ainf {

Scalar divide(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw NonUnit("division by zero");
    if (a.ring().kind() != RingKind::local_integers) return a * b.inverse();
    mpq_class q = a.rational() / b.rational();
    return Scalar::from_fraction(a.ring(), q.get_num(), q.get_den());
}

SparseVec unit_vector(const Ring& ring, int index) { return {Term{index, Scalar::one(ring)}}; }

SparseVec scaled(const SparseVec& v, const Scalar& s) {
    SparseVec out;
    if (s.is_zero()) return out;
    out.reserve(v.size());
    for (const auto& t : v) {
        Scalar c = t.coeff * s;
        if (!c.is_zero()) out.push_back({t.index, std::move(c)});
    }
    return out;
}

namespace {

template <bool Subtract>
SparseVec merge(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].index < a[i].index) {
            out.push_back({b[j].index, Subtract ? -b[j].coeff : b[j].coeff});
            ++j;
        } else {
            Scalar c = Subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
            if (!c.is_zero()) out.push_back({a[i].index, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

SparseVec add(const SparseVec& a, const SparseVec& b) { return merge<false>(a, b); }
SparseVec sub(const SparseVec& a, const SparseVec& b) { return merge<true>(a, b); }

std::string format_vector(const SparseVec& v, const std::vector<std::string>& names) {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& t : v) {
        std::string c = t.coeff.to_string();
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c.erase(0, 1);
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (c != "1") out += c + "*";
        out += names.at(t.index);
    }
    return out;
}

Accumulator::Accumulator(const Ring& ring, int dim)
    : ring_(ring), values_(dim, Scalar::zero(ring)), touched_(dim, 0) {}

void Accumulator::add(int index, const Scalar& c) {
    if (!touched_[index]) {
        touched_[index] = 1;
        list_.push_back(index);
    }
    values_[index] += c;
}

void Accumulator::sub(int index, const Scalar& c) {
    if (!touched_[index]) {
        touched_[index] = 1;
        list_.push_back(index);
    }
    values_[index] -= c;
}

void Accumulator::add(const SparseVec& v, const Scalar& c) {
    for (const auto& t : v) add(t.index, t.coeff * c);
}

SparseVec Accumulator::take() {
    std::sort(list_.begin(), list_.end());
    SparseVec out;
    const Scalar zero = Scalar::zero(ring_);
    for (int idx : list_) {
        if (!values_[idx].is_zero()) out.push_back({idx, values_[idx]});
        values_[idx] = zero;
        touched_[idx] = 0;
    }
    list_.clear();
    return out;
}

Matrix::Matrix(const Ring& ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, Scalar::zero(ring)) {}

Matrix Matrix::identity(const Ring& ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(ring);
    return m;
}

SparseVec Matrix::column(int c) const {
    SparseVec out;
    for (int r = 0; r < rows_; ++r)
        if (!at(r, c).is_zero()) out.push_back({r, at(r, c)});
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || !(ring_ == o.ring_))
        throw ShapeMismatch("matrix product " + std::to_string(rows_) + "x" + std::to_string(cols_) + " * " +
                            std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    Matrix out(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) out.at(i, j) += a * o.at(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(ring_ == o.ring_)) throw ShapeMismatch("matrix sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(ring_ == o.ring_)) throw ShapeMismatch("matrix difference");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("inverse of a non-square matrix");
    const int n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(m.ring(), n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        int best = INT_MAX;
        for (int r = c; r < n; ++r) {
            if (a.at(r, c).is_zero()) continue;
            int v = a.at(r, c).valuation();
            if (v < best) {
                best = v;
                pivot = r;
            }
        }
        if (pivot < 0) throw NonUnit("matrix is singular");
        if (!a.at(pivot, c).is_unit()) throw NonUnit("matrix is not invertible over " + m.ring().name());
        if (pivot != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(c, j));
                std::swap(inv.at(pivot, j), inv.at(c, j));
            }
        const Scalar pinv = a.at(c, c).inverse();
        for (int j = 0; j < n; ++j) {
            a.at(c, j) *= pinv;
            inv.at(c, j) *= pinv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a.at(r, c).is_zero()) continue;
            const Scalar f = a.at(r, c);
            for (int j = 0; j < n; ++j) {
                if (!a.at(c, j).is_zero()) a.at(r, j) -= f * a.at(c, j);
                if (!inv.at(c, j).is_zero()) inv.at(r, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

int rank(const Matrix& m) {
    // Z_(p) lives inside Q, so the fraction-field rank is the rank over Q.
    Ring field = m.ring().kind() == RingKind::local_integers ? Ring::rationals() : m.ring();
    Matrix a(field, m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            const Scalar& x = m.at(r, c);
            a.at(r, c) = field == m.ring() ? x
                                           : Scalar::from_fraction(field, x.rational().get_num(), x.rational().get_den());
        }
    int rk = 0;
    for (int c = 0; c < a.cols() && rk < a.rows(); ++c) {
        int pivot = -1;
        for (int r = rk; r < a.rows(); ++r)
            if (!a.at(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(rk, j));
        const Scalar pinv = a.at(rk, c).inverse();
        for (int r = rk + 1; r < a.rows(); ++r) {
            if (a.at(r, c).is_zero()) continue;
            const Scalar f = a.at(r, c) * pinv;
            for (int j = c; j < a.cols(); ++j) a.at(r, j) -= f * a.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

}  // namespace ainf
