#include "ainf/graded.hpp"

#include <algorithm>
#include <set>

#include "ainf/errors.hpp"

namespace ainf {

GradedModule::GradedModule(Ring ring, std::vector<BasisElement> basis)
    : ring_(std::move(ring)), basis_(std::move(basis)), position_(basis_.size()) {
    for (int i = 0; i < dim(); ++i) {
        if (basis_[i].name.empty()) throw std::invalid_argument("basis element " + std::to_string(i) + " has an empty name");
        if (!index_.emplace(basis_[i].name, i).second)
            throw std::invalid_argument("duplicate basis name '" + basis_[i].name + "'");
        auto& slot = by_degree_[basis_[i].degree];
        position_[i] = static_cast<int>(slot.size());
        slot.push_back(i);
    }
}

std::vector<std::string> GradedModule::names() const {
    std::vector<std::string> out;
    for (const auto& b : basis_) out.push_back(b.name);
    return out;
}

std::optional<int> GradedModule::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> GradedModule::degrees() const {
    std::vector<int> out;
    for (const auto& [deg, _] : by_degree_) out.push_back(deg);
    return out;
}

const std::vector<int>& GradedModule::in_degree(int n) const {
    static const std::vector<int> empty;
    auto it = by_degree_.find(n);
    return it == by_degree_.end() ? empty : it->second;
}

ModulePtr make_module(const Ring& ring, std::vector<BasisElement> basis) {
    return std::make_shared<const GradedModule>(ring, std::move(basis));
}

bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || *a == *b; }

GradedMap::GradedMap(ModulePtr source, ModulePtr target, int degree, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), matrix_(std::move(matrix)) {
    if (!(source_->ring() == target_->ring()) || !(matrix_.ring() == source_->ring()))
        throw RingMismatch("graded map over mixed rings");
    if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
        throw ShapeMismatch("graded map matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_->dim()) + "x" +
                            std::to_string(source_->dim()));
    for (int r = 0; r < matrix_.rows(); ++r)
        for (int c = 0; c < matrix_.cols(); ++c)
            if (!matrix_.at(r, c).is_zero() && target_->degree(r) != source_->degree(c) + degree_)
                throw ShapeMismatch("entry " + source_->element(c).name + " -> " + target_->element(r).name +
                                    " does not have degree " + std::to_string(degree_));
}

GradedMap GradedMap::zero(ModulePtr source, ModulePtr target, int degree) {
    Matrix m(source->ring(), target->dim(), source->dim());
    return GradedMap(std::move(source), std::move(target), degree, std::move(m));
}

GradedMap GradedMap::identity(ModulePtr module) {
    Matrix m = Matrix::identity(module->ring(), module->dim());
    return GradedMap(module, module, 0, std::move(m));
}

SparseVec GradedMap::apply(const SparseVec& v) const {
    Accumulator acc(target_->ring(), target_->dim());
    for (const auto& t : v)
        for (int r = 0; r < matrix_.rows(); ++r)
            if (!matrix_.at(r, t.index).is_zero()) acc.add(r, matrix_.at(r, t.index) * t.coeff);
    return acc.take();
}

Matrix GradedMap::block(int n) const {
    const auto& cols = source_->in_degree(n);
    const auto& rows = target_->in_degree(n + degree_);
    Matrix out(source_->ring(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out.at(r, c) = matrix_.at(rows[r], cols[c]);
    return out;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.degree_ == b.degree_ && same_module(a.source_, b.source_) && same_module(a.target_, b.target_) &&
           a.matrix_ == b.matrix_;
}

GradedMap compose_map(const GradedMap& g, const GradedMap& f) {
    if (!same_module(f.target(), g.source())) throw ShapeMismatch("compose_map: target of f is not the source of g");
    return GradedMap(f.source(), g.target(), f.degree() + g.degree(), g.matrix() * f.matrix());
}

GradedMap add_map(const GradedMap& a, const GradedMap& b) {
    if (!same_module(a.source(), b.source()) || !same_module(a.target(), b.target()) || a.degree() != b.degree())
        throw ShapeMismatch("add_map: incompatible maps");
    return GradedMap(a.source(), a.target(), a.degree(), a.matrix() + b.matrix());
}

GradedMap sub_map(const GradedMap& a, const GradedMap& b) {
    if (!same_module(a.source(), b.source()) || !same_module(a.target(), b.target()) || a.degree() != b.degree())
        throw ShapeMismatch("sub_map: incompatible maps");
    return GradedMap(a.source(), a.target(), a.degree(), a.matrix() - b.matrix());
}

GradedMap scale_map(const Scalar& s, const GradedMap& a) {
    return GradedMap(a.source(), a.target(), a.degree(), a.matrix().scaled(s));
}

GradedMap invert_map(const GradedMap& a) {
    if (a.degree() != 0 || a.source()->dim() != a.target()->dim())
        throw NonInvertibleLinearPart("linear part is not a degree 0 map between modules of equal rank");
    try {
        return GradedMap(a.target(), a.source(), 0, inverse(a.matrix()));
    } catch (const NonUnit& e) {
        throw NonInvertibleLinearPart(std::string("linear part is not invertible: ") + e.what());
    }
}

ChainComplex::ChainComplex(ModulePtr module, GradedMap d) : module_(std::move(module)), d_(std::move(d)) {
    if (d_.degree() != -1) throw ShapeMismatch("differential must have degree -1");
    if (!same_module(d_.source(), module_) || !same_module(d_.target(), module_))
        throw ShapeMismatch("differential is not an endomorphism of the module");
    if (!(d_.matrix() * d_.matrix()).is_zero()) throw NotAComplex("d∘d is not zero");
}

namespace {

struct DegreeData {
    Matrix Q;                  // unimodular column operations on A_n
    std::vector<int> pivots;   // columns of Q spanning a complement of the cycles
    std::vector<int> kernel;   // columns of Q spanning the cycles
};

DegreeData column_echelon(Matrix M) {
    const Ring ring = M.ring();
    const int rows = M.rows(), cols = M.cols();
    DegreeData out{Matrix::identity(ring, cols), {}, {}};
    std::vector<char> used(cols, 0);
    for (int r = 0; r < rows; ++r) {
        int best = -1;
        int best_val = 0;
        for (int c = 0; c < cols; ++c) {
            if (used[c] || M.at(r, c).is_zero()) continue;
            int v = M.at(r, c).valuation();
            if (best < 0 || v < best_val) {
                best = c;
                best_val = v;
            }
        }
        if (best < 0) continue;
        used[best] = 1;
        out.pivots.push_back(best);
        for (int c = 0; c < cols; ++c) {
            if (used[c] || M.at(r, c).is_zero()) continue;
            const Scalar f = divide(M.at(r, c), M.at(r, best));
            for (int i = 0; i < rows; ++i)
                if (!M.at(i, best).is_zero()) M.at(i, c) -= f * M.at(i, best);
            for (int i = 0; i < cols; ++i)
                if (!out.Q.at(i, best).is_zero()) out.Q.at(i, c) -= f * out.Q.at(i, best);
        }
    }
    for (int c = 0; c < cols; ++c)
        if (!used[c]) out.kernel.push_back(c);
    return out;
}

}  // namespace

Retraction homology_with_retraction(const ChainComplex& A) {
    const ModulePtr& mod = A.module();
    const Ring& ring = mod->ring();
    const std::vector<int> degs = mod->degrees();

    std::map<int, DegreeData> data;
    for (int n : degs) data.emplace(n, column_echelon(A.d().block(n)));

    // Degrees of H listed in order of first appearance in the basis of A.
    std::vector<int> order;
    for (const auto& b : mod->basis())
        if (std::find(order.begin(), order.end(), b.degree) == order.end()) order.push_back(b.degree);

    struct HomologyPiece {
        int degree;
        std::vector<SparseVec> lifts;     // in A coordinates, local to degree n
        Matrix Tinv;
        int boundaries;                   // number of leading Y columns of T
        std::vector<SparseVec> next_c;    // complement basis of degree n+1, local coordinates
    };
    std::vector<HomologyPiece> pieces;
    std::vector<BasisElement> h_basis;

    for (int n : order) {
        const DegreeData& dd = data.at(n);
        const auto& local = mod->in_degree(n);
        const int a_n = static_cast<int>(local.size());

        // Boundaries y_l = d(c_l) for c_l in the complement of the cycles in degree n+1.
        std::vector<SparseVec> ys, cs;
        if (data.count(n + 1)) {
            const DegreeData& up = data.at(n + 1);
            const Matrix D = A.d().block(n + 1);
            for (int pc : up.pivots) {
                SparseVec c = up.Q.column(pc);
                Accumulator acc(ring, a_n);
                for (const auto& t : c)
                    for (int r = 0; r < a_n; ++r)
                        if (!D.at(r, t.index).is_zero()) acc.add(r, D.at(r, t.index) * t.coeff);
                ys.push_back(acc.take());
                cs.push_back(std::move(c));
            }
        }
        const int b = static_cast<int>(ys.size());
        const int z = static_cast<int>(dd.kernel.size());

        // Coordinates of the boundaries in the cycle basis.
        const Matrix Qinv = inverse(dd.Q);
        Matrix Y(ring, z, b);
        for (int l = 0; l < b; ++l)
            for (const auto& t : ys[l])
                for (int i = 0; i < z; ++i)
                    if (!Qinv.at(dd.kernel[i], t.index).is_zero()) Y.at(i, l) += Qinv.at(dd.kernel[i], t.index) * t.coeff;

        std::vector<char> row_used(z, 0);
        for (int l = 0; l < b; ++l) {
            int pivot = -1;
            for (int i = 0; i < z; ++i)
                if (!row_used[i] && Y.at(i, l).is_unit()) {
                    pivot = i;
                    break;
                }
            if (pivot < 0)
                throw NonFreeHomology("homology in degree " + std::to_string(n) + " has torsion over " + ring.name());
            row_used[pivot] = 1;
            for (int m = l + 1; m < b; ++m) {
                if (Y.at(pivot, m).is_zero()) continue;
                const Scalar f = divide(Y.at(pivot, m), Y.at(pivot, l));
                for (int i = 0; i < z; ++i)
                    if (!Y.at(i, l).is_zero()) Y.at(i, m) -= f * Y.at(i, l);
            }
        }

        HomologyPiece piece{n, {}, Matrix(ring, a_n, a_n), b, cs};
        Matrix T(ring, a_n, a_n);
        int col = 0;
        for (int l = 0; l < b; ++l, ++col)
            for (const auto& t : ys[l]) T.at(t.index, col) = t.coeff;
        for (int i = 0; i < z; ++i) {
            if (row_used[i]) continue;
            SparseVec lift = dd.Q.column(dd.kernel[i]);
            for (const auto& t : lift) T.at(t.index, col) = t.coeff;
            ++col;
            std::string name;
            if (lift.size() == 1 && lift[0].coeff.is_one())
                name = "[" + mod->element(local[lift[0].index]).name + "]";
            else
                name = "[H" + std::to_string(n) + "." + std::to_string(piece.lifts.size()) + "]";
            h_basis.push_back({name, n});
            piece.lifts.push_back(std::move(lift));
        }
        for (int pc : dd.pivots) {
            for (const auto& t : dd.Q.column(pc)) T.at(t.index, col) = t.coeff;
            ++col;
        }
        piece.Tinv = inverse(T);
        pieces.push_back(std::move(piece));
    }

    ModulePtr H = make_module(ring, h_basis);
    Matrix im(ring, mod->dim(), H->dim()), pm(ring, H->dim(), mod->dim()), hm(ring, mod->dim(), mod->dim());
    int h_index = 0;
    for (const auto& piece : pieces) {
        const auto& local = mod->in_degree(piece.degree);
        const auto& up_local = mod->in_degree(piece.degree + 1);
        const int a_n = static_cast<int>(local.size());
        for (std::size_t j = 0; j < piece.lifts.size(); ++j) {
            for (const auto& t : piece.lifts[j]) im.at(local[t.index], h_index + j) = t.coeff;
            for (int c = 0; c < a_n; ++c)
                pm.at(h_index + j, local[c]) = piece.Tinv.at(piece.boundaries + static_cast<int>(j), c);
        }
        for (int c = 0; c < a_n; ++c)
            for (int l = 0; l < piece.boundaries; ++l) {
                const Scalar& beta = piece.Tinv.at(l, c);
                if (beta.is_zero()) continue;
                for (const auto& t : piece.next_c[l]) hm.at(up_local[t.index], local[c]) += beta * t.coeff;
            }
        h_index += static_cast<int>(piece.lifts.size());
    }

    return Retraction{A, H, GradedMap(H, mod, 0, std::move(im)), GradedMap(mod, H, 0, std::move(pm)),
                      GradedMap(mod, mod, 1, std::move(hm))};
}

Report verify_retraction(const Retraction& r) {
    Report rep;
    const auto& mod = r.A.module();
    const Ring& ring = mod->ring();
    const Matrix& d = r.A.d().matrix();
    const Matrix& i = r.i.matrix();
    const Matrix& p = r.p.matrix();
    const Matrix& h = r.h.matrix();

    bool shapes = same_module(r.i.source(), r.H) && same_module(r.i.target(), mod) && same_module(r.p.source(), mod) &&
                  same_module(r.p.target(), r.H) && same_module(r.h.source(), mod) && same_module(r.h.target(), mod) &&
                  r.i.degree() == 0 && r.p.degree() == 0 && r.h.degree() == 1;
    if (!shapes) {
        rep.add("shapes", false, "i, p, h do not have the expected sources, targets and degrees");
        return rep;
    }
    rep.add("p∘i = id", p * i == Matrix::identity(ring, r.H->dim()));
    rep.add("d∘h + h∘d = id - i∘p", d * h + h * d == Matrix::identity(ring, mod->dim()) - i * p);
    rep.add("h∘i = 0", (h * i).is_zero());
    rep.add("p∘h = 0", (p * h).is_zero());
    rep.add("h∘h = 0", (h * h).is_zero());
    return rep;
}

std::map<int, int> homology_ranks(const ChainComplex& A) {
    std::map<int, int> out;
    for (int n : A.module()->degrees()) {
        const int a_n = static_cast<int>(A.module()->in_degree(n).size());
        int r = a_n - rank(A.d().block(n)) - rank(A.d().block(n + 1));
        if (r != 0) out[n] = r;
    }
    return out;
}

}  // namespace ainf
