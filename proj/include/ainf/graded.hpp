#pragma once

// Graded modules, degree-homogeneous maps, chain complexes and homotopy retractions.
// Grading is homological: differentials have degree -1.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ainf/coeff.hpp"
#include "ainf/linalg.hpp"
#include "ainf/report.hpp"

namespace ainf {

struct BasisElement {
    std::string name;
    int degree = 0;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

class GradedModule {
public:
    GradedModule(Ring ring, std::vector<BasisElement> basis);

    const Ring& ring() const { return ring_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(int i) const { return basis_.at(i); }
    int degree(int i) const { return basis_[i].degree; }
    std::vector<std::string> names() const;

    std::optional<int> find(std::string_view name) const;
    // Occupied degrees, ascending.
    std::vector<int> degrees() const;
    bool has_degree(int n) const { return by_degree_.count(n) != 0; }
    // Basis indices in degree n, in basis order.
    const std::vector<int>& in_degree(int n) const;
    // Position of basis element i among the elements of its degree.
    int position(int i) const { return position_[i]; }

    friend bool operator==(const GradedModule& a, const GradedModule& b) {
        return a.ring_ == b.ring_ && a.basis_ == b.basis_;
    }

private:
    Ring ring_;
    std::vector<BasisElement> basis_;
    std::unordered_map<std::string, int> index_;
    std::map<int, std::vector<int>> by_degree_;
    std::vector<int> position_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

ModulePtr make_module(const Ring& ring, std::vector<BasisElement> basis);
bool same_module(const ModulePtr& a, const ModulePtr& b);

// A linear map raising degree by `degree`, stored as a dense target x source matrix.
class GradedMap {
public:
    GradedMap(ModulePtr source, ModulePtr target, int degree, Matrix matrix);
    static GradedMap zero(ModulePtr source, ModulePtr target, int degree);
    static GradedMap identity(ModulePtr module);

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    int degree() const { return degree_; }
    const Matrix& matrix() const { return matrix_; }

    // Image of source basis element j.
    SparseVec image(int j) const { return matrix_.column(j); }
    SparseVec apply(const SparseVec& v) const;
    // The block from source degree n to target degree n + degree().
    Matrix block(int n) const;
    bool is_zero() const { return matrix_.is_zero(); }

    friend bool operator==(const GradedMap& a, const GradedMap& b);

private:
    ModulePtr source_;
    ModulePtr target_;
    int degree_;
    Matrix matrix_;
};

GradedMap compose_map(const GradedMap& g, const GradedMap& f);
GradedMap add_map(const GradedMap& a, const GradedMap& b);
GradedMap sub_map(const GradedMap& a, const GradedMap& b);
GradedMap scale_map(const Scalar& s, const GradedMap& a);
// Throws NonInvertibleLinearPart.
GradedMap invert_map(const GradedMap& a);

class ChainComplex {
public:
    // Throws ShapeMismatch for a wrong degree and NotAComplex when d∘d != 0.
    ChainComplex(ModulePtr module, GradedMap d);

    const ModulePtr& module() const { return module_; }
    const GradedMap& d() const { return d_; }

private:
    ModulePtr module_;
    GradedMap d_;
};

struct Retraction {
    ChainComplex A;
    ModulePtr H;
    GradedMap i;  // H -> A
    GradedMap p;  // A -> H
    GradedMap h;  // A -> A, degree +1
};

Retraction homology_with_retraction(const ChainComplex& A);
Report verify_retraction(const Retraction& r);

// rank ker d_n - rank im d_{n+1}, over the fraction field, per degree (zero ranks omitted).
std::map<int, int> homology_ranks(const ChainComplex& A);

}  // namespace ainf
