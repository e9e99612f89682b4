#pragma once

// Homotopy transfer of a strict dg-algebra structure to homology.

#include <memory>
#include <string>
#include <vector>

#include "ainf/ainfinity.hpp"
#include "ainf/graded.hpp"

namespace ainf {

struct PlanarBinaryTree {
    std::shared_ptr<const PlanarBinaryTree> left, right;  // both null for a leaf
    int leaves = 1;
    int internal_edges = 0;

    bool is_leaf() const { return !left; }
    // "|" for a leaf, "(L R)" otherwise.
    std::string to_string() const;
};

using TreePtr = std::shared_ptr<const PlanarBinaryTree>;

// All planar binary trees with k leaves (k >= 1), ordered by the leaf count of the left subtree.
std::vector<TreePtr> planar_trees(int k);

// One tree's contribution on a word of H: leaves get i, internal vertices b_2,
// internal edges -h, the root p (or -h when as_inclusion). Exposed for testing.
SparseVec evaluate_tree(const PlanarBinaryTree& tree, const AInfStructure& A, const Retraction& r, const int* word,
                        bool as_inclusion);

struct Transferred {
    StructurePtr source;     // the dg-algebra as an A-infinity structure
    StructurePtr structure;  // transferred structure on H
    AInfMorphism iota;       // H -> A
    AInfMorphism pi;         // A -> H
};

// Requires A to be strict (components of arity >= 3 zero) with b_1 equal to the differential
// of r.A. Throws PreconditionViolated otherwise.
Transferred transfer_all(const StructurePtr& A, const Retraction& r);

AInfStructure transfer_structure(const StructurePtr& A, const Retraction& r);
AInfMorphism transfer_inclusion(const StructurePtr& A, const Retraction& r);
AInfMorphism transfer_projection(const StructurePtr& A, const Retraction& r);

}  // namespace ainf
