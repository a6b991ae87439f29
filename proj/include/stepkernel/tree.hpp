#pragma once

#include <string>
#include <vector>

#include "stepkernel/rational.hpp"

namespace stepkernel {

// Rooted tree in canonical form: code("leaf") = "()", and the code of an inner
// node wraps the lexicographically sorted codes of its children. Two rooted
// trees are isomorphic iff their codes are equal, so the code doubles as the
// tabulation key everywhere.
class RootedTree {
  public:
    static RootedTree leaf();
    static RootedTree from_children(std::vector<RootedTree> children);
    // Parses a (possibly non-canonical) parenthesis code and canonicalizes it.
    static RootedTree parse(const std::string& code);

    const std::string& code() const { return code_; }
    int vertices() const { return vertices_; }
    int height() const { return height_; }
    const std::vector<RootedTree>& children() const { return children_; }

    bool operator==(const RootedTree& o) const { return code_ == o.code_; }
    // enumeration order: by vertex count, then code
    bool operator<(const RootedTree& o) const {
        return vertices_ != o.vertices_ ? vertices_ < o.vertices_ : code_ < o.code_;
    }

  private:
    RootedTree() = default;
    std::vector<RootedTree> children_;  // sorted by code
    std::string code_;
    int vertices_ = 1;
    int height_ = 0;
};

// New root with T as its only child.
RootedTree plant(const RootedTree& T);

// Identify the roots of a and b (commutative and associative on codes).
RootedTree merge(const RootedTree& a, const RootedTree& b);

// Distinct child subtrees of the root with multiplicities.
struct Multiplicity {
    RootedTree tree;
    int count;
};
std::vector<Multiplicity> multiplicity_profile(const RootedTree& T);

// e_T = prod over the profile of 1/count!, the symmetry coefficient of the
// root (single-level only, not nested).
Rat e_coefficient(const RootedTree& T);

// One representative per isomorphism class with height <= max_height and
// vertex count <= max_vertices, sorted by (vertices, code).
std::vector<RootedTree> enumerate_trees(int max_height, int max_vertices);

}  // namespace stepkernel
