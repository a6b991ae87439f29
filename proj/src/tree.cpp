#include "stepkernel/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace stepkernel {

RootedTree RootedTree::leaf() {
    RootedTree t;
    t.code_ = "()";
    return t;
}

RootedTree RootedTree::from_children(std::vector<RootedTree> children) {
    std::sort(children.begin(), children.end(),
              [](const RootedTree& a, const RootedTree& b) { return a.code() < b.code(); });
    RootedTree t;
    t.code_ = "(";
    for (const auto& c : children) {
        t.code_ += c.code();
        t.vertices_ += c.vertices();
        t.height_ = std::max(t.height_, c.height() + 1);
    }
    t.code_ += ")";
    t.children_ = std::move(children);
    return t;
}

RootedTree RootedTree::parse(const std::string& code) {
    std::size_t pos = 0;
    // recursive descent over one "(...)" group
    auto bad = [&] { throw std::invalid_argument("malformed tree code: '" + code + "'"); };
    auto node = [&](auto&& self) -> RootedTree {
        if (pos >= code.size() || code[pos] != '(') bad();
        ++pos;
        std::vector<RootedTree> children;
        while (pos < code.size() && code[pos] == '(') children.push_back(self(self));
        if (pos >= code.size() || code[pos] != ')') bad();
        ++pos;
        return from_children(std::move(children));
    };
    RootedTree t = node(node);
    if (pos != code.size()) bad();
    return t;
}

RootedTree plant(const RootedTree& T) { return RootedTree::from_children({T}); }

RootedTree merge(const RootedTree& a, const RootedTree& b) {
    std::vector<RootedTree> children = a.children();
    children.insert(children.end(), b.children().begin(), b.children().end());
    return RootedTree::from_children(std::move(children));
}

std::vector<Multiplicity> multiplicity_profile(const RootedTree& T) {
    std::vector<Multiplicity> out;
    for (const auto& c : T.children()) {
        if (!out.empty() && out.back().tree == c)
            ++out.back().count;
        else
            out.push_back({c, 1});
    }
    return out;
}

Rat e_coefficient(const RootedTree& T) {
    Rat e = 1;
    for (const auto& m : multiplicity_profile(T)) {
        Rat fact = 1;
        for (int i = 2; i <= m.count; ++i) fact *= i;
        e /= fact;
    }
    return e;
}

std::vector<RootedTree> enumerate_trees(int max_height, int max_vertices) {
    if (max_height < 0 || max_vertices < 1) return {};
    if (max_height == 0) return {RootedTree::leaf()};
    std::vector<RootedTree> smaller = enumerate_trees(max_height - 1, max_vertices - 1);
    // Children are chosen as a non-decreasing sequence over the enumeration
    // order of `smaller`, so every multiset appears exactly once.
    std::vector<RootedTree> out;
    std::vector<RootedTree> acc;
    auto rec = [&](auto&& self, std::size_t from, int budget) -> void {
        out.push_back(RootedTree::from_children(acc));
        for (std::size_t i = from; i < smaller.size(); ++i) {
            if (smaller[i].vertices() > budget) continue;
            acc.push_back(smaller[i]);
            self(self, i, budget - smaller[i].vertices());
            acc.pop_back();
        }
    };
    rec(rec, 0, max_vertices - 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace stepkernel
