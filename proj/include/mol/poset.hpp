#pragma once

// Finite posets with canonical element keys, a dense order matrix, covers
// by transitive reduction, and DOT export.

#include <algorithm>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mol {

class Poset {
public:
    Poset() = default;

    /// Build from element keys and a reflexive order predicate on indices.
    Poset(std::vector<std::string> keys, const std::function<bool(int, int)>& leq)
        : keys_(std::move(keys)) {
        const int n = size();
        leq_.assign(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) leq_[i][j] = leq(i, j) ? 1 : 0;
        validate();
        reduce();
    }

    int size() const { return static_cast<int>(keys_.size()); }
    const std::vector<std::string>& keys() const { return keys_; }
    const std::string& key(int i) const { return keys_.at(i); }

    bool leq(int i, int j) const { return leq_[i][j] != 0; }
    bool lt(int i, int j) const { return i != j && leq_[i][j] != 0; }

    /// Transitive reduction, as adjacency lists i -> its upper covers.
    const std::vector<std::vector<int>>& covers() const { return covers_; }

    int cover_edge_count() const {
        int c = 0;
        for (const auto& v : covers_) c += static_cast<int>(v.size());
        return c;
    }

    int strict_pair_count() const {
        int c = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (lt(i, j)) ++c;
        return c;
    }

    std::vector<int> minimal_elements() const {
        std::vector<int> out;
        for (int j = 0; j < size(); ++j) {
            bool min = true;
            for (int i = 0; i < size() && min; ++i)
                if (lt(i, j)) min = false;
            if (min) out.push_back(j);
        }
        return out;
    }

    std::vector<int> maximal_elements() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i) {
            bool max = true;
            for (int j = 0; j < size() && max; ++j)
                if (lt(i, j)) max = false;
            if (max) out.push_back(i);
        }
        return out;
    }

    /// Maximal chains (minimal to maximal element through covers).
    std::vector<std::vector<int>> maximal_chains() const {
        std::vector<std::vector<int>> out;
        std::vector<int> chain;
        std::function<void(int)> extend = [&](int v) {
            chain.push_back(v);
            if (covers_[v].empty())
                out.push_back(chain);
            else
                for (int w : covers_[v]) extend(w);
            chain.pop_back();
        };
        for (int v : minimal_elements()) extend(v);
        return out;
    }

    /// DOT output; with `closure` every strict relation is drawn instead of
    /// only the covers.
    void write_dot(std::ostream& os, bool closure = false) const {
        os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
        for (int i = 0; i < size(); ++i) os << "  n" << i << " [label=\"" << keys_[i] << "\"];\n";
        if (closure) {
            for (int i = 0; i < size(); ++i)
                for (int j = 0; j < size(); ++j)
                    if (lt(i, j)) os << "  n" << i << " -> n" << j << ";\n";
        } else {
            for (int i = 0; i < size(); ++i)
                for (int j : covers_[i]) os << "  n" << i << " -> n" << j << ";\n";
        }
        os << "}\n";
    }

private:
    void validate() const {
        const int n = size();
        for (int i = 0; i < n; ++i)
            if (!leq_[i][i]) throw std::logic_error("order is not reflexive");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i != j && leq_[i][j] && leq_[j][i])
                    throw std::logic_error("order is not antisymmetric");
                if (!leq_[i][j]) continue;
                for (int k = 0; k < n; ++k)
                    if (leq_[j][k] && !leq_[i][k]) throw std::logic_error("order is not transitive");
            }
    }

    void reduce() {
        const int n = size();
        covers_.assign(n, {});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!lt(i, j)) continue;
                bool direct = true;
                for (int m = 0; m < n && direct; ++m)
                    if (m != i && m != j && lt(i, m) && lt(m, j)) direct = false;
                if (direct) covers_[i].push_back(j);
            }
    }

    std::vector<std::string> keys_;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<int>> covers_;
};

}  // namespace mol
