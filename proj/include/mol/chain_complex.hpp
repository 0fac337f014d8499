#pragma once

// Integer chain complexes from order complexes of finite posets and from
// normalized chains of the Gamma simplicial sets, plus Smith-normal-form
// homology with torsion.

#include <mol/graph_operads.hpp>
#include <mol/poset.hpp>
#include <mol/snf.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace mol {

struct ChainComplexData {
    // basis[d] are canonical keys of the d-cells; boundary[d] maps d-chains
    // to (d-1)-chains (boundary[0] is the empty map to the zero module)
    std::vector<std::vector<std::string>> basis;
    std::vector<IntMatrix> boundary;

    std::vector<int> f_vector() const {
        std::vector<int> f;
        f.reserve(basis.size());
        for (const auto& b : basis) f.push_back(static_cast<int>(b.size()));
        return f;
    }

    /// del_d o del_{d+1} = 0 in every degree.
    bool boundary_condition_holds() const {
        for (std::size_t d = 1; d + 1 < boundary.size(); ++d) {
            if (boundary[d].empty() || boundary[d + 1].empty()) continue;
            IntMatrix prod = matrix_product(boundary[d], boundary[d + 1]);
            for (const auto& row : prod)
                for (const BigInt& x : row)
                    if (x != 0) return false;
        }
        return true;
    }
};

/// Simplicial chains of the order complex: d-cells are strictly increasing
/// chains of d+1 elements, boundaries alternate over element deletion.
inline ChainComplexData order_complex(const Poset& p) {
    const int n = p.size();
    std::vector<std::vector<std::vector<int>>> chains;
    chains.push_back({});
    for (int i = 0; i < n; ++i) chains[0].push_back({i});
    while (true) {
        std::vector<std::vector<int>> next;
        for (const auto& ch : chains.back())
            for (int j = 0; j < n; ++j)
                if (p.lt(ch.back(), j)) {
                    auto ext = ch;
                    ext.push_back(j);
                    next.push_back(std::move(ext));
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        chains.push_back(std::move(next));
    }

    ChainComplexData c;
    for (std::size_t d = 0; d < chains.size(); ++d) {
        std::vector<std::string> keys;
        keys.reserve(chains[d].size());
        for (const auto& ch : chains[d]) {
            std::string key;
            for (std::size_t t = 0; t < ch.size(); ++t) {
                if (t) key += " < ";
                key += p.key(ch[t]);
            }
            keys.push_back(std::move(key));
        }
        c.basis.push_back(std::move(keys));
    }
    c.boundary.emplace_back();  // d = 0
    for (std::size_t d = 1; d < chains.size(); ++d) {
        std::map<std::vector<int>, std::size_t> idx;
        for (std::size_t i = 0; i < chains[d - 1].size(); ++i) idx[chains[d - 1][i]] = i;
        IntMatrix m(chains[d - 1].size(), std::vector<BigInt>(chains[d].size(), 0));
        for (std::size_t j = 0; j < chains[d].size(); ++j) {
            const auto& ch = chains[d][j];
            for (std::size_t f = 0; f < ch.size(); ++f) {
                std::vector<int> face;
                face.reserve(ch.size() - 1);
                for (std::size_t t = 0; t < ch.size(); ++t)
                    if (t != f) face.push_back(ch[t]);
                m[idx.at(face)][j] += (f % 2 == 0) ? 1 : -1;
            }
        }
        c.boundary.push_back(std::move(m));
    }
    return c;
}

namespace detail {
inline std::string gamma_key(const GammaSimplex& s) {
    std::string key;
    for (std::size_t i = 0; i < s.chain.size(); ++i) {
        if (i) key += " -> ";
        key += "[";
        for (std::size_t j = 0; j < s.chain[i].size(); ++j) {
            if (j) key += ",";
            key += std::to_string(s.chain[i][j]);
        }
        key += "]";
    }
    return key;
}
}  // namespace detail

/// Normalized chains of the simplicial set Gamma^(n)(k): basis is the
/// nondegenerate simplices, face maps delete one chain entry and faces that
/// become degenerate are dropped.
inline ChainComplexData gamma_chain_complex(int n, int k) {
    auto graded = gamma_simplices(n, k);
    ChainComplexData c;
    std::vector<std::map<std::string, std::size_t>> index(graded.size());
    for (std::size_t d = 0; d < graded.size(); ++d) {
        std::vector<std::string> keys;
        keys.reserve(graded[d].size());
        for (std::size_t i = 0; i < graded[d].size(); ++i) {
            std::string key = detail::gamma_key(graded[d][i]);
            index[d][key] = i;
            keys.push_back(std::move(key));
        }
        c.basis.push_back(std::move(keys));
    }
    c.boundary.emplace_back();
    for (std::size_t d = 1; d < graded.size(); ++d) {
        IntMatrix m(graded[d - 1].size(), std::vector<BigInt>(graded[d].size(), 0));
        for (std::size_t j = 0; j < graded[d].size(); ++j) {
            const GammaSimplex& s = graded[d][j];
            for (std::size_t f = 0; f < s.chain.size(); ++f) {
                GammaSimplex face{s.k, {}};
                for (std::size_t t = 0; t < s.chain.size(); ++t)
                    if (t != f) face.chain.push_back(s.chain[t]);
                if (!face.nondegenerate()) continue;
                m[index[d - 1].at(detail::gamma_key(face))][j] += (f % 2 == 0) ? 1 : -1;
            }
        }
        c.boundary.push_back(std::move(m));
    }
    return c;
}

struct HomologyReport {
    std::vector<int> f;
    std::vector<int> betti;
    std::vector<std::vector<BigInt>> torsion;  // per degree, factors > 1
    long long euler = 0;

    nlohmann::json to_json() const {
        nlohmann::json tor = nlohmann::json::array();
        for (std::size_t d = 0; d < torsion.size(); ++d) {
            if (torsion[d].empty()) continue;
            nlohmann::json factors = nlohmann::json::array();
            for (const BigInt& x : torsion[d]) factors.push_back(x.str());
            tor.push_back({d, factors});
        }
        return {{"f", f}, {"betti", betti}, {"torsion", tor}, {"euler", euler}};
    }

    bool torsion_free() const {
        for (const auto& t : torsion)
            if (!t.empty()) return false;
        return true;
    }

    /// Betti vector with trailing zeros removed.
    std::vector<int> reduced_betti() const {
        std::vector<int> b = betti;
        while (!b.empty() && b.back() == 0) b.pop_back();
        return b;
    }
};

/// Integral homology via Smith normal form: betti_d = dim ker del_d minus
/// rank del_{d+1}; torsion in degree d from the invariant factors of
/// del_{d+1} exceeding 1.
inline HomologyReport homology(const ChainComplexData& c) {
    if (!c.boundary_condition_holds())
        throw std::logic_error("boundary condition del o del = 0 violated");
    HomologyReport rep;
    rep.f = c.f_vector();
    const std::size_t dims = rep.f.size();
    std::vector<std::size_t> rank(dims + 1, 0);
    std::vector<std::vector<BigInt>> factors(dims + 1);
    for (std::size_t d = 1; d < dims; ++d) {
        if (rep.f[d] == 0 || rep.f[d - 1] == 0) continue;
        SmithResult s = smith_normal_form(c.boundary[d]);
        rank[d] = s.rank;
        factors[d] = std::move(s.factors);
    }
    for (std::size_t d = 0; d < dims; ++d) {
        int kernel = rep.f[d] - static_cast<int>(rank[d]);
        rep.betti.push_back(kernel - static_cast<int>(rank[d + 1]));
        std::vector<BigInt> tor;
        for (const BigInt& x : factors[d + 1])
            if (x > 1) tor.push_back(x);
        rep.torsion.push_back(std::move(tor));
    }
    long long ef = 0, eb = 0;
    for (std::size_t d = 0; d < dims; ++d) {
        ef += (d % 2 == 0 ? 1 : -1) * rep.f[d];
        eb += (d % 2 == 0 ? 1 : -1) * rep.betti[d];
    }
    if (ef != eb) throw std::logic_error("Euler characteristic mismatch between f and betti");
    rep.euler = ef;
    return rep;
}

}  // namespace mol
