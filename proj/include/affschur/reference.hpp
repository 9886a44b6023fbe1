#pragma once

// Slow, independent reference implementations.  They share nothing with the
// fast paths beyond group multiplication and reduced words, and serve as test
// and acceptance oracles.

#include <map>
#include <queue>
#include <set>
#include <vector>

#include "affschur/affperm.hpp"

namespace affschur::reference {

/// Word length in W' by breadth-first search over the Cayley graph.
inline std::map<AffPerm, int> bfs_lengths(int r, int depth) {
    std::map<AffPerm, int> dist;
    std::queue<AffPerm> todo;
    AffPerm e = AffPerm::identity(r);
    dist[e] = 0;
    todo.push(e);
    while (!todo.empty()) {
        AffPerm u = todo.front();
        todo.pop();
        int d = dist[u];
        if (d == depth) continue;
        for (int i = 0; i < r; ++i) {
            AffPerm v = u * AffPerm::generator(r, i);
            if (dist.emplace(v, d + 1).second) todo.push(v);
        }
    }
    return dist;
}

/// y <= w iff y is a subexpression of a reduced expression for w.
inline bool subword_leq(const AffPerm& y, const AffPerm& w) {
    if (y.omega_degree() != w.omega_degree()) return false;
    auto rw = reduced_word(w);
    const int r = w.period();
    const std::size_t k = rw.word.size();
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        AffPerm u = AffPerm::rho_pow(r, rw.omega);
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1UL << i)) u = u * AffPerm::generator(r, rw.word[i]);
        if (u == y) return true;
    }
    return false;
}

inline std::set<AffPerm> subword_lower(const AffPerm& w, const std::vector<AffPerm>& candidates) {
    std::set<AffPerm> out;
    for (const auto& y : candidates)
        if (subword_leq(y, w)) out.insert(y);
    return out;
}

}  // namespace affschur::reference
