#pragma once

// Test-only generators and brute-force oracles, independent of the
// library's enumeration paths.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "declat/forest.hpp"
#include "declat/poset.hpp"

namespace testutil {

using declat::BlowupForest;
using declat::ForestNode;
using declat::Poset;
using declat::Subset;

// --- oracles ---

// downward closure straight from the definition
inline bool oracle_is_lower_ideal(const Poset& p, Subset s) {
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (((s >> a) & 1) && p.leq(b, a) && !((s >> b) & 1)) return false;
    return true;
}

inline std::vector<Subset> oracle_lower_ideals(const Poset& p) {
    std::vector<Subset> out;
    for (Subset s = 0; s < (Subset{1} << p.size()); ++s)
        if (oracle_is_lower_ideal(p, s)) out.push_back(s);
    return out;
}

inline std::vector<std::vector<int>> oracle_linear_extensions(const Poset& p) {
    std::vector<int> perm(p.size());
    for (int i = 0; i < p.size(); ++i) perm[i] = i;
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        std::vector<int> pos(p.size());
        for (int i = 0; i < p.size(); ++i) pos[perm[i]] = i;
        for (int a = 0; a < p.size() && ok; ++a)
            for (int b = 0; b < p.size(); ++b)
                if (p.leq(a, b) && pos[a] > pos[b]) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// closure by iterated relational composition
inline std::vector<std::vector<bool>> oracle_closure(int n,
                                                     std::vector<std::vector<bool>> rel) {
    for (int i = 0; i < n; ++i) rel[i][i] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (rel[a][b] && rel[b][c] && !rel[a][c]) {
                        rel[a][c] = true;
                        changed = true;
                    }
    }
    return rel;
}

// --- generators ---

inline std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i + 1));
    return labels;
}

// All posets on n labeled elements whose order respects the label
// order; every isomorphism class appears.
inline std::vector<Poset> all_posets_up_to(int max_n) {
    std::vector<Poset> out;
    for (int n = 0; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
        std::set<std::vector<Subset>> seen;
        auto labels = default_labels(n);
        for (Subset mask = 0; mask < (Subset{1} << slots.size()); ++mask) {
            std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
            for (size_t k = 0; k < slots.size(); ++k)
                if ((mask >> k) & 1) rel[slots[k].first][slots[k].second] = true;
            auto closed = oracle_closure(n, rel);
            std::vector<Subset> up(n, 0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (closed[a][b]) up[a] |= declat::bit(b);
            if (!seen.insert(up).second) continue;
            out.push_back(declat::poset_from_leq(labels, up));
        }
    }
    return out;
}

inline Poset random_poset(std::mt19937& rng, int n) {
    std::vector<std::pair<std::string, std::string>> pairs;
    auto labels = default_labels(n);
    std::uniform_int_distribution<int> coin(0, 9);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng) < 3) pairs.emplace_back(labels[a], labels[b]);
    return declat::validate_poset(labels, pairs);
}

// All forests on exactly n nodes (every parent assignment), with every
// legal satellite decoration.
inline std::vector<BlowupForest> all_forests(int n) {
    std::vector<BlowupForest> out;
    std::vector<ForestNode> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i].id = "p" + std::to_string(i + 1);

    std::function<void(int)> decorate = [&](int i) {
        if (i == n) {
            out.push_back(BlowupForest(nodes));
            return;
        }
        nodes[i].extra.clear();
        decorate(i + 1);
        if (nodes[i].parent) {
            int par = *nodes[i].parent;
            // targets the parent is proximate to
            std::vector<int> targets;
            if (nodes[par].parent) targets.push_back(*nodes[par].parent);
            for (int t : nodes[par].extra) targets.push_back(t);
            for (int t : targets) {
                nodes[i].extra = {t};
                decorate(i + 1);
            }
            nodes[i].extra.clear();
        }
    };

    std::function<void(int)> assign = [&](int i) {
        if (i == n) {
            decorate(0);
            return;
        }
        nodes[i].parent.reset();
        assign(i + 1);
        for (int par = 0; par < i; ++par) {
            nodes[i].parent = par;
            assign(i + 1);
        }
        nodes[i].parent.reset();
    };
    assign(0);
    return out;
}

inline std::vector<BlowupForest> all_forests_up_to(int max_n) {
    std::vector<BlowupForest> out;
    for (int n = 0; n <= max_n; ++n)
        for (auto& f : all_forests(n)) out.push_back(std::move(f));
    return out;
}

inline BlowupForest chain_forest() {
    std::vector<ForestNode> nodes(2);
    nodes[0].id = "p1";
    nodes[1].id = "p2";
    nodes[1].parent = 0;
    return BlowupForest(nodes);
}

// p3 blown up on the intersection of E2 with the strict transform of E1
inline BlowupForest satellite_forest() {
    std::vector<ForestNode> nodes(3);
    nodes[0].id = "p1";
    nodes[1].id = "p2";
    nodes[1].parent = 0;
    nodes[2].id = "p3";
    nodes[2].parent = 1;
    nodes[2].extra = {0};
    return BlowupForest(nodes);
}

inline BlowupForest two_roots_forest() {
    std::vector<ForestNode> nodes(2);
    nodes[0].id = "p1";
    nodes[1].id = "p2";
    return BlowupForest(nodes);
}

inline declat::Contraction full_contraction(const BlowupForest& f) {
    return declat::Contraction{&f, f.size() ? (Subset{1} << f.size()) - 1 : 0};
}

} // namespace testutil
