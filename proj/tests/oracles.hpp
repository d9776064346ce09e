#pragma once

// Brute-force reference computations used only by the tests.  None of them
// goes through canonical codes, reduced-word arithmetic or deck shifts.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "kronrep/cover_tree.hpp"

namespace oracle {

// Closed-form Coxeter transformation (x, y) -> (n y - x, n^2 y - n x - y).
inline std::pair<std::int64_t, std::int64_t> coxeterClosedForm(std::int64_t n, std::int64_t x, std::int64_t y) {
    return {n * y - x, n * n * y - n * x - y};
}

// Explicit ball of the n-regular cover around a sink: node 0 is the centre,
// every other node stores its parent and the label of the edge to it.
struct Ball {
    int n = 0;
    std::vector<int> parent;
    std::vector<int> parentLabel;
    std::vector<int> depth;
    std::vector<std::vector<int>> adj;

    bool isSource(int v) const { return depth[v] % 2 == 1; }
};

inline Ball buildBall(int n, int radius) {
    Ball b;
    b.n = n;
    b.parent = {-1};
    b.parentLabel = {0};
    b.depth = {0};
    b.adj = {{}};
    for (std::size_t v = 0; v < b.parent.size(); ++v) {
        if (b.depth[v] == radius) continue;
        for (int label = 1; label <= n; ++label) {
            if (label == b.parentLabel[v]) continue;
            const int child = static_cast<int>(b.parent.size());
            b.parent.push_back(static_cast<int>(v));
            b.parentLabel.push_back(label);
            b.depth.push_back(b.depth[v] + 1);
            b.adj.emplace_back();
            b.adj[v].push_back(child);
            b.adj[child].push_back(static_cast<int>(v));
        }
    }
    return b;
}

// Number of connected vertex sets of the ball containing node 0 with the
// given numbers of sources and sinks (simple extension-set enumeration).
inline std::uint64_t countRootedSubtrees(const Ball& b, int sources, int sinks) {
    std::uint64_t count = 0;
    std::vector<char> inSet(b.parent.size(), 0), banned(b.parent.size(), 0);
    std::function<void(std::vector<int>, int, int)> grow = [&](std::vector<int> frontier, int src, int snk) {
        if (src == sources && snk == sinks) {
            ++count;
            return;
        }
        // Pick frontier vertices in order; each choice bans the earlier ones
        // so every set is produced exactly once.
        std::vector<int> bannedHere;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const int v = frontier[i];
            const bool s = b.isSource(v);
            if ((s && src < sources) || (!s && snk < sinks)) {
                inSet[v] = 1;
                std::vector<int> next(frontier.begin() + static_cast<long>(i) + 1, frontier.end());
                for (int w : b.adj[v])
                    if (!inSet[w] && !banned[w] &&
                        std::find(next.begin(), next.end(), w) == next.end())
                        next.push_back(w);
                grow(next, src + (s ? 1 : 0), snk + (s ? 0 : 1));
                inSet[v] = 0;
            }
            banned[v] = 1;
            bannedHere.push_back(v);
        }
        for (int v : bannedHere) banned[v] = 0;
    };
    inSet[0] = 1;
    grow(std::vector<int>(b.adj[0].begin(), b.adj[0].end()), 0, 1);
    return count;
}

// Classes of subtrees with x >= 0 sources and y >= 1 sinks: each class has
// exactly y translates through a fixed sink.
inline std::uint64_t countClasses(int n, int x, int y) {
    if (y == 0) return x == 1 ? 1 : 0;
    const Ball b = buildBall(n, x + y);
    const std::uint64_t rooted = countRootedSubtrees(b, x, y);
    return rooted / static_cast<std::uint64_t>(y);
}

// Label- and color-preserving embedding search: is there a bijection between
// the vertex sets that respects colors and labelled adjacency?
inline bool sameUpToTranslation(const kronrep::LabeledSubtree& a, const kronrep::LabeledSubtree& b) {
    if (a.size() != b.size() || a.sourceCount() != b.sourceCount()) return false;
    using Adj = std::map<std::pair<std::size_t, int>, std::size_t>;
    auto adjacency = [](const kronrep::LabeledSubtree& t) {
        Adj adj;
        auto idx = [&](const kronrep::CoverVertex& v) {
            return static_cast<std::size_t>(std::lower_bound(t.vertices().begin(), t.vertices().end(), v) -
                                            t.vertices().begin());
        };
        for (const auto& e : t.edges()) {
            adj[{idx(e.source), e.label}] = idx(e.sink);
            adj[{idx(e.sink), e.label}] = idx(e.source);
        }
        return adj;
    };
    const Adj adjA = adjacency(a), adjB = adjacency(b);
    const int n = a.arrows().value();
    for (std::size_t start = 0; start < b.size(); ++start) {
        if (b.vertices()[start].color() != a.vertices()[0].color()) continue;
        std::vector<long> image(a.size(), -1);
        std::vector<char> used(b.size(), 0);
        image[0] = static_cast<long>(start);
        used[start] = 1;
        std::vector<std::size_t> stack{0};
        bool ok = true;
        while (ok && !stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (int label = 1; label <= n && ok; ++label) {
                auto ia = adjA.find({v, label});
                auto ib = adjB.find({static_cast<std::size_t>(image[v]), label});
                if ((ia == adjA.end()) != (ib == adjB.end())) {
                    ok = false;
                } else if (ia != adjA.end()) {
                    const std::size_t w = ia->second;
                    if (image[w] == -1) {
                        if (used[ib->second]) ok = false;
                        image[w] = static_cast<long>(ib->second);
                        used[ib->second] = 1;
                        stack.push_back(w);
                    } else if (image[w] != static_cast<long>(ib->second)) {
                        ok = false;
                    }
                }
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace oracle
