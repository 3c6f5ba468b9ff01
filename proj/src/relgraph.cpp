#include "gnc/relgraph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>

namespace gnc {

std::string ShapeClass::str() const {
    switch (kind) {
        case EmptyGraph: return "Empty";
        case CompleteGraph: return "Complete";
        case Star: return "Star(center=" + std::to_string(a) + ")";
        case Tree: return "Tree";
        case Lollipop:
            return "Lollipop(clique=" + std::to_string(a) + ",path=" + std::to_string(b) + ")";
        case JoinCompleteWithIsolatedRest:
            return "JoinCompleteWithIsolatedRest(core=" + std::to_string(a) + ")";
        case Other: return "Other";
    }
    return "Other";
}

SimpleGraph::SimpleGraph(int n)
    : n_(n), words_((static_cast<size_t>(n) + 63) / 64),
      rows_(static_cast<size_t>(n) * words_, 0) {}

void SimpleGraph::add_edge(int x, int y) {
    if (x == y) return;
    rows_[static_cast<size_t>(x) * words_ + static_cast<size_t>(y) / 64] |=
        uint64_t{1} << (static_cast<size_t>(y) % 64);
    rows_[static_cast<size_t>(y) * words_ + static_cast<size_t>(x) / 64] |=
        uint64_t{1} << (static_cast<size_t>(x) % 64);
}

int SimpleGraph::degree(int x) const {
    int d = 0;
    for (size_t w = 0; w < words_; ++w)
        d += std::popcount(rows_[static_cast<size_t>(x) * words_ + w]);
    return d;
}

int SimpleGraph::edge_count() const {
    int total = 0;
    for (int x = 0; x < n_; ++x) total += degree(x);
    return total / 2;
}

bool SimpleGraph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n_; ++u) {
            if (!seen[static_cast<size_t>(u)] && adjacent(v, u)) {
                seen[static_cast<size_t>(u)] = 1;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    return visited == n_;
}

bool SimpleGraph::is_triangle_free() const {
    for (int x = 0; x < n_; ++x)
        for (int y = x + 1; y < n_; ++y) {
            if (!adjacent(x, y)) continue;
            for (size_t w = 0; w < words_; ++w) {
                uint64_t common = rows_[static_cast<size_t>(x) * words_ + w] &
                                  rows_[static_cast<size_t>(y) * words_ + w];
                if (w == static_cast<size_t>(x) / 64) common &= ~(uint64_t{1} << (x % 64));
                if (w == static_cast<size_t>(y) / 64) common &= ~(uint64_t{1} << (y % 64));
                if (common) return false;
            }
        }
    return true;
}

ShapeClass SimpleGraph::classify_shape() const {
    const int m = edge_count();
    if (m == 0) return {ShapeClass::EmptyGraph};
    if (2 * m == n_ * (n_ - 1)) return {ShapeClass::CompleteGraph};

    const bool connected = is_connected();
    if (connected && m == n_ - 1) {
        for (int v = 0; v < n_; ++v)
            if (degree(v) == n_ - 1) return {ShapeClass::Star, v};
        return {ShapeClass::Tree};
    }

    // Lollipop: K_a (a >= 3) with a path of b >= 1 vertices hanging off one
    // clique vertex. Walk in from the unique leaf; the rest must be a clique.
    if (connected) {
        std::vector<int> leaves;
        for (int v = 0; v < n_; ++v)
            if (degree(v) == 1) leaves.push_back(v);
        if (leaves.size() == 1) {
            std::vector<char> on_path(static_cast<size_t>(n_), 0);
            int path_len = 0;
            int v = leaves.front(), prev = -1;
            while (degree(v) <= 2 && !on_path[static_cast<size_t>(v)]) {
                on_path[static_cast<size_t>(v)] = 1;
                ++path_len;
                int next = -1;
                for (int u = 0; u < n_; ++u)
                    if (u != prev && adjacent(v, u)) next = u;
                if (next < 0) break;
                prev = v;
                v = next;
            }
            const int clique_size = n_ - path_len;
            if (clique_size >= 3 && path_len >= 1 && !on_path[static_cast<size_t>(v)]) {
                bool clique_ok = true;
                for (int x = 0; x < n_ && clique_ok; ++x) {
                    if (on_path[static_cast<size_t>(x)]) continue;
                    for (int y = x + 1; y < n_ && clique_ok; ++y)
                        if (!on_path[static_cast<size_t>(y)]) clique_ok = adjacent(x, y);
                }
                if (clique_ok && m == clique_size * (clique_size - 1) / 2 + path_len)
                    return {ShapeClass::Lollipop, clique_size, path_len};
            }
        }
    }

    // K_a joined with an edgeless rest: the universal vertices form the core
    // and everything else must be pairwise non-adjacent.
    {
        std::vector<char> universal(static_cast<size_t>(n_), 0);
        int core = 0;
        for (int v = 0; v < n_; ++v)
            if (degree(v) == n_ - 1) {
                universal[static_cast<size_t>(v)] = 1;
                ++core;
            }
        if (core > 0) {
            bool rest_isolated = true;
            for (int x = 0; x < n_ && rest_isolated; ++x) {
                if (universal[static_cast<size_t>(x)]) continue;
                for (int y = x + 1; y < n_ && rest_isolated; ++y)
                    if (!universal[static_cast<size_t>(y)]) rest_isolated = !adjacent(x, y);
            }
            if (rest_isolated) return {ShapeClass::JoinCompleteWithIsolatedRest, core};
        }
    }

    return {ShapeClass::Other};
}

namespace {

bool dominates_within(int budget, uint64_t covered, uint64_t all,
                      const std::vector<uint64_t>& closed) {
    if (covered == all) return true;
    if (budget == 0) return false;
    // Any dominating set must hit the closed neighborhood of an uncovered
    // vertex; branch on the one with the fewest candidates.
    const int n = static_cast<int>(closed.size());
    int pick = -1, pick_size = n + 2;
    for (int v = 0; v < n; ++v) {
        if ((covered >> v) & 1u) continue;
        const int size = std::popcount(closed[static_cast<size_t>(v)]);
        if (size < pick_size) {
            pick = v;
            pick_size = size;
        }
    }
    uint64_t candidates = closed[static_cast<size_t>(pick)];
    while (candidates) {
        const int c = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if (dominates_within(budget - 1, covered | closed[static_cast<size_t>(c)], all, closed))
            return true;
    }
    return false;
}

} // namespace

int SimpleGraph::domination_number() const {
    if (n_ > 24) throw TooLarge("domination number search capped at 24 vertices");
    if (n_ == 0) return 0;
    const uint64_t all = (uint64_t{1} << n_) - 1;
    std::vector<uint64_t> closed(static_cast<size_t>(n_));
    for (int v = 0; v < n_; ++v)
        closed[static_cast<size_t>(v)] =
            rows_[static_cast<size_t>(v) * words_] | (uint64_t{1} << v);
    for (int k = 1; k <= n_; ++k)
        if (dominates_within(k, 0, all, closed)) return k;
    return n_;
}

RelGraph::RelGraph(const FiniteGroup& G, const Subgroup& H, ElementId g)
    : group_(&G), h_members_(H.members()), g_(g), graph_(G.order()) {
    const ElementId ginv = G.inv(g);
    const int n = G.order();
    for (int x = 0; x < n; ++x) {
        const bool xh = H.contains(x);
        for (int y = x + 1; y < n; ++y) {
            if (!xh && !H.contains(y)) continue;
            const ElementId c = G.commutator(x, y);
            if (c != g && c != ginv) graph_.add_edge(x, y);
        }
    }
}

std::string RelGraph::to_dot() const {
    const int n = vertex_count();
    std::string out = "graph relgraph {\n";
    for (int v = 0; v < n; ++v) {
        std::string escaped;
        for (char c : group_->label(v)) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out += "  n" + std::to_string(v) + " [label=\"" + escaped + "\", shape=" +
               (set_contains(h_members_, v) ? "box" : "ellipse") + "];\n";
    }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (adjacent(x, y))
                out += "  n" + std::to_string(x) + " -- n" + std::to_string(y) + ";\n";
    out += "}\n";
    return out;
}

void RelGraph::export_dot(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot open '" + path + "' for writing");
    out << to_dot();
    if (!out) throw FileError("write to '" + path + "' failed");
}

namespace {

bool extend_isomorphism(const SimpleGraph& a, const SimpleGraph& b,
                        const std::vector<int>& order, size_t depth, std::vector<int>& map,
                        std::vector<char>& used) {
    const int n = a.vertex_count();
    if (depth == order.size()) return true;
    const int v = order[depth];
    for (int cand = 0; cand < n; ++cand) {
        if (used[static_cast<size_t>(cand)] || b.degree(cand) != a.degree(v)) continue;
        bool consistent = true;
        for (size_t i = 0; i < depth && consistent; ++i)
            consistent =
                a.adjacent(v, order[i]) == b.adjacent(cand, map[static_cast<size_t>(order[i])]);
        if (!consistent) continue;
        map[static_cast<size_t>(v)] = cand;
        used[static_cast<size_t>(cand)] = 1;
        if (extend_isomorphism(a, b, order, depth + 1, map, used)) return true;
        used[static_cast<size_t>(cand)] = 0;
    }
    map[static_cast<size_t>(v)] = -1;
    return false;
}

} // namespace

std::optional<std::vector<int>> graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    const int n = a.vertex_count();
    if (n > 24 || b.vertex_count() > 24)
        throw TooLarge("isomorphism search capped at 24 vertices");
    if (n != b.vertex_count()) return std::nullopt;

    std::vector<int> deg_a, deg_b;
    for (int v = 0; v < n; ++v) {
        deg_a.push_back(a.degree(v));
        deg_b.push_back(b.degree(v));
    }
    std::vector<int> sorted_a = deg_a, sorted_b = deg_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return std::nullopt;

    // Place rare-degree vertices first to cut the branching factor.
    std::vector<int> freq(static_cast<size_t>(n), 0);
    for (int d : deg_a) ++freq[static_cast<size_t>(d)];
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        const int fx = freq[static_cast<size_t>(deg_a[static_cast<size_t>(x)])];
        const int fy = freq[static_cast<size_t>(deg_a[static_cast<size_t>(y)])];
        if (fx != fy) return fx < fy;
        return deg_a[static_cast<size_t>(x)] > deg_a[static_cast<size_t>(y)];
    });

    std::vector<int> map(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    if (extend_isomorphism(a, b, order, 0, map, used)) return map;
    return std::nullopt;
}

std::optional<std::vector<int>> graphs_isomorphic(const RelGraph& a, const RelGraph& b) {
    return graphs_isomorphic(a.graph(), b.graph());
}

} // namespace gnc
