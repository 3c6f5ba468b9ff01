#ifndef GNC_RELGRAPH_HPP
#define GNC_RELGRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gnc/group.hpp"

namespace gnc {

struct ShapeClass {
    enum Kind {
        EmptyGraph,
        CompleteGraph,
        Star,
        Tree,
        Lollipop,
        JoinCompleteWithIsolatedRest,
        Other,
    };

    Kind kind = Other;
    // Star: a = center vertex. Lollipop: a = clique size, b = path length.
    // Join: a = number of universal vertices.
    int a = -1;
    int b = -1;

    bool operator==(const ShapeClass&) const = default;
    std::string str() const;
};

// Undirected simple graph over vertices 0..n-1 as packed adjacency bit rows.
class SimpleGraph {
public:
    explicit SimpleGraph(int n);

    int vertex_count() const { return n_; }
    void add_edge(int x, int y);
    bool adjacent(int x, int y) const {
        return (rows_[static_cast<size_t>(x) * words_ + static_cast<size_t>(y) / 64] >>
                (static_cast<size_t>(y) % 64)) & 1u;
    }

    int degree(int x) const;
    int edge_count() const;
    bool is_connected() const;
    bool is_triangle_free() const;

    // Classes are tested in a fixed order (Empty, Complete, Star, Tree,
    // Lollipop, Join, Other); the first match is reported.
    ShapeClass classify_shape() const;

    // Exact minimum dominating set size; n for the edgeless graph.
    // Branch-and-bound over closed neighborhoods; capped at 24 vertices.
    int domination_number() const;

private:
    int n_;
    size_t words_;
    std::vector<uint64_t> rows_;
};

// The graph on vertex set G where distinct x, y are adjacent iff at least one
// of them lies in H and [x, y] is neither g nor g^{-1}. No edge ever joins
// two vertices outside H. Immutable after construction; queries are pure.
class RelGraph {
public:
    RelGraph(const FiniteGroup& G, const Subgroup& H, ElementId g);

    const FiniteGroup& group() const { return *group_; }
    const ElementSet& h_members() const { return h_members_; }
    ElementId g_elem() const { return g_; }
    const SimpleGraph& graph() const { return graph_; }

    int vertex_count() const { return graph_.vertex_count(); }
    bool adjacent(int x, int y) const { return graph_.adjacent(x, y); }
    int degree(int x) const { return graph_.degree(x); }
    int edge_count() const { return graph_.edge_count(); }
    bool is_connected() const { return graph_.is_connected(); }
    bool is_triangle_free() const { return graph_.is_triangle_free(); }
    ShapeClass classify_shape() const { return graph_.classify_shape(); }
    int domination_number() const { return graph_.domination_number(); }

    // Deterministic DOT text: vertices in id order (H members drawn as boxes),
    // edges sorted by (min id, max id). Repeated exports are byte-identical.
    std::string to_dot() const;
    void export_dot(const std::string& path) const;

private:
    const FiniteGroup* group_;
    ElementSet h_members_;
    ElementId g_;
    SimpleGraph graph_;
};

// A vertex bijection preserving adjacency both ways, or nullopt. Backtracking
// over degree-compatible candidates; capped at 24 vertices per graph.
std::optional<std::vector<int>> graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b);
std::optional<std::vector<int>> graphs_isomorphic(const RelGraph& a, const RelGraph& b);

} // namespace gnc

#endif
