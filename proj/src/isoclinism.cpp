#include "gnc/isoclinism.hpp"

#include <algorithm>
#include <map>

#include "gnc/relgraph.hpp"

namespace gnc {

Quotient quotient_by_central(const FiniteGroup& G, const ElementSet& Z) {
    const int n = G.order();
    std::vector<int> coset_of(static_cast<size_t>(n), -1);
    std::vector<ElementId> reps;
    for (int x = 0; x < n; ++x) {
        if (coset_of[static_cast<size_t>(x)] >= 0) continue;
        const int q = static_cast<int>(reps.size());
        reps.push_back(x); // first unseen id is the smallest in its coset
        for (ElementId z : Z) coset_of[static_cast<size_t>(G.mul(x, z))] = q;
    }
    const int m = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(static_cast<size_t>(m),
                                        std::vector<int>(static_cast<size_t>(m)));
    std::vector<std::string> labels(static_cast<size_t>(m));
    for (int a = 0; a < m; ++a) {
        labels[static_cast<size_t>(a)] = G.label(reps[static_cast<size_t>(a)]) + "Z";
        for (int b = 0; b < m; ++b)
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] = coset_of[static_cast<size_t>(
                G.mul(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]))];
    }
    Quotient q{FiniteGroup::from_cayley_table(std::move(table), std::move(labels)),
               std::move(reps), std::move(coset_of)};
    return q;
}

namespace {

// Extends generator images to a full homomorphism by breadth-first closure;
// nullopt on conflict. The result still needs the bijectivity/product check.
std::optional<std::vector<int>> extend_hom(const FiniteGroup& A, const FiniteGroup& B,
                                           const std::vector<ElementId>& gens,
                                           const std::vector<ElementId>& images) {
    std::vector<int> map(static_cast<size_t>(A.order()), -1);
    map[0] = 0;
    std::vector<ElementId> queue{0};
    for (size_t head = 0; head < queue.size(); ++head) {
        const ElementId a = queue[head];
        for (size_t i = 0; i < gens.size(); ++i) {
            const ElementId next = A.mul(a, gens[i]);
            const ElementId image = B.mul(map[static_cast<size_t>(a)], images[i]);
            if (map[static_cast<size_t>(next)] < 0) {
                map[static_cast<size_t>(next)] = image;
                queue.push_back(next);
            } else if (map[static_cast<size_t>(next)] != image) {
                return std::nullopt;
            }
        }
    }
    for (int v : map)
        if (v < 0) return std::nullopt; // gens failed to generate A
    return map;
}

bool is_isomorphism(const FiniteGroup& A, const FiniteGroup& B, const std::vector<int>& map) {
    std::vector<char> hit(static_cast<size_t>(B.order()), 0);
    for (int v : map) {
        if (hit[static_cast<size_t>(v)]) return false;
        hit[static_cast<size_t>(v)] = 1;
    }
    for (int a = 0; a < A.order(); ++a)
        for (int b = 0; b < A.order(); ++b)
            if (map[static_cast<size_t>(A.mul(a, b))] !=
                B.mul(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]))
                return false;
    return true;
}

std::vector<ElementId> generating_sequence(const FiniteGroup& G) {
    std::vector<ElementId> gens;
    ElementSet closure{0};
    while (static_cast<int>(closure.size()) < G.order()) {
        for (int x = 1; x < G.order(); ++x) {
            if (!set_contains(closure, x)) {
                gens.push_back(x);
                closure = generated_subgroup(G, gens).members();
                break;
            }
        }
    }
    return gens;
}

// Calls fn for each isomorphism A -> B (as a full image map) until fn
// returns true. Candidate images are tried in ascending id order.
bool for_each_isomorphism(const FiniteGroup& A, const FiniteGroup& B,
                          const std::vector<ElementId>& gens, std::vector<ElementId>& images,
                          size_t depth, auto&& fn) {
    if (depth == gens.size()) {
        const auto map = extend_hom(A, B, gens, images);
        if (!map || !is_isomorphism(A, B, *map)) return false;
        return fn(*map);
    }
    const int want_order = A.element_order(gens[depth]);
    for (int cand = 0; cand < B.order(); ++cand) {
        if (B.element_order(cand) != want_order) continue;
        images[depth] = cand;
        if (for_each_isomorphism(A, B, gens, images, depth + 1, fn)) return true;
    }
    return false;
}

} // namespace

ElementId IsoclinismWitness::psi_of(ElementId x) const {
    for (const auto& [from, to] : psi)
        if (from == x) return to;
    throw HypothesisNotMet("element " + std::to_string(x) + " is not in [H1,G1]");
}

bool IsoclinismWitness::verify() const {
    const FiniteGroup& G1 = h1.parent();
    const FiniteGroup& G2 = h2.parent();

    if (relative_center(h1) != center1 || relative_center(h2) != center2) return false;
    if (relative_commutator_subgroup(h1).members() != commutator1) return false;
    if (relative_commutator_subgroup(h2).members() != commutator2) return false;

    // Transversals decompose each group as the disjoint union of t Z.
    const size_t q = transversal1.size();
    if (transversal2.size() != q) return false;
    if (q * center1.size() != static_cast<size_t>(G1.order())) return false;
    if (q * center2.size() != static_cast<size_t>(G2.order())) return false;
    std::vector<char> seen1(static_cast<size_t>(G1.order()), 0);
    std::vector<char> seen2(static_cast<size_t>(G2.order()), 0);
    for (size_t i = 0; i < q; ++i) {
        for (ElementId z : center1) seen1[static_cast<size_t>(G1.mul(transversal1[i], z))] = 1;
        for (ElementId z : center2) seen2[static_cast<size_t>(G2.mul(transversal2[i], z))] = 1;
    }
    if (std::count(seen1.begin(), seen1.end(), 1) != G1.order()) return false;
    if (std::count(seen2.begin(), seen2.end(), 1) != G2.order()) return false;

    // The first h_coset_count slots carry exactly the H-cosets on both sides.
    for (size_t i = 0; i < q; ++i) {
        const bool in1 = h1.contains(transversal1[i]);
        const bool in2 = h2.contains(transversal2[i]);
        if (in1 != (static_cast<int>(i) < h_coset_count) || in1 != in2) return false;
    }

    // phi, read off the aligned transversals, must be a quotient isomorphism.
    const Quotient q1 = quotient_by_central(G1, center1);
    const Quotient q2 = quotient_by_central(G2, center2);
    if (q1.group.order() != static_cast<int>(q) || q2.group.order() != static_cast<int>(q))
        return false;
    std::vector<int> phi(q, -1);
    for (size_t i = 0; i < q; ++i) {
        const int from = q1.coset_of[static_cast<size_t>(transversal1[i])];
        const int to = q2.coset_of[static_cast<size_t>(transversal2[i])];
        if (phi[static_cast<size_t>(from)] >= 0) return false;
        phi[static_cast<size_t>(from)] = to;
    }
    if (!is_isomorphism(q1.group, q2.group, phi)) return false;

    // psi must be an isomorphism [H1,G1] -> [H2,G2] ...
    if (psi.size() != commutator1.size()) return false;
    std::map<ElementId, ElementId> psi_map;
    std::vector<char> hit(static_cast<size_t>(G2.order()), 0);
    for (const auto& [from, to] : psi) {
        if (!set_contains(commutator1, from) || !set_contains(commutator2, to)) return false;
        if (hit[static_cast<size_t>(to)]) return false;
        hit[static_cast<size_t>(to)] = 1;
        psi_map[from] = to;
    }
    if (psi_map.size() != commutator1.size()) return false;
    for (ElementId a : commutator1)
        for (ElementId b : commutator1)
            if (psi_map.at(G1.mul(a, b)) != G2.mul(psi_map.at(a), psi_map.at(b))) return false;

    // ... making the commutator-map square commute on every coset pair.
    for (int i = 0; i < h_coset_count; ++i)
        for (size_t j = 0; j < q; ++j) {
            const ElementId k1 = G1.commutator(transversal1[static_cast<size_t>(i)],
                                               transversal1[j]);
            const ElementId k2 = G2.commutator(transversal2[static_cast<size_t>(i)],
                                               transversal2[j]);
            if (psi_map.at(k1) != k2) return false;
        }
    return true;
}

std::optional<IsoclinismWitness> find_relative_isoclinism(const Subgroup& H1,
                                                          const Subgroup& H2) {
    const FiniteGroup& G1 = H1.parent();
    const FiniteGroup& G2 = H2.parent();
    if (G1.order() > 16 || G2.order() > 16)
        throw TooLarge("isoclinism search capped at order 16");

    const ElementSet z1 = relative_center(H1);
    const ElementSet z2 = relative_center(H2);
    const Subgroup k1 = relative_commutator_subgroup(H1);
    const Subgroup k2 = relative_commutator_subgroup(H2);

    if (static_cast<size_t>(G1.order()) * z2.size() !=
        static_cast<size_t>(G2.order()) * z1.size())
        return std::nullopt;
    if (static_cast<size_t>(H1.order()) * z2.size() !=
        static_cast<size_t>(H2.order()) * z1.size())
        return std::nullopt;
    if (k1.order() != k2.order()) return std::nullopt;

    const Quotient q1 = quotient_by_central(G1, z1);
    const Quotient q2 = quotient_by_central(G2, z2);

    std::vector<char> h_block1(static_cast<size_t>(q1.group.order()), 0);
    std::vector<char> h_block2(static_cast<size_t>(q2.group.order()), 0);
    for (ElementId x : H1.members()) h_block1[static_cast<size_t>(q1.coset_of[static_cast<size_t>(x)])] = 1;
    for (ElementId x : H2.members()) h_block2[static_cast<size_t>(q2.coset_of[static_cast<size_t>(x)])] = 1;

    std::optional<IsoclinismWitness> result;
    const std::vector<ElementId> gens = generating_sequence(q1.group);
    std::vector<ElementId> images(gens.size(), 0);

    for_each_isomorphism(q1.group, q2.group, gens, images, 0, [&](const std::vector<int>& phi) {
        for (int a = 0; a < q1.group.order(); ++a)
            if (h_block1[static_cast<size_t>(a)] != h_block2[static_cast<size_t>(phi[static_cast<size_t>(a)])])
                return false;

        // The square forces psi on commutator values; close the forced pairs
        // under products and accept when they graph an isomorphism.
        std::map<ElementId, ElementId> psi_map;
        for (int a = 0; a < q1.group.order(); ++a) {
            if (!h_block1[static_cast<size_t>(a)]) continue;
            for (int b = 0; b < q1.group.order(); ++b) {
                const ElementId k = G1.commutator(q1.representative[static_cast<size_t>(a)],
                                                  q1.representative[static_cast<size_t>(b)]);
                const ElementId kk =
                    G2.commutator(q2.representative[static_cast<size_t>(phi[static_cast<size_t>(a)])],
                                  q2.representative[static_cast<size_t>(phi[static_cast<size_t>(b)])]);
                auto [it, inserted] = psi_map.try_emplace(k, kk);
                if (!inserted && it->second != kk) return false;
            }
        }
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [a, aa] : psi_map)
                for (const auto& [b, bb] : psi_map) {
                    const ElementId ab = G1.mul(a, b);
                    const ElementId image = G2.mul(aa, bb);
                    auto [it, inserted] = psi_map.try_emplace(ab, image);
                    if (!inserted && it->second != image) return false;
                    if (inserted) grew = true;
                }
        }
        if (psi_map.size() != static_cast<size_t>(k1.order())) return false;
        std::vector<char> hit(static_cast<size_t>(G2.order()), 0);
        for (const auto& [from, to] : psi_map) {
            if (!k2.contains(to) || hit[static_cast<size_t>(to)]) return false;
            hit[static_cast<size_t>(to)] = 1;
        }

        IsoclinismWitness w{H1, H2, z1, z2, k1.members(), k2.members(), {}, {}, 0, {}};
        for (int pass = 0; pass < 2; ++pass)
            for (int a = 0; a < q1.group.order(); ++a) {
                if ((pass == 0) != (h_block1[static_cast<size_t>(a)] != 0)) continue;
                w.transversal1.push_back(q1.representative[static_cast<size_t>(a)]);
                w.transversal2.push_back(
                    q2.representative[static_cast<size_t>(phi[static_cast<size_t>(a)])]);
            }
        w.h_coset_count = static_cast<int>(H1.order() / z1.size());
        w.psi.assign(psi_map.begin(), psi_map.end());
        result = std::move(w);
        return true;
    });
    return result;
}

ConjugateGraphIso conjugate_g_graph_iso(const Subgroup& H, ElementId g, ElementId x) {
    if (!H.is_normal()) throw SubgroupNotNormal("conjugate-g isomorphism needs H normal in G");
    const FiniteGroup& G = H.parent();
    const ElementId h = G.conjugate(g, x);

    std::vector<int> mapping(static_cast<size_t>(G.order()));
    for (int a = 0; a < G.order(); ++a) mapping[static_cast<size_t>(a)] = G.conjugate(a, x);

    const RelGraph from(G, H, g);
    const RelGraph to(G, H, h);
    for (int a = 0; a < G.order(); ++a)
        for (int b = a + 1; b < G.order(); ++b)
            if (from.adjacent(a, b) != to.adjacent(mapping[static_cast<size_t>(a)],
                                                   mapping[static_cast<size_t>(b)]))
                throw VerificationFailed("conjugation map failed to preserve adjacency");
    return {h, std::move(mapping)};
}

IsoclinismGraphIso isoclinism_graph_iso(const IsoclinismWitness& w, ElementId g) {
    if (w.center1.size() != w.center2.size())
        throw CenterSizeMismatch("relative centers have sizes " +
                                 std::to_string(w.center1.size()) + " and " +
                                 std::to_string(w.center2.size()));
    if (!set_contains(w.commutator1, g))
        throw HypothesisNotMet("g must lie in [H1,G1]");

    const FiniteGroup& G1 = w.h1.parent();
    const FiniteGroup& G2 = w.h2.parent();
    const ElementId psi_g = w.psi_of(g);

    // theta: sorted-order bijection between the relative centers.
    std::vector<int> mapping(static_cast<size_t>(G1.order()), -1);
    for (size_t i = 0; i < w.transversal1.size(); ++i)
        for (size_t zi = 0; zi < w.center1.size(); ++zi)
            mapping[static_cast<size_t>(G1.mul(w.transversal1[i], w.center1[zi]))] =
                G2.mul(w.transversal2[i], w.center2[zi]);

    const RelGraph from(G1, w.h1, g);
    const RelGraph to(G2, w.h2, psi_g);
    for (int a = 0; a < G1.order(); ++a)
        for (int b = a + 1; b < G1.order(); ++b)
            if (from.adjacent(a, b) != to.adjacent(mapping[static_cast<size_t>(a)],
                                                   mapping[static_cast<size_t>(b)]))
                throw VerificationFailed("isoclinism map failed to preserve adjacency");
    return {psi_g, std::move(mapping)};
}

} // namespace gnc
