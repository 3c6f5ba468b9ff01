#ifndef GNC_ISOCLINISM_HPP
#define GNC_ISOCLINISM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gnc/group.hpp"

namespace gnc {

// G/Z for a central subgroup Z, materialized as a FiniteGroup on the
// smallest-id coset representatives.
struct Quotient {
    FiniteGroup group;
    std::vector<ElementId> representative; // quotient id -> parent id
    std::vector<int> coset_of;             // parent id -> quotient id
};

Quotient quotient_by_central(const FiniteGroup& G, const ElementSet& Z);

// A verified relative isoclinism between (H1, G1) and (H2, G2): an
// isomorphism phi of the central quotients carrying H1/Z(H1,G1) onto
// H2/Z(H2,G2), together with the isomorphism psi of the relative commutator
// subgroups forced by the commutator-map square. phi is stored through two
// aligned transversals (H-cosets first); psi as id pairs over [H1,G1].
struct IsoclinismWitness {
    Subgroup h1;
    Subgroup h2;
    ElementSet center1; // Z(H1, G1)
    ElementSet center2; // Z(H2, G2)
    ElementSet commutator1; // [H1, G1] members
    ElementSet commutator2; // [H2, G2] members
    std::vector<ElementId> transversal1;
    std::vector<ElementId> transversal2; // transversal2[i] represents phi(coset of transversal1[i])
    int h_coset_count;
    std::vector<std::pair<ElementId, ElementId>> psi;

    ElementId psi_of(ElementId x) const;

    // Re-checks every invariant from scratch: transversal structure, phi a
    // quotient isomorphism respecting the H-blocks, psi an isomorphism, and
    // the commuting square on all coset pairs.
    bool verify() const;
};

// Exhaustive witness search; first match in deterministic candidate order.
// Capped at |G1|, |G2| <= 16.
std::optional<IsoclinismWitness> find_relative_isoclinism(const Subgroup& H1,
                                                          const Subgroup& H2);

struct ConjugateGraphIso {
    ElementId mapped_g;           // x^{-1} g x
    std::vector<int> mapping;     // vertex bijection a -> x^{-1} a x
};

// For normal H: the conjugation map a -> x^{-1} a x, verified to be an
// isomorphism from the graph for g onto the graph for x^{-1} g x by full
// adjacency comparison. Throws SubgroupNotNormal / VerificationFailed.
ConjugateGraphIso conjugate_g_graph_iso(const Subgroup& H, ElementId g, ElementId x);

struct IsoclinismGraphIso {
    ElementId mapped_g;           // psi(g)
    std::vector<int> mapping;     // vertex bijection G1 -> G2
};

// The bijection mu(t z) = t' theta(z) built from the witness transversals and
// the sorted-order bijection theta between the relative centers, verified
// edge-preserving between the graph for g over (H1, G1) and the graph for
// psi(g) over (H2, G2). Requires |Z(H1,G1)| = |Z(H2,G2)| and g in [H1, G1].
IsoclinismGraphIso isoclinism_graph_iso(const IsoclinismWitness& w, ElementId g);

} // namespace gnc

#endif
