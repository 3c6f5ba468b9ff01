#ifndef GNC_FORMULAS_HPP
#define GNC_FORMULAS_HPP

#include <string>
#include <utility>
#include <vector>

#include "gnc/group.hpp"
#include "gnc/rational.hpp"

namespace gnc {

// Probability that a uniform pair (x, y) in H x G has [x, y] = g.
Rational pr_g(const Subgroup& H, ElementId g);

// Same over H x H (the single-group form applied to H).
Rational pr_g_self(const Subgroup& H, ElementId g);

// Number of pairs (x, y) in `xs` x `ys` with [x, y] = g.
long long commutator_pair_count(const FiniteGroup& G, std::span<const ElementId> xs,
                                std::span<const ElementId> ys, ElementId g);

struct DegreePrediction {
    enum CaseTag { GNotInK, G1, CentralVertex, ConjOne, ConjBoth, NoWitness };

    ElementId vertex;
    CaseTag case_tag;
    int value;
};

std::string to_string(DegreePrediction::CaseTag tag);

// Closed-form degree of vertex x, selected by (g in K(H,G)?, g = 1?, x in H?)
// and by which of xg, xg^{-1} the vertex is conjugate to. Total over all
// inputs: with no realized conjugacy target the degree is |G|-1 (x in H)
// or |H| (x outside H).
DegreePrediction degree_formula(const Subgroup& H, ElementId g, ElementId x);
DegreePrediction degree_formula(const Subgroup& H, ElementId g, ElementId x, bool g_in_k);

struct EdgePrediction {
    std::string formula_id; // Obs1.1 | Thm3.1a | Thm3.1b | Thm3.1c | Cor3.2 |
                            // Prop_p | Prop_normal_g1 | Cor3.6a
    std::string case_label; // formula_id plus the realized sub-case suffix
    Rational value;         // predicted |E|
    std::vector<std::pair<std::string, bool>> hypotheses;

    bool hypotheses_met() const {
        for (const auto& [name, ok] : hypotheses)
            if (!ok) return false;
        return true;
    }
};

// Edge count by case: g outside K(H,G) first, then g = 1, then g^2 = 1, then
// g^2 != 1; the last two split on g in H. Exact on every instance.
EdgePrediction edge_count_formula(const Subgroup& H, ElementId g);

// Abelian-H specialization. Throws HypothesisNotMet when H is non-abelian.
EdgePrediction edge_count_abelian_H(const Subgroup& H, ElementId g);

// |[H,G]| = p specialization; requires p prime and either p the smallest
// prime dividing |G| or G nilpotent (the relaxation). Throws HypothesisNotMet
// otherwise; g in K(H,G) is recorded as a hypothesis flag.
EdgePrediction edge_count_p_case(const Subgroup& H, ElementId g);

// Normal-H, g = 1 formula exactly as printed, using the class count of H as
// a group. Diagnostic: the printed value equals the true edge count exactly
// when every parent-conjugacy class inside H is a single H-class; that
// condition is reported in the hypotheses, not assumed.
EdgePrediction edge_count_normal_g1(const Subgroup& H);

// 2|E| over the whole group with g = 1 equals |G| (|G| - k(G)).
EdgePrediction class_count_edge_identity(const FiniteGroup& G);

struct BoundAudit {
    std::string bound_id;
    Rational lhs;
    Rational rhs;
    bool is_upper;                 // direction of the stated inequality
    bool holds;                    // exact comparison in that direction
    bool primitive_hypothesis_met; // primitives re-verified on this instance

    bool operator==(const BoundAudit&) const = default;
};

// Evaluates every edge-count bound applicable to the instance (g != 1),
// plus the primitive probability inequalities they are derived from.
// Primitive rows carry their own applicability gate in
// primitive_hypothesis_met (the Pr_g(H) lower bound needs g in K(H,H), the
// upper bounds on 1 - Pr_g(H,G) need g in K(H,G)); derived rows report
// whether all primitives they cite hold numerically here.
std::vector<BoundAudit> audit_bounds(const Subgroup& H, ElementId g);

} // namespace gnc

#endif
