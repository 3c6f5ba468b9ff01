#include "gnc/formulas.hpp"

#include <algorithm>
#include <cassert>

namespace gnc {

long long commutator_pair_count(const FiniteGroup& G, std::span<const ElementId> xs,
                                std::span<const ElementId> ys, ElementId g) {
    long long count = 0;
    for (ElementId x : xs)
        for (ElementId y : ys)
            if (G.commutator(x, y) == g) ++count;
    return count;
}

Rational pr_g(const Subgroup& H, ElementId g) {
    const FiniteGroup& G = H.parent();
    const ElementSet all = G.all_elements();
    const long long count = commutator_pair_count(G, H.members(), all, g);
    assert(count == commutator_pair_count(G, H.members(), all, G.inv(g)));
    return Rational(count, static_cast<long long>(H.order()) * G.order());
}

Rational pr_g_self(const Subgroup& H, ElementId g) {
    const FiniteGroup& G = H.parent();
    const long long count = commutator_pair_count(G, H.members(), H.members(), g);
    return Rational(count, static_cast<long long>(H.order()) * H.order());
}

namespace {

// |Z(H)| with H viewed as a group in its own right.
long long subgroup_center_size(const Subgroup& H) {
    const FiniteGroup& G = H.parent();
    long long count = 0;
    for (ElementId x : H.members()) {
        bool central = true;
        for (ElementId y : H.members())
            if (G.mul(x, y) != G.mul(y, x)) {
                central = false;
                break;
            }
        if (central) ++count;
    }
    return count;
}

// Edge count straight from the adjacency definition, kept independent of the
// closed-form path audited here.
long long definition_edge_count(const Subgroup& H, ElementId g) {
    const FiniteGroup& G = H.parent();
    const ElementId ginv = G.inv(g);
    long long edges = 0;
    for (int x = 0; x < G.order(); ++x) {
        const bool xh = H.contains(x);
        for (int y = x + 1; y < G.order(); ++y) {
            if (!xh && !H.contains(y)) continue;
            const ElementId c = G.commutator(x, y);
            if (c != g && c != ginv) ++edges;
        }
    }
    return edges;
}

} // namespace

std::string to_string(DegreePrediction::CaseTag tag) {
    switch (tag) {
        case DegreePrediction::GNotInK: return "GNotInK";
        case DegreePrediction::G1: return "G1";
        case DegreePrediction::CentralVertex: return "CentralVertex";
        case DegreePrediction::ConjOne: return "ConjOne";
        case DegreePrediction::ConjBoth: return "ConjBoth";
        case DegreePrediction::NoWitness: return "NoWitness";
    }
    return "?";
}

DegreePrediction degree_formula(const Subgroup& H, ElementId g, ElementId x) {
    return degree_formula(H, g, x, set_contains(commutator_set(H), g));
}

DegreePrediction degree_formula(const Subgroup& H, ElementId g, ElementId x, bool g_in_k) {
    const FiniteGroup& G = H.parent();
    const int n = G.order();
    const int h = H.order();

    if (!g_in_k)
        return {x, DegreePrediction::GNotInK, H.contains(x) ? n - 1 : h};

    if (g == 0) {
        if (H.contains(x))
            return {x, DegreePrediction::G1,
                    n - static_cast<int>(centralizer(G, x).size())};
        return {x, DegreePrediction::G1,
                h - static_cast<int>(centralizer(G, x, H.members()).size())};
    }

    const ElementId ginv = G.inv(g);
    const ElementId xg = G.mul(x, g);
    const ElementId xginv = G.mul(x, ginv);

    if (H.contains(x)) {
        const ElementSet all = G.all_elements();
        int realized = conjugating_witness(G, x, xg, all).has_value() ? 1 : 0;
        if (ginv != g && conjugating_witness(G, x, xginv, all).has_value()) ++realized;
        const int c = static_cast<int>(centralizer(G, x).size());
        if (realized == 0)
            return {x, c == n ? DegreePrediction::CentralVertex : DegreePrediction::NoWitness,
                    n - 1};
        return {x, realized == 2 ? DegreePrediction::ConjBoth : DegreePrediction::ConjOne,
                n - realized * c - 1};
    }

    int realized = conjugating_witness(G, x, xg, H.members()).has_value() ? 1 : 0;
    if (ginv != g && conjugating_witness(G, x, xginv, H.members()).has_value()) ++realized;
    const int c = static_cast<int>(centralizer(G, x, H.members()).size());
    if (realized == 0) return {x, DegreePrediction::NoWitness, h};
    return {x, realized == 2 ? DegreePrediction::ConjBoth : DegreePrediction::ConjOne,
            h - realized * c};
}

EdgePrediction edge_count_formula(const Subgroup& H, ElementId g) {
    const FiniteGroup& G = H.parent();
    const Rational hh(H.order());
    const Rational nn(G.order());
    const bool g_in_k = set_contains(commutator_set(H), g);

    if (!g_in_k) {
        const Rational two_e = Rational(2) * hh * nn - hh * hh - hh;
        return {"Obs1.1", "Obs1.1", two_e / Rational(2), {}};
    }

    if (g == 0) {
        const Rational two_e = Rational(2) * hh * nn * (Rational(1) - pr_g(H, 0)) -
                               hh * hh * (Rational(1) - pr_g_self(H, 0));
        return {"Thm3.1a", "Thm3.1a", two_e / Rational(2), {}};
    }

    const ElementId ginv = G.inv(g);
    const bool in_h = H.contains(g);
    Rational two_e;
    std::string id, label;
    if (ginv == g) {
        id = "Thm3.1b";
        const Rational pr = pr_g(H, g);
        if (in_h) {
            two_e = Rational(2) * hh * nn * (Rational(1) - pr) -
                    hh * hh * (Rational(1) - pr_g_self(H, g)) - hh;
            label = "Thm3.1b.inH";
        } else {
            two_e = Rational(2) * hh * nn * (Rational(1) - pr) - hh * hh - hh;
            label = "Thm3.1b.notH";
        }
    } else {
        id = "Thm3.1c";
        const Rational sum = pr_g(H, g) + pr_g(H, ginv);
        if (in_h) {
            const Rational sum_self = pr_g_self(H, g) + pr_g_self(H, ginv);
            two_e = Rational(2) * hh * nn * (Rational(1) - sum) -
                    hh * hh * (Rational(1) - sum_self) - hh;
            label = "Thm3.1c.inH";
        } else {
            two_e = Rational(2) * hh * nn * (Rational(1) - sum) - hh * hh - hh;
            label = "Thm3.1c.notH";
        }
    }
    return {id, label, two_e / Rational(2), {}};
}

EdgePrediction edge_count_abelian_H(const Subgroup& H, ElementId g) {
    if (!H.is_abelian()) throw HypothesisNotMet("the abelian-H edge formula needs H abelian");
    const FiniteGroup& G = H.parent();
    const Rational hh(H.order());
    const Rational nn(G.order());
    const bool g_in_k = set_contains(commutator_set(H), g);

    EdgePrediction out;
    out.formula_id = "Cor3.2";
    out.hypotheses = {{"g_in_K", g_in_k}};
    if (g == 0) {
        out.value = hh * nn * (Rational(1) - pr_g(H, 0));
        out.case_label = "Cor3.2.g1";
        return out;
    }
    const ElementId ginv = G.inv(g);
    const Rational sum = ginv == g ? pr_g(H, g) : pr_g(H, g) + pr_g(H, ginv);
    out.value = (Rational(2) * hh * nn * (Rational(1) - sum) - hh * hh - hh) / Rational(2);
    out.case_label = ginv == g ? "Cor3.2.g2eq1" : "Cor3.2.g2ne1";
    return out;
}

EdgePrediction edge_count_p_case(const Subgroup& H, ElementId g) {
    const FiniteGroup& G = H.parent();
    const Subgroup hg = relative_commutator_subgroup(H);
    const int p = hg.order();
    const bool prime = p >= 2 && smallest_prime_factor(p) == p;
    if (!prime)
        throw HypothesisNotMet("|[H,G]| must be prime, got order " + std::to_string(p));
    const bool smallest = p == smallest_prime_factor(G.order());
    if (!smallest && !is_nilpotent(G))
        throw HypothesisNotMet("p must be the smallest prime dividing |G|, or G nilpotent");

    const Rational hh(H.order());
    const Rational nn(G.order());
    const Rational pp(p);
    const Rational z1(static_cast<long long>(relative_center(H).size()));
    const Rational zh(subgroup_center_size(H));

    EdgePrediction out;
    out.formula_id = "Prop_p";
    out.hypotheses = {{"g_in_K", set_contains(commutator_set(H), g)}};

    Rational two_p_e;
    if (g == 0) {
        two_p_e = (pp - Rational(1)) *
                  (Rational(2) * nn * (hh - z1) - hh * (hh - zh));
        out.case_label = "Prop_p.g1";
    } else if (G.inv(g) == g) {
        if (H.contains(g)) {
            two_p_e = Rational(2) * nn * ((pp - Rational(1)) * hh + z1) -
                      hh * ((pp - Rational(1)) * hh + zh + pp);
            out.case_label = "Prop_p.g2eq1.inH";
        } else {
            two_p_e = Rational(2) * nn * ((pp - Rational(1)) * hh + z1) -
                      pp * hh * (hh + Rational(1));
            out.case_label = "Prop_p.g2eq1.notH";
        }
    } else {
        if (H.contains(g)) {
            two_p_e = Rational(2) * nn * ((pp - Rational(2)) * hh + Rational(2) * z1) -
                      hh * ((pp - Rational(2)) * hh + Rational(2) * zh + pp);
            out.case_label = "Prop_p.g2ne1.inH";
        } else {
            two_p_e = Rational(2) * nn * ((pp - Rational(2)) * hh + Rational(2) * z1) -
                      pp * hh * (hh + Rational(1));
            out.case_label = "Prop_p.g2ne1.notH";
        }
    }
    out.value = two_p_e / (Rational(2) * pp);
    return out;
}

EdgePrediction edge_count_normal_g1(const Subgroup& H) {
    if (!H.is_normal()) throw HypothesisNotMet("the class-count edge formula needs H normal in G");
    const FiniteGroup& G = H.parent();
    const int k_h = class_count(H);
    const int k_parent = class_count_under_parent(H);

    EdgePrediction out;
    out.formula_id = "Prop_normal_g1";
    out.case_label = "Prop_normal_g1";
    out.value = Rational(2LL * G.order() - H.order()) * Rational(H.order() - k_h) / Rational(2);
    out.hypotheses = {{"g_classes_match", k_h == k_parent}};
    return out;
}

EdgePrediction class_count_edge_identity(const FiniteGroup& G) {
    const long long n = G.order();
    const long long k = static_cast<long long>(conjugacy_classes(G).size());
    return {"Cor3.6a", "Cor3.6a", Rational(n * (n - k), 2), {}};
}

std::vector<BoundAudit> audit_bounds(const Subgroup& H, ElementId g) {
    if (g == 0) throw HypothesisNotMet("edge-count bounds assume g != 1");
    const FiniteGroup& G = H.parent();

    const Rational hh(H.order());
    const Rational nn(G.order());
    const Rational z1(static_cast<long long>(relative_center(H).size()));
    const Rational z2(static_cast<long long>(cocentralizer(G, H).size()));
    const Rational zh(subgroup_center_size(H));
    const int p_int = smallest_prime_factor(G.order());
    const Rational pp(p_int);

    const ElementId ginv = G.inv(g);
    const bool sq1 = ginv == g;
    const bool in_h = H.contains(g);
    const std::string var = sq1 ? ".g2eq1" : ".g2ne1";
    const std::string side = in_h ? ".inH" : ".notH";

    const bool g_in_khg = set_contains(commutator_set(H), g);
    const bool g_in_khh = [&] {
        std::vector<char> seen(static_cast<size_t>(G.order()), 0);
        for (ElementId x : H.members())
            for (ElementId y : H.members()) seen[static_cast<size_t>(G.commutator(x, y))] = 1;
        return seen[static_cast<size_t>(g)] != 0;
    }();

    const Rational pr = pr_g(H, g);
    const Rational pr_sum = sq1 ? pr : pr + pr_g(H, ginv);
    const Rational prh = pr_g_self(H, g);
    const Rational one(1);

    const Rational edges(definition_edge_count(H, g));

    std::vector<BoundAudit> rows;
    auto add = [&rows](std::string id, Rational lhs, Rational rhs, bool upper, bool gate) {
        const bool holds = upper ? lhs <= rhs : lhs >= rhs;
        rows.push_back({std::move(id), lhs, rhs, upper, holds, gate});
    };

    // Primitive inequalities on the probabilities, cited by the bounds below.
    const Rational one_minus = one - pr_sum;
    const Rational lower_rhs =
        sq1 ? (hh + z1) / (Rational(2) * hh) : z1 / hh;
    add("prim.lowerHG" + var, one_minus, lower_rhs, false, true);

    const Rational upper_rhs =
        (hh * nn - Rational(sq1 ? 2 : 4) * z1 * z2) / (hh * nn);
    add("prim.upperHG" + var, one_minus, upper_rhs, true, g_in_khg);

    add("prim.lowerH3Z", prh, Rational(3) * zh * zh / (hh * hh), false, g_in_khh);
    add("prim.upperH2", prh, (hh - zh) / (Rational(2) * hh), true, true);
    add("prim.upperHp", prh, (hh - zh) / (pp * hh), true, true);

    const Rational p_lower_rhs =
        sq1 ? ((pp - one) * hh + z1) / (pp * hh)
            : ((pp - Rational(2)) * hh + Rational(2) * z1) / (pp * hh);
    add("prim.p.lowerHG" + var, one_minus, p_lower_rhs, false, true);

    const bool prim_lower = rows[0].holds;
    const bool prim_upper = rows[1].holds;
    const bool prim_h3z = rows[2].holds;
    const bool prim_h2 = rows[3].holds;
    const bool prim_hp = rows[4].holds;
    const bool prim_p_lower = rows[5].holds;

    // Derived bounds on |E|; lhs is the instance's true edge count.
    const Rational two(2), three(3), four(4), six(6), eight(8);

    Rational p41;
    if (sq1)
        p41 = in_h ? (hh * (nn - one) + nn * z1 + three * zh * zh - hh * hh) / two
                   : (hh * (nn - one) + nn * z1 - hh * hh) / two;
    else
        p41 = in_h ? (two * nn * z1 + six * zh * zh - hh * hh - hh) / two
                   : (two * nn * z1 - hh * hh - hh) / two;
    add("P4.1L" + var + side, edges, p41, false, prim_lower && (!in_h || prim_h3z));

    Rational p42;
    if (sq1)
        p42 = in_h ? (four * hh * nn - eight * z1 * z2 - hh * hh - hh * (zh + two)) / four
                   : (two * hh * nn - four * z1 * z2 - hh * hh - hh) / two;
    else
        p42 = in_h ? (two * hh * nn - eight * z1 * z2 - hh * (zh + one)) / two
                   : (two * hh * nn - eight * z1 * z2 - hh * hh - hh) / two;
    add("P4.2U" + var + side, edges, p42, true, prim_upper && (!in_h || prim_h2));

    Rational p43;
    if (sq1)
        p43 = in_h ? (two * (pp - one) * hh * nn + two * z1 * nn - pp * hh * hh +
                      three * pp * zh * zh - pp * hh) /
                         (two * pp)
                   : (two * (pp - one) * hh * nn + two * z1 * nn - pp * hh * hh - pp * hh) /
                         (two * pp);
    else
        p43 = in_h ? (two * (pp - two) * hh * nn + four * z1 * nn - pp * hh * hh +
                      six * pp * zh * zh - pp * hh) /
                         (two * pp)
                   : (two * (pp - two) * hh * nn + four * z1 * nn - pp * hh * hh - pp * hh) /
                         (two * pp);
    add("P4.3L" + var + side, edges, p43, false, prim_p_lower && (!in_h || prim_h3z));

    Rational p44;
    if (sq1)
        p44 = in_h ? (two * pp * hh * nn - four * pp * z1 * z2 - (pp - one) * hh * hh -
                      hh * zh - pp * hh) /
                         (two * pp)
                   : (two * hh * nn - four * z1 * z2 - hh * hh - hh) / two;
    else
        p44 = in_h ? (two * pp * hh * nn - eight * pp * z1 * z2 - (pp - two) * hh * hh -
                      two * hh * zh - pp * hh) /
                         (two * pp)
                   : (two * hh * nn - eight * z1 * z2 - hh * hh - hh) / two;
    add("P4.4U" + var + side, edges, p44, true, prim_upper && (!in_h || prim_hp));

    if (H.is_whole_group()) {
        // H = G corollaries; Z(H,G) = Z(G,H) = Z(H) = Z(G) here.
        const Rational z = z1;
        Rational c45l, c45u, c46l, c46u;
        if (sq1) {
            c45l = (nn * z + three * z * z - nn) / two;
            c45u = (three * nn * nn - eight * z * z - nn * (z + two)) / four;
            c46l = ((pp - two) * nn * nn + two * z * nn + three * pp * z * z - pp * nn) /
                   (two * pp);
            c46u = ((pp + one) * nn * nn - four * pp * z * z - nn * z - pp * nn) / (two * pp);
        } else {
            c45l = (two * nn * z + six * z * z - nn * nn - nn) / two;
            c45u = (two * nn * nn - eight * z * z - nn * (z + one)) / two;
            c46l = ((pp - four) * nn * nn + four * z * nn + six * pp * z * z - pp * nn) /
                   (two * pp);
            c46u = ((pp + two) * nn * nn - eight * pp * z * z - two * nn * z - pp * nn) /
                   (two * pp);
        }
        add("C4.5L" + var, edges, c45l, false, prim_lower && prim_h3z);
        add("C4.5U" + var, edges, c45u, true, prim_upper && prim_h2);
        add("C4.6L" + var, edges, c46l, false, prim_p_lower && prim_h3z);
        add("C4.6U" + var, edges, c46u, true, prim_upper && prim_hp);
    }

    return rows;
}

} // namespace gnc
