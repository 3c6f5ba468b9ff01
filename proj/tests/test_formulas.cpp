#include <doctest.h>

#include "gnc/catalog.hpp"
#include "gnc/formulas.hpp"
#include "gnc/relgraph.hpp"

using namespace gnc;

namespace {

ElementId by_label(const FiniteGroup& G, const std::string& s) {
    const auto id = G.find_label(s);
    REQUIRE(id.has_value());
    return *id;
}

// Heisenberg group over F3: upper unitriangular 3x3 matrices, encoded as
// (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'). Order 27,
// identity (0,0,0) at id 0; associative by construction.
FiniteGroup heisenberg27() {
    auto id = [](int a, int b, int c) { return 9 * a + 3 * b + c; };
    std::vector<std::vector<int>> table(27, std::vector<int>(27));
    std::vector<std::string> labels(27);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                labels[static_cast<size_t>(id(a, b, c))] =
                    "h" + std::to_string(a) + std::to_string(b) + std::to_string(c);
                for (int a2 = 0; a2 < 3; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2)
                        for (int c2 = 0; c2 < 3; ++c2)
                            table[static_cast<size_t>(id(a, b, c))]
                                 [static_cast<size_t>(id(a2, b2, c2))] =
                                     id((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
            }
    return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

} // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
    CHECK((Rational(1) - Rational(1, 4)) == Rational(3, 4));
    CHECK((Rational(3, 2) / Rational(3)) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7).is_integer());
    CHECK_FALSE(Rational(7, 2).is_integer());
    CHECK(Rational(7, 2).str() == "7/2");
    CHECK(Rational(-4, 2).str() == "-2");
}

TEST_CASE("commutator probabilities on the named instances") {
    const FiniteGroup C4 = build_group("C4");
    CHECK(pr_g(Subgroup::whole(C4), 0) == Rational(1));

    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    const ElementId r2 = by_label(D8, "r2");
    CHECK(pr_g(rot, r2) == Rational(1, 4));
    // Closed form for |[H,G]| = p: (1/p)(1 - 1/[H : Z(H,G)]).
    CHECK(pr_g(rot, r2) == Rational(1, 2) * (Rational(1) - Rational(1, 2)));
    CHECK(pr_g_self(rot, r2) == Rational(0)); // H abelian, g != 1
    CHECK(pr_g_self(Subgroup::whole(D8), r2) == Rational(3, 8));

    const FiniteGroup S3 = build_group("S3");
    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    CHECK(pr_g(a3, 0) == Rational(2, 3));
    CHECK(pr_g_self(Subgroup::whole(S3), 0) == Rational(1, 2));
    CHECK(pr_g_self(a3, 0) == Rational(1)); // abelian, g = 1
}

TEST_CASE("probability identities: symmetry and total mass") {
    for (const std::string& spec : {"S3", "D4", "Q8", "A4"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G)) {
            Rational total(0);
            for (int g = 0; g < G.order(); ++g) {
                const Rational p = pr_g(H, g);
                total = total + p;
                CHECK(p == pr_g(H, G.inv(g)));
                CHECK(pr_g_self(H, g) == pr_g_self(H, G.inv(g)));
            }
            CHECK(total == Rational(1));
        }
    }
}

TEST_CASE("degree formula on the named vertices") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    const ElementId g3 = by_label(S3, "(123)");

    const DegreePrediction center = degree_formula(h2, g3, 0);
    CHECK(center.value == 5); // x in Z(H,G), g != 1 -> |G| - 1
    CHECK(center.case_tag == DegreePrediction::CentralVertex);

    const DegreePrediction both = degree_formula(h2, g3, by_label(S3, "(12)"));
    CHECK(both.value == 1); // 6 - 2*2 - 1
    CHECK(both.case_tag == DegreePrediction::ConjBoth);

    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    const DegreePrediction one = degree_formula(rot, by_label(D8, "r2"), by_label(D8, "r"));
    CHECK(one.value == 3); // 8 - 4 - 1, single deduction since g^2 = 1
    CHECK(one.case_tag == DegreePrediction::ConjOne);

    // g outside K(H,G): join degrees.
    const ElementId t13 = by_label(S3, "(13)");
    CHECK(degree_formula(h2, t13, 0).value == 5);
    CHECK(degree_formula(h2, t13, 0).case_tag == DegreePrediction::GNotInK);
    CHECK(degree_formula(h2, t13, g3).value == 2);

    // g = 1 case.
    CHECK(degree_formula(h2, 0, by_label(S3, "(12)")).value == 4); // |G| - |C_G(x)|
    CHECK(degree_formula(h2, 0, g3).value == 1);                   // |H| - |C_H(x)|
}

TEST_CASE("degree formula equals the graph oracle everywhere") {
    for (const std::string& spec : {"S3", "D4", "Q8", "A4", "C2xD3", "C12", "C2xC2xC2"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G)) {
            const ElementSet k = commutator_set(H);
            for (int g = 0; g < G.order(); ++g) {
                const RelGraph graph(G, H, g);
                const bool in_k = set_contains(k, g);
                for (int x = 0; x < G.order(); ++x)
                    CHECK(degree_formula(H, g, x, in_k).value == graph.degree(x));
            }
        }
    }
}

TEST_CASE("edge formula selects the right case and equals the oracle") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    const EdgePrediction star = edge_count_formula(h2, by_label(S3, "(123)"));
    CHECK(star.case_label == "Thm3.1c.notH");
    CHECK(star.value == Rational(5));

    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    const EdgePrediction d8 = edge_count_formula(rot, by_label(D8, "r2"));
    CHECK(d8.case_label == "Thm3.1b.inH");
    CHECK(d8.value == Rational(14));

    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    const EdgePrediction g1 = edge_count_formula(a3, 0);
    CHECK(g1.case_label == "Thm3.1a");
    CHECK(g1.value == Rational(6));

    const EdgePrediction join = edge_count_formula(a3, by_label(S3, "(12)"));
    CHECK(join.case_label == "Obs1.1");
    CHECK(join.value == Rational(12));

    for (const std::string& spec : {"S3", "D4", "Q8", "A4", "C2xD3", "C2xC4"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G))
            for (int g = 0; g < G.order(); ++g) {
                const EdgePrediction ep = edge_count_formula(H, g);
                CHECK(ep.value == Rational(RelGraph(G, H, g).edge_count()));
            }
    }
}

TEST_CASE("abelian-H edge formula") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    CHECK(edge_count_abelian_H(a3, 0).value == Rational(6));

    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    CHECK(edge_count_abelian_H(rot, by_label(D8, "r2")).value == Rational(14));

    CHECK_THROWS_AS(edge_count_abelian_H(Subgroup::whole(S3), 0), HypothesisNotMet);

    // Agrees with the general formula on every abelian subgroup.
    for (const std::string& spec : {"S3", "D4", "Q8", "A4"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G)) {
            if (!H.is_abelian()) continue;
            for (int g = 0; g < G.order(); ++g)
                CHECK(edge_count_abelian_H(H, g).value == edge_count_formula(H, g).value);
        }
    }
}

TEST_CASE("|[H,G]| = p formula on D8") {
    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    const ElementId r2 = by_label(D8, "r2");

    const EdgePrediction at_r2 = edge_count_p_case(rot, r2);
    CHECK(at_r2.value == Rational(14));
    CHECK(at_r2.case_label == "Prop_p.g2eq1.inH");
    CHECK(at_r2.hypotheses_met());

    const EdgePrediction at_1 = edge_count_p_case(rot, 0);
    CHECK(at_1.value == Rational(8));
    CHECK(at_1.value == Rational(RelGraph(D8, rot, 0).edge_count()));

    // Composite |[H,G]|: A4 has commutator subgroup V4 of order 4.
    const FiniteGroup A4 = build_group("A4");
    CHECK_THROWS_AS(edge_count_p_case(Subgroup::whole(A4), 0), HypothesisNotMet);
    // |[H,G]| trivial is not prime either.
    const FiniteGroup C4 = build_group("C4");
    CHECK_THROWS_AS(edge_count_p_case(Subgroup::whole(C4), 0), HypothesisNotMet);
}

TEST_CASE("p-case formula matches the oracle wherever its hypotheses verify") {
    for (const std::string& spec : {"S3", "D4", "Q8", "C2xD4", "C2xQ8", "A4", "C2xD3"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G)) {
            for (int g = 0; g < G.order(); ++g) {
                EdgePrediction ep;
                try {
                    ep = edge_count_p_case(H, g);
                } catch (const HypothesisNotMet&) {
                    continue;
                }
                if (!ep.hypotheses_met()) continue; // g outside K(H,G)
                CHECK(ep.value == Rational(RelGraph(G, H, g).edge_count()));
            }
        }
    }
}

TEST_CASE("nilpotent relaxation: |[H,G]| = 3 in C2 x Heisenberg(27)") {
    const FiniteGroup heis = heisenberg27();
    REQUIRE(heis.order() == 27);
    REQUIRE_FALSE(heis.is_abelian());

    const FiniteGroup G = direct_product(build_group("C2"), heis);
    REQUIRE(G.order() == 54);
    REQUIRE(is_nilpotent(G));
    REQUIRE(smallest_prime_factor(G.order()) == 2);

    // H = the Heisenberg factor; [H, G] is its commutator subgroup C3, so the
    // prime is 3, deliberately not the smallest prime dividing |G| = 54.
    ElementSet h_members;
    for (int x = 0; x < G.order(); ++x)
        if (x < heis.order()) h_members.push_back(x); // (0, h) block has ids 0..26
    const Subgroup H(G, h_members);
    const Subgroup hg = relative_commutator_subgroup(H);
    REQUIRE(hg.order() == 3);

    int checked = 0;
    for (ElementId g : commutator_set(H)) {
        const EdgePrediction ep = edge_count_p_case(H, g);
        CHECK(ep.hypotheses_met());
        CHECK(ep.value == Rational(RelGraph(G, H, g).edge_count()));
        ++checked;
    }
    CHECK(checked == 3);
}

TEST_CASE("normal-H g = 1 formula is diagnostic, not assumed") {
    const FiniteGroup S3 = build_group("S3");

    // H = G: the printed value is right (9 = 9) and the class condition holds.
    const EdgePrediction whole = edge_count_normal_g1(Subgroup::whole(S3));
    CHECK(whole.value == Rational(9));
    CHECK(whole.hypotheses_met());
    CHECK(whole.value == Rational(RelGraph(S3, Subgroup::whole(S3), 0).edge_count()));

    // H = A3: printed 0, oracle 6, condition fails (S3 fuses the 3-cycles).
    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    const EdgePrediction printed = edge_count_normal_g1(a3);
    CHECK(printed.value == Rational(0));
    CHECK_FALSE(printed.hypotheses_met());
    CHECK(RelGraph(S3, a3, 0).edge_count() == 6);

    // H = Z(G): printed 0 and the graph really is empty.
    const FiniteGroup D8 = build_group("D4");
    const Subgroup center(D8, D8.center());
    CHECK(edge_count_normal_g1(center).value == Rational(0));
    CHECK(RelGraph(D8, center, 0).edge_count() == 0);

    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    CHECK_THROWS_AS(edge_count_normal_g1(h2), HypothesisNotMet);

    // The mismatch is exactly the class-fusion condition, on every normal H.
    for (const std::string& spec : {"S3", "D4", "Q8", "A4", "C2xD3"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G)) {
            if (!H.is_normal()) continue;
            const EdgePrediction ep = edge_count_normal_g1(H);
            const bool match = ep.value == Rational(RelGraph(G, H, 0).edge_count());
            CHECK(match == ep.hypotheses_met());
        }
    }
}

TEST_CASE("whole-group class-count identity") {
    CHECK(class_count_edge_identity(build_group("C6")).value == Rational(0));
    CHECK(class_count_edge_identity(build_group("S3")).value == Rational(9));
    CHECK(class_count_edge_identity(build_group("D4")).value == Rational(12));
    for (const std::string& spec : {"S3", "D4", "Q8", "A4"}) {
        const FiniteGroup G = build_group(spec);
        CHECK(class_count_edge_identity(G).value ==
              Rational(RelGraph(G, Subgroup::whole(G), 0).edge_count()));
    }
}

TEST_CASE("bound audit on (rot, D8, r2)") {
    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    const auto rows = audit_bounds(rot, by_label(D8, "r2"));

    auto find = [&](const std::string& id) -> const BoundAudit& {
        for (const BoundAudit& row : rows)
            if (row.bound_id == id) return row;
        REQUIRE_MESSAGE(false, "missing bound row ", id);
        return rows.front();
    };

    // 1 - Pr_g(H,G) >= (|H| + |Z(H,G)|) / (2|H|), with equality here.
    const BoundAudit& lower = find("prim.lowerHG.g2eq1");
    CHECK(lower.lhs == Rational(3, 4));
    CHECK(lower.rhs == Rational(3, 4));
    CHECK(lower.holds);
    CHECK(lower.primitive_hypothesis_met);

    // Pr_g(H) >= 3|Z(H)|^2/|H|^2 reads 0 >= 3; gated off since g not in K(H,H).
    const BoundAudit& h3z = find("prim.lowerH3Z");
    CHECK(h3z.lhs == Rational(0));
    CHECK(h3z.rhs == Rational(3));
    CHECK_FALSE(h3z.holds);
    CHECK_FALSE(h3z.primitive_hypothesis_met);

    CHECK_THROWS_AS(audit_bounds(rot, 0), HypothesisNotMet);
}

TEST_CASE("bound audit with H = G includes the corollary rows") {
    const FiniteGroup D8 = build_group("D4");
    const Subgroup whole = Subgroup::whole(D8);
    const ElementId r2 = by_label(D8, "r2");
    const auto rows = audit_bounds(whole, r2);

    // Pr_g(G) >= 3|Z|^2/|G|^2: 3/8 >= 3/16, gate met since r2 is a commutator.
    bool saw_h3z = false, saw_c45 = false, saw_c46 = false;
    for (const BoundAudit& row : rows) {
        if (row.bound_id == "prim.lowerH3Z") {
            saw_h3z = true;
            CHECK(row.lhs == Rational(3, 8));
            CHECK(row.rhs == Rational(3, 16));
            CHECK(row.holds);
            CHECK(row.primitive_hypothesis_met);
        }
        if (row.bound_id.rfind("C4.5", 0) == 0) saw_c45 = true;
        if (row.bound_id.rfind("C4.6", 0) == 0) saw_c46 = true;
    }
    CHECK(saw_h3z);
    CHECK(saw_c45);
    CHECK(saw_c46);

    // The corollaries are the propositions specialized to H = G: identical
    // right-hand sides row for row.
    auto rhs_of = [&](const std::string& id) {
        for (const BoundAudit& row : rows)
            if (row.bound_id.rfind(id, 0) == 0) return row.rhs;
        REQUIRE(false);
        return Rational(0);
    };
    CHECK(rhs_of("C4.5L") == rhs_of("P4.1L"));
    CHECK(rhs_of("C4.5U") == rhs_of("P4.2U"));
    CHECK(rhs_of("C4.6L") == rhs_of("P4.3L"));
    CHECK(rhs_of("C4.6U") == rhs_of("P4.4U"));
}

TEST_CASE("derived bounds hold whenever their primitives re-verify") {
    for (const std::string& spec : {"S3", "D4", "Q8", "A4", "C2xD3", "C2xC4"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G))
            for (int g = 1; g < G.order(); ++g)
                for (const BoundAudit& row : audit_bounds(H, g))
                    if (row.bound_id.rfind("prim.", 0) != 0 && row.primitive_hypothesis_met)
                        CHECK(row.holds);
    }
}
