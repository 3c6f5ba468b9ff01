#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gnc/catalog.hpp"
#include "gnc/formulas.hpp"
#include "gnc/isoclinism.hpp"
#include "gnc/relgraph.hpp"
#include "gnc/sweep.hpp"

namespace {

constexpr int kProbeOrderLimit = 120; // single-instance commands allow S5

gnc::ElementId parse_element(const gnc::FiniteGroup& G, const std::string& text) {
    const auto id = G.find_label(text);
    if (!id) throw gnc::ParseError("no element labeled '" + text + "'");
    return *id;
}

gnc::Subgroup parse_subgroup(const gnc::FiniteGroup& G, const std::string& text) {
    std::vector<gnc::ElementId> gens;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string tok =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!tok.empty()) gens.push_back(parse_element(G, tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return gnc::generated_subgroup(G, gnc::make_set(std::move(gens)));
}

std::string member_list(const gnc::FiniteGroup& G, const gnc::ElementSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += G.label(s[i]);
    }
    return out + "}";
}

int cmd_info(const std::string& spec) {
    const gnc::FiniteGroup G = gnc::build_group(spec, kProbeOrderLimit);
    std::cout << "group " << spec << "\n";
    std::cout << "order: " << G.order() << "\n";
    std::cout << "abelian: " << (G.is_abelian() ? "yes" : "no") << "\n";
    const gnc::ElementSet z = G.center();
    std::cout << "center: " << member_list(G, z) << " (size " << z.size() << ")\n";
    const auto classes = gnc::conjugacy_classes(G);
    std::cout << "conjugacy classes: " << classes.size() << " (sizes";
    for (const auto& c : classes) std::cout << " " << c.size();
    std::cout << ")\n";
    if (G.order() <= 64) {
        std::cout << "subgroups: " << gnc::all_subgroups(G).size() << "\n";
    } else {
        std::cout << "subgroups: skipped (order > 64)\n";
    }
    std::cout << "nilpotent: " << (gnc::is_nilpotent(G) ? "yes" : "no") << "\n";
    return 0;
}

void probe_one(const gnc::FiniteGroup& G, const gnc::Subgroup& H, gnc::ElementId g,
               const std::string& spec) {
    const gnc::ElementSet k = gnc::commutator_set(H);
    const bool g_in_k = gnc::set_contains(k, g);
    std::cout << "group " << spec << " (order " << G.order() << "), subgroup "
              << member_list(G, H.members()) << " (order " << H.order() << "), g = "
              << G.label(g) << (g_in_k ? " [g in K(H,G)]" : " [g not in K(H,G)]") << "\n";

    const gnc::RelGraph graph(G, H, g);
    std::cout << "degrees (vertex: oracle / formula [case]):\n";
    bool all_match = true;
    for (int x = 0; x < G.order(); ++x) {
        const gnc::DegreePrediction pred = gnc::degree_formula(H, g, x, g_in_k);
        if (pred.value != graph.degree(x)) all_match = false;
        std::cout << "  " << G.label(x) << ": " << graph.degree(x) << " / " << pred.value
                  << " [" << gnc::to_string(pred.case_tag) << "]\n";
    }
    std::cout << "degree formulas " << (all_match ? "match the oracle" : "MISMATCH") << "\n";

    std::cout << "edges: oracle " << graph.edge_count() << "\n";
    const gnc::EdgePrediction formula = gnc::edge_count_formula(H, g);
    std::cout << "  " << formula.case_label << ": " << formula.value.str() << "\n";
    if (H.is_abelian()) {
        const gnc::EdgePrediction cor = gnc::edge_count_abelian_H(H, g);
        std::cout << "  " << cor.case_label << ": " << cor.value.str() << "\n";
    }
    try {
        const gnc::EdgePrediction prop = gnc::edge_count_p_case(H, g);
        std::cout << "  " << prop.case_label << ": " << prop.value.str() << "\n";
    } catch (const gnc::HypothesisNotMet&) {
    }
    if (g == 0 && H.is_normal()) {
        const gnc::EdgePrediction normal = gnc::edge_count_normal_g1(H);
        std::cout << "  Prop_normal_g1 (printed): " << normal.value.str()
                  << (normal.hypotheses_met() ? "" : " [class-match condition fails]") << "\n";
    }
    if (g == 0 && H.is_whole_group()) {
        const gnc::EdgePrediction id = gnc::class_count_edge_identity(G);
        std::cout << "  Cor3.6a: " << id.value.str() << "\n";
    }

    std::cout << "shape: " << graph.classify_shape().str() << "\n";
    std::cout << "triangle-free: " << (graph.is_triangle_free() ? "yes" : "no") << "\n";
    if (G.order() <= 24)
        std::cout << "domination number: " << graph.domination_number() << "\n";
    else
        std::cout << "domination number: skipped (order > 24)\n";

    if (g != 0) {
        std::cout << "bound audit (lhs is |E| for P/C rows):\n";
        for (const gnc::BoundAudit& row : gnc::audit_bounds(H, g))
            std::cout << "  " << row.bound_id << ": " << row.lhs.str()
                      << (row.is_upper ? " <= " : " >= ") << row.rhs.str() << " : "
                      << (row.holds ? "holds" : "fails")
                      << (row.primitive_hypothesis_met ? "" : " [na: hypotheses not met]")
                      << "\n";
    }
}

int cmd_probe(const std::string& spec, const std::string& subgroup_text,
              const std::string& g_text) {
    const gnc::FiniteGroup G = gnc::build_group(spec, kProbeOrderLimit);
    const gnc::ElementId g = parse_element(G, g_text);
    if (subgroup_text == "all") {
        for (const gnc::Subgroup& H : gnc::all_subgroups(G)) {
            probe_one(G, H, g, spec);
            std::cout << "\n";
        }
        return 0;
    }
    probe_one(G, parse_subgroup(G, subgroup_text), g, spec);
    return 0;
}

int cmd_build(const std::string& spec, const std::string& subgroup_text,
              const std::string& g_text, const std::string& dot_path,
              const std::string& json_path) {
    const gnc::FiniteGroup G = gnc::build_group(spec, kProbeOrderLimit);
    const gnc::Subgroup H =
        subgroup_text == "all" ? gnc::Subgroup::whole(G) : parse_subgroup(G, subgroup_text);
    const gnc::ElementId g = parse_element(G, g_text);
    const gnc::RelGraph graph(G, H, g);
    graph.export_dot(dot_path);
    std::cout << "wrote " << dot_path << " (" << G.order() << " vertices, "
              << graph.edge_count() << " edges)\n";
    if (!json_path.empty()) {
        if (G.order() > 64) {
            std::cout << "audit records need order <= 64; skipping " << json_path << "\n";
            return 0;
        }
        gnc::SweepConfig config;
        config.families = std::vector<std::string>{spec};
        // Single-instance record through the same audit path as verify.
        gnc::SweepResult result = run_sweep(config);
        std::vector<gnc::AuditRecord> match;
        for (gnc::AuditRecord& r : result.records) {
            const gnc::ElementId canon = std::min(g, G.inv(g));
            if (r.subgroup_members == H.members() && r.g_label == G.label(canon))
                match.push_back(std::move(r));
        }
        gnc::write_report(match, json_path, "");
        std::cout << "wrote " << json_path << " (" << match.size() << " record)\n";
    }
    return 0;
}

std::pair<std::string, std::string> split_pair_arg(const std::string& arg) {
    // <spec>[:<gens>]; for file: specs only a colon after the path counts.
    const size_t start = arg.rfind("file:", 0) == 0 ? 5 : 0;
    const size_t colon = arg.find(':', start);
    if (colon == std::string::npos) return {arg, ""};
    return {arg.substr(0, colon), arg.substr(colon + 1)};
}

int cmd_isoclinism(const std::string& pair1, const std::string& pair2,
                   const std::string& g_text) {
    const auto [spec1, gens1] = split_pair_arg(pair1);
    const auto [spec2, gens2] = split_pair_arg(pair2);
    const gnc::FiniteGroup G1 = gnc::build_group(spec1, 16);
    const gnc::FiniteGroup G2 = gnc::build_group(spec2, 16);
    const gnc::Subgroup H1 =
        gens1.empty() ? gnc::Subgroup::whole(G1) : parse_subgroup(G1, gens1);
    const gnc::Subgroup H2 =
        gens2.empty() ? gnc::Subgroup::whole(G2) : parse_subgroup(G2, gens2);

    const auto witness = gnc::find_relative_isoclinism(H1, H2);
    if (!witness) {
        std::cout << "no relative isoclinism between (" << spec1 << " pair) and (" << spec2
                  << " pair)\n";
        return 1;
    }
    std::cout << "relative isoclinism found\n";
    std::cout << "phi on transversals (H-cosets first, " << witness->h_coset_count << " of "
              << witness->transversal1.size() << "):\n";
    for (size_t i = 0; i < witness->transversal1.size(); ++i)
        std::cout << "  " << G1.label(witness->transversal1[i]) << "Z -> "
                  << G2.label(witness->transversal2[i]) << "Z\n";
    std::cout << "psi on [H1,G1]:\n";
    for (const auto& [from, to] : witness->psi)
        std::cout << "  " << G1.label(from) << " -> " << G2.label(to) << "\n";

    if (!g_text.empty()) {
        const gnc::ElementId g = parse_element(G1, g_text);
        const gnc::IsoclinismGraphIso iso = gnc::isoclinism_graph_iso(*witness, g);
        std::cout << "graph isomorphism for g = " << G1.label(g)
                  << " onto psi(g) = " << G2.label(iso.mapped_g) << " verified:\n";
        for (int a = 0; a < G1.order(); ++a)
            std::cout << "  " << G1.label(a) << " -> "
                      << G2.label(iso.mapping[static_cast<size_t>(a)]) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative g-noncommuting graph toolkit"};
    app.require_subcommand(1);

    std::string group_spec, subgroup_text, g_text;
    std::string dot_path, json_path, csv_path, report_path;
    std::string pair1, pair2;
    int max_order = 16;
    int jobs = 1;
    bool skip_g_not_in_k = false;
    std::vector<std::string> family_overrides;

    CLI::App* info = app.add_subcommand("info", "order, center, classes, subgroup count");
    info->add_option("--group", group_spec, "group spec, e.g. S3, D4, Q8, C2xC4")->required();

    CLI::App* probe = app.add_subcommand(
        "probe", "degree table, edge-count formulas, shape and bound audit for one instance");
    probe->add_option("--group", group_spec)->required();
    probe->add_option("--subgroup", subgroup_text,
                      "comma-separated generator labels/ids, or 'all'")
        ->required();
    probe->add_option("--g", g_text, "element label or id")->required();

    CLI::App* build = app.add_subcommand("build", "export one graph as DOT");
    build->add_option("--group", group_spec)->required();
    build->add_option("--subgroup", subgroup_text)->required();
    build->add_option("--g", g_text)->required();
    build->add_option("--dot", dot_path)->required();
    build->add_option("--json", json_path, "also write the instance's audit record");

    CLI::App* verify = app.add_subcommand(
        "verify", "full sweep; exit 0 iff every invariant holds on every instance");
    verify->add_option("--max-order", max_order)->check(CLI::Range(1, 64));
    verify->add_option("--jobs", jobs)->check(CLI::Range(1, 64));
    verify->add_option("--report", report_path, "JSON report path")->required();
    verify->add_option("--csv", csv_path, "CSV report path");
    verify->add_option("--group", family_overrides,
                       "restrict the sweep to these specs (repeatable)");
    verify->add_flag("--skip-g-not-in-k", skip_g_not_in_k,
                     "drop instances with g outside K(H,G)");

    CLI::App* isoclinism = app.add_subcommand(
        "isoclinism", "relative-isoclinism witness search and induced graph isomorphism");
    isoclinism->add_option("--pair1", pair1, "<spec>[:<gens>], subgroup defaults to the group")
        ->required();
    isoclinism->add_option("--pair2", pair2)->required();
    isoclinism->add_option("--g", g_text, "element of [H1,G1] (label or id)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*info) return cmd_info(group_spec);
        if (*probe) return cmd_probe(group_spec, subgroup_text, g_text);
        if (*build) return cmd_build(group_spec, subgroup_text, g_text, dot_path, json_path);
        if (*verify) {
            gnc::SweepConfig config;
            config.max_order = max_order;
            config.jobs = jobs;
            if (!family_overrides.empty()) config.families = family_overrides;
            config.include_g_not_in_k = !skip_g_not_in_k;
            return gnc::run_verify(config, report_path, csv_path, std::cout);
        }
        if (*isoclinism) return cmd_isoclinism(pair1, pair2, g_text);
    } catch (const gnc::VerificationFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const gnc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
