#include "gnc/sweep.hpp"

#include <atomic>
#include <deque>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "gnc/catalog.hpp"
#include "gnc/relgraph.hpp"

namespace gnc {

namespace {

struct Instance {
    int family_index;
    std::string spec;
    const FiniteGroup* group;
    const Subgroup* subgroup;
    ElementId g;
    bool g_in_k;
};

struct InstanceOutput {
    AuditRecord record;
    std::vector<std::string> violations;
    std::string case_label;
    int prim_fail_gated_off = 0;
    int prim_fail_gated_on = 0;
};

std::string instance_key(const Instance& in) {
    std::string members;
    for (ElementId x : in.subgroup->members()) {
        if (!members.empty()) members += ",";
        members += std::to_string(x);
    }
    return in.spec + " H={" + members + "} g=" + in.group->label(in.g);
}

InstanceOutput evaluate_instance(const Instance& in) {
    const FiniteGroup& G = *in.group;
    const Subgroup& H = *in.subgroup;
    const ElementId g = in.g;
    const int n = G.order();
    const int h = H.order();
    const std::string key = instance_key(in);

    InstanceOutput out;
    AuditRecord& rec = out.record;
    auto flag = [&](const std::string& what) { out.violations.push_back(key + ": " + what); };

    const ElementSet z = relative_center(H);
    rec.group_spec = in.spec;
    rec.group_order = n;
    rec.subgroup_members = H.members();
    rec.h_order = h;
    rec.g_label = G.label(g);
    rec.g_in_K = in.g_in_k;
    rec.standing_assumptions_met =
        !G.is_abelian() && static_cast<int>(z.size()) != h && in.g_in_k;

    const RelGraph graph(G, H, g);
    rec.edges_oracle = graph.edge_count();

    const EdgePrediction formula = edge_count_formula(H, g);
    out.case_label = formula.case_label;
    if (!formula.value.is_integer() || formula.value.num() < 0) {
        rec.edges_formula = -1;
        flag("edge formula value " + formula.value.str() + " is not a nonnegative integer");
    } else {
        rec.edges_formula = formula.value.num();
    }
    if (rec.edges_formula != rec.edges_oracle)
        flag("edge formula " + formula.case_label + " = " + formula.value.str() +
             " but oracle = " + std::to_string(rec.edges_oracle));

    rec.degree_mismatch_count = 0;
    for (int x = 0; x < n; ++x) {
        const DegreePrediction pred = degree_formula(H, g, x, in.g_in_k);
        if (pred.value != graph.degree(x)) {
            ++rec.degree_mismatch_count;
            if (rec.degree_mismatch_count == 1)
                flag("degree formula " + to_string(pred.case_tag) + " gives " +
                     std::to_string(pred.value) + " for vertex " + G.label(x) + " but oracle " +
                     std::to_string(graph.degree(x)));
        }
    }
    if (rec.degree_mismatch_count > 1)
        flag(std::to_string(rec.degree_mismatch_count) + " degree mismatches in total");

    const ShapeClass shape = graph.classify_shape();
    rec.shape = shape.str();
    rec.triangle_free = graph.is_triangle_free();
    if (n <= 24) rec.domination = graph.domination_number();

    // Outside K(H,G) every H-touching pair must be an edge: the join of a
    // complete graph on H with an edgeless rest.
    if (!in.g_in_k) {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                const bool expect = H.contains(x) || H.contains(y);
                if (graph.adjacent(x, y) != expect) {
                    flag("join structure violated at (" + G.label(x) + "," + G.label(y) + ")");
                    x = n;
                    break;
                }
            }
    }

    // Relative-center degrees: isolated for g = 1, universal otherwise.
    for (ElementId x : z) {
        const int want = g == 0 ? 0 : n - 1;
        if (graph.degree(x) != want)
            flag("central vertex " + G.label(x) + " has degree " +
                 std::to_string(graph.degree(x)) + ", expected " + std::to_string(want));
    }

    if (g != 0 && rec.domination && *rec.domination != 1)
        flag("domination number " + std::to_string(*rec.domination) + " with g != 1");
    if (g == 0 && rec.domination && static_cast<int>(z.size()) != h &&
        *rec.domination < static_cast<int>(z.size()) + 1)
        flag("domination number " + std::to_string(*rec.domination) + " below |Z(H,G)|+1");

    bool h_has_order3 = false;
    for (ElementId x : H.members())
        if (G.element_order(x) == 3) {
            h_has_order3 = true;
            break;
        }
    if (g != 0 && h_has_order3 && rec.triangle_free)
        flag("triangle-free despite an order-3 element in H and g != 1");

    const bool is_tree = rec.edges_oracle == n - 1 && graph.is_connected();
    if (in.g_in_k && g != 0) {
        if (shape.kind == ShapeClass::CompleteGraph) flag("complete graph with g in K, g != 1");
        if (is_tree && h != 2) flag("tree with |H| = " + std::to_string(h));
        const bool star_expected = n == 6 && !G.is_abelian() && h == 2;
        if ((shape.kind == ShapeClass::Star) != star_expected)
            flag(std::string("star characterization violated: shape ") + rec.shape);
        if (shape.kind == ShapeClass::Lollipop && h != 2 && h != 3)
            flag("lollipop with |H| = " + std::to_string(h));
        if (h != 2 && h != 3 && h != 6) {
            for (int x = 0; x < n; ++x)
                if (graph.degree(x) == 1) {
                    flag("degree-1 vertex " + G.label(x) + " with |H| = " + std::to_string(h));
                    break;
                }
        }
    }
    if (g == 0 && n >= 2) {
        if (is_tree) flag("tree with g = 1");
        if (shape.kind == ShapeClass::CompleteGraph) flag("complete graph with g = 1");
    }

    if (g != 0) {
        rec.bound_audits = audit_bounds(H, g);
        for (const BoundAudit& row : rec.bound_audits) {
            const bool primitive = row.bound_id.rfind("prim.", 0) == 0;
            if (primitive && !row.holds) {
                if (row.primitive_hypothesis_met)
                    ++out.prim_fail_gated_on;
                else
                    ++out.prim_fail_gated_off;
            }
            if (!primitive && row.primitive_hypothesis_met && !row.holds)
                flag("bound " + row.bound_id + " fails: " + row.lhs.str() +
                     (row.is_upper ? " > " : " < ") + row.rhs.str());
        }
    }

    auto add_special = [&](const EdgePrediction& ep) {
        const bool match = ep.value.is_integer() && ep.value.num() == rec.edges_oracle;
        rec.special_formula_checks.push_back(
            {ep.formula_id, ep.value.str(), match, ep.hypotheses_met()});
        if (ep.formula_id == "Prop_normal_g1") {
            if (match != ep.hypotheses_met())
                flag("Prop_normal_g1 printed value " + ep.value.str() +
                     (match ? " matches" : " mismatches") + " oracle " +
                     std::to_string(rec.edges_oracle) + " against the class-match flag");
        } else if (ep.hypotheses_met() && !match) {
            flag(ep.formula_id + " = " + ep.value.str() + " but oracle = " +
                 std::to_string(rec.edges_oracle));
        }
    };
    if (H.is_abelian()) add_special(edge_count_abelian_H(H, g));
    try {
        add_special(edge_count_p_case(H, g));
    } catch (const HypothesisNotMet&) {
    }
    if (g == 0 && H.is_normal()) add_special(edge_count_normal_g1(H));
    if (g == 0 && H.is_whole_group()) add_special(class_count_edge_identity(G));

    return out;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config) {
    if (config.max_order < 1 || config.max_order > 64)
        throw Error("sweep max_order must be between 1 and 64");

    const std::vector<std::string> families =
        config.families ? *config.families : default_families(config.max_order);

    SweepResult result;
    std::deque<FiniteGroup> groups;
    std::deque<std::vector<Subgroup>> subgroup_storage;
    std::vector<Instance> instances;

    for (size_t fi = 0; fi < families.size(); ++fi) {
        const std::string& spec = families[fi];
        groups.push_back(build_group(spec, 64));
        const FiniteGroup& G = groups.back();
        subgroup_storage.push_back(all_subgroups(G));

        for (const Subgroup& H : subgroup_storage.back()) {
            // Probability identities, once per (H, G): the commutator value
            // distribution sums to 1 and is symmetric under inversion.
            std::vector<long long> counts(static_cast<size_t>(G.order()), 0);
            for (ElementId x : H.members())
                for (int y = 0; y < G.order(); ++y)
                    ++counts[static_cast<size_t>(G.commutator(x, y))];
            long long total = 0;
            for (long long c : counts) total += c;
            if (total != static_cast<long long>(H.order()) * G.order())
                result.violations.push_back(spec + " H(order " + std::to_string(H.order()) +
                                            "): commutator pair counts do not total |H||G|");
            for (int g = 0; g < G.order(); ++g)
                if (counts[static_cast<size_t>(g)] != counts[static_cast<size_t>(G.inv(g))]) {
                    result.violations.push_back(spec + " H(order " + std::to_string(H.order()) +
                                                "): Pr_g != Pr_{g^-1} at g = " + G.label(g));
                    break;
                }

            const ElementSet k = commutator_set(H);
            for (int g = 0; g < G.order(); ++g) {
                if (g > G.inv(g)) continue; // one record per {g, g^-1}
                const bool g_in_k = set_contains(k, g);
                if (!g_in_k && !config.include_g_not_in_k) continue;
                instances.push_back({static_cast<int>(fi), spec, &G, &H, g, g_in_k});
            }
        }
    }

    std::vector<InstanceOutput> outputs(instances.size());
    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < instances.size(); ++i) outputs[i] = evaluate_instance(instances[i]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<size_t>(jobs));
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1))
                    outputs[i] = evaluate_instance(instances[i]);
            });
        for (std::thread& t : workers) t.join();
    }

    result.records.reserve(outputs.size());
    for (InstanceOutput& out : outputs) {
        result.records.push_back(std::move(out.record));
        for (std::string& v : out.violations) result.violations.push_back(std::move(v));
        ++result.case_coverage[out.case_label];
        result.primitive_failures_gated_off += out.prim_fail_gated_off;
        result.primitive_failures_gated_on += out.prim_fail_gated_on;
    }
    return result;
}

namespace {

nlohmann::ordered_json record_to_json(const AuditRecord& r) {
    nlohmann::ordered_json j;
    j["group_spec"] = r.group_spec;
    j["group_order"] = r.group_order;
    j["subgroup_members"] = r.subgroup_members;
    j["h_order"] = r.h_order;
    j["g_label"] = r.g_label;
    j["g_in_K"] = r.g_in_K;
    j["standing_assumptions_met"] = r.standing_assumptions_met;
    j["edges_oracle"] = r.edges_oracle;
    j["edges_formula"] = r.edges_formula;
    j["degree_mismatch_count"] = r.degree_mismatch_count;
    j["shape"] = r.shape;
    j["triangle_free"] = r.triangle_free;
    if (r.domination)
        j["domination"] = *r.domination;
    else
        j["domination"] = nullptr;
    j["bound_audits"] = nlohmann::ordered_json::array();
    for (const BoundAudit& b : r.bound_audits) {
        nlohmann::ordered_json row;
        row["bound_id"] = b.bound_id;
        row["lhs"] = b.lhs.str();
        row["rhs"] = b.rhs.str();
        row["is_upper"] = b.is_upper;
        row["holds"] = b.holds;
        row["primitive_hypothesis_met"] = b.primitive_hypothesis_met;
        j["bound_audits"].push_back(std::move(row));
    }
    j["special_formula_checks"] = nlohmann::ordered_json::array();
    for (const SpecialCheck& s : r.special_formula_checks) {
        nlohmann::ordered_json row;
        row["formula_id"] = s.formula_id;
        row["predicted"] = s.predicted;
        row["matches_oracle"] = s.matches_oracle;
        row["hypotheses_met"] = s.hypotheses_met;
        j["special_formula_checks"].push_back(std::move(row));
    }
    return j;
}

Rational rational_from_string(const std::string& s) {
    const size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += "\"";
    return quoted;
}

void parse_records(const nlohmann::json& arr, std::vector<AuditRecord>& records) {
    for (const auto& j : arr) {
        AuditRecord r;
        r.group_spec = j.at("group_spec").get<std::string>();
        r.group_order = j.at("group_order").get<int>();
        r.subgroup_members = j.at("subgroup_members").get<std::vector<int>>();
        r.h_order = j.at("h_order").get<int>();
        r.g_label = j.at("g_label").get<std::string>();
        r.g_in_K = j.at("g_in_K").get<bool>();
        r.standing_assumptions_met = j.at("standing_assumptions_met").get<bool>();
        r.edges_oracle = j.at("edges_oracle").get<long long>();
        r.edges_formula = j.at("edges_formula").get<long long>();
        r.degree_mismatch_count = j.at("degree_mismatch_count").get<int>();
        r.shape = j.at("shape").get<std::string>();
        r.triangle_free = j.at("triangle_free").get<bool>();
        if (!j.at("domination").is_null()) r.domination = j.at("domination").get<int>();
        for (const auto& b : j.at("bound_audits")) {
            BoundAudit row;
            row.bound_id = b.at("bound_id").get<std::string>();
            row.lhs = rational_from_string(b.at("lhs").get<std::string>());
            row.rhs = rational_from_string(b.at("rhs").get<std::string>());
            row.is_upper = b.at("is_upper").get<bool>();
            row.holds = b.at("holds").get<bool>();
            row.primitive_hypothesis_met = b.at("primitive_hypothesis_met").get<bool>();
            r.bound_audits.push_back(std::move(row));
        }
        for (const auto& s : j.at("special_formula_checks")) {
            SpecialCheck check;
            check.formula_id = s.at("formula_id").get<std::string>();
            check.predicted = s.at("predicted").get<std::string>();
            check.matches_oracle = s.at("matches_oracle").get<bool>();
            check.hypotheses_met = s.at("hypotheses_met").get<bool>();
            r.special_formula_checks.push_back(std::move(check));
        }
        records.push_back(std::move(r));
    }
}

} // namespace

void write_report(const std::vector<AuditRecord>& records, const std::string& json_path,
                  const std::string& csv_path) {
    if (!json_path.empty()) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const AuditRecord& r : records) arr.push_back(record_to_json(r));
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw FileError("cannot open '" + json_path + "' for writing");
        out << arr.dump(2) << "\n";
        if (!out) throw FileError("write to '" + json_path + "' failed");
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw FileError("cannot open '" + csv_path + "' for writing");
        out << "group_spec,group_order,subgroup_members,h_order,g_label,g_in_K,"
               "standing_assumptions_met,edges_oracle,edges_formula,degree_mismatch_count,"
               "shape,triangle_free,domination,bounds_pass,bounds_fail,bounds_na,"
               "special_pass,special_mismatch\n";
        for (const AuditRecord& r : records) {
            std::string members;
            for (int x : r.subgroup_members) {
                if (!members.empty()) members += ";";
                members += std::to_string(x);
            }
            int pass = 0, fail = 0, na = 0;
            for (const BoundAudit& b : r.bound_audits) {
                if (b.bound_id.rfind("prim.", 0) == 0) continue;
                if (!b.primitive_hypothesis_met)
                    ++na;
                else if (b.holds)
                    ++pass;
                else
                    ++fail;
            }
            int special_pass = 0, special_mismatch = 0;
            for (const SpecialCheck& s : r.special_formula_checks) {
                if (s.matches_oracle)
                    ++special_pass;
                else
                    ++special_mismatch;
            }
            out << csv_field(r.group_spec) << "," << r.group_order << "," << csv_field(members)
                << "," << r.h_order << "," << csv_field(r.g_label) << ","
                << (r.g_in_K ? "true" : "false") << ","
                << (r.standing_assumptions_met ? "true" : "false") << "," << r.edges_oracle
                << "," << r.edges_formula << "," << r.degree_mismatch_count << ","
                << csv_field(r.shape) << "," << (r.triangle_free ? "true" : "false") << ","
                << (r.domination ? std::to_string(*r.domination) : "") << "," << pass << ","
                << fail << "," << na << "," << special_pass << "," << special_mismatch << "\n";
        }
        if (!out) throw FileError("write to '" + csv_path + "' failed");
    }
}

std::vector<AuditRecord> load_report(const std::string& json_path) {
    std::ifstream in(json_path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + json_path + "'");
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("'" + json_path + "': " + e.what());
    }
    std::vector<AuditRecord> records;
    try {
        parse_records(arr, records);
    } catch (const std::exception& e) {
        throw FormatError("'" + json_path + "': " + e.what());
    }
    return records;
}

int run_verify(const SweepConfig& config, const std::string& json_path,
               const std::string& csv_path, std::ostream& out) {
    const SweepResult result = run_sweep(config);
    write_report(result.records, json_path, csv_path);

    out << "instances audited: " << result.records.size() << "\n";
    out << "edge-formula case coverage:\n";
    for (const auto& [label, count] : result.case_coverage)
        out << "  " << label << ": " << count << "\n";
    out << "primitive inequality failures (hypothesis gate off, reported na): "
        << result.primitive_failures_gated_off << "\n";
    out << "primitive inequality failures (hypothesis gate met): "
        << result.primitive_failures_gated_on << "\n";
    if (result.violations.empty()) {
        out << "invariant violations: none\n";
        return 0;
    }
    out << "invariant violations: " << result.violations.size() << "\n";
    for (const std::string& v : result.violations) out << "  " << v << "\n";
    return 1;
}

} // namespace gnc
