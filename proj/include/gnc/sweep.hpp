#ifndef GNC_SWEEP_HPP
#define GNC_SWEEP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnc/formulas.hpp"
#include "gnc/group.hpp"

namespace gnc {

struct SweepConfig {
    int max_order = 16; // <= 64
    // Unset: every default catalog family of order <= max_order. An
    // explicitly empty list sweeps nothing.
    std::optional<std::vector<std::string>> families;
    bool include_g_not_in_k = true;
    int jobs = 1;
};

struct SpecialCheck {
    std::string formula_id;
    std::string predicted; // exact rational, as text
    bool matches_oracle;
    bool hypotheses_met;

    bool operator==(const SpecialCheck&) const = default;
};

// One audited (G, H, g) instance. g is recorded once per {g, g^-1} pair
// (the graph only depends on the pair); g_label names the smaller id.
struct AuditRecord {
    std::string group_spec;
    int group_order = 0;
    std::vector<int> subgroup_members;
    int h_order = 0;
    std::string g_label;
    bool g_in_K = false;
    bool standing_assumptions_met = false; // G non-abelian, H != Z(H,G), g in K(H,G)
    long long edges_oracle = 0;
    long long edges_formula = 0;
    int degree_mismatch_count = 0;
    std::string shape;
    bool triangle_free = false;
    std::optional<int> domination; // absent when the graph exceeds 24 vertices
    std::vector<BoundAudit> bound_audits;
    std::vector<SpecialCheck> special_formula_checks;

    bool operator==(const AuditRecord&) const = default;
};

struct SweepResult {
    std::vector<AuditRecord> records;
    // Invariant failures, each prefixed with its instance key. Empty on a
    // healthy sweep; instances with failures still produce records.
    std::vector<std::string> violations;
    // Edge-formula sub-case coverage (Obs1.1, Thm3.1a, Thm3.1b.inH, ...).
    std::map<std::string, int> case_coverage;
    // Primitive inequality rows that fail numerically, split by whether
    // their applicability gate was met.
    int primitive_failures_gated_off = 0;
    int primitive_failures_gated_on = 0;
};

SweepResult run_sweep(const SweepConfig& config);

// JSON: array of records with the exact field names above; CSV: one row per
// record with scalar fields and pass/fail/na summaries. Byte-deterministic
// for a fixed config. Either path may be empty to skip that format.
void write_report(const std::vector<AuditRecord>& records, const std::string& json_path,
                  const std::string& csv_path);

std::vector<AuditRecord> load_report(const std::string& json_path);

// Sweep + reports + summary on `out`; returns the process exit code
// (0 clean, 1 with violations).
int run_verify(const SweepConfig& config, const std::string& json_path,
               const std::string& csv_path, std::ostream& out);

} // namespace gnc

#endif
