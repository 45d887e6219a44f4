#pragma once

#include "purepoint/overlap.hpp"
#include "purepoint/spectral.hpp"

#include <optional>

namespace purepoint {

struct PipelineOptions {
    bool recenter = true;
    int recenter_depth = 3;
    int seed_power_cap = 6;    // p_max for the fixed-point search
    int basis_level_cap = 12;
    int pair_closure_cap = 30;
    long long max_points = 5'000'000;
    long long max_vertices = 200'000;
    double tol_verdict = -1.0;  // negative: default 1e-6 * beta
    double spectral_tol = 1e-10;
    bool use_model_translations = true;
};

struct SccSummaryEntry {
    int size = 0;
    double rho = 0.0;
};

struct ReportCounts {
    long long vertices = 0;
    long long edges = 0;
    long long g_coin_size = 0;
    long long g_res_size = 0;
    long long seeds = 0;
    long long coincidences = 0;
};

struct Report {
    std::string model_name;
    Verdict verdict = Verdict::Unreliable;
    double rho_coin = 0.0;
    double rho_res = 0.0;
    double beta = 0.0;
    std::optional<double> boundary_dim;
    MeyerStatus meyer = MeyerStatus::Unknown;
    std::vector<std::string> meyer_notes;
    ReportCounts counts;
    std::vector<std::vector<double>> basis_realized;
    std::vector<std::string> caps_hit;
    std::vector<std::pair<std::string, double>> timings_ms;

    // stage diagnostics
    int seed_power = 1;        // p: downstream point work runs on Phi^p
    int contraction_k = 1;     // k with ||Q^-k|| < 1 (working model)
    double spread_e = 0.0;     // e^(k)
    double radius = 0.0;       // R
    double delta = 0.0;        // admission margin
    double bound = 0.0;        // pair-closure bound R + ||Q^-k|| alpha_max
    int closure_level = 0;     // N at stabilization
    double tol_verdict_used = 0.0;
    std::vector<double> xi_realized;
    int xi_colour = 1;  // 1-based
    std::vector<SccSummaryEntry> scc_coin;
    std::vector<SccSummaryEntry> scc_res;

    int exit_code() const;
};

struct PipelineResult {
    Report report;
    OverlapGraph graph;   // full potential-overlap graph (empty if caps hit early)
    GraphSplit split;
    SubstitutionModel prepared;  // recentered base model; edge expansion runs here
    SubstitutionModel working;   // Phi^p of prepared; point-set stages run here
    ColouredPoint xi;
    std::vector<FieldVector> basis;
};

// validate -> recenter -> fixed_seed -> overlap_radius -> basis ->
// pair_closure -> seed_overlaps -> build_graph -> split -> radii -> verdict.
// Cap overruns are caught and downgrade the verdict to Unreliable; hard input
// errors keep throwing.
PipelineResult run_pipeline(const SubstitutionModel& model, const PipelineOptions& opts = {});

} // namespace purepoint
