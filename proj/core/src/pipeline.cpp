#include "purepoint/pipeline.hpp"
#include "purepoint/errors.hpp"

#include <chrono>
#include <cmath>

namespace purepoint {

int Report::exit_code() const {
    switch (verdict) {
        case Verdict::PurePoint: return 0;
        case Verdict::NotPurePoint: return 1;
        case Verdict::Unreliable: return 3;
    }
    return 3;
}

namespace {

class StageTimer {
public:
    explicit StageTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
    template <typename Fn>
    auto time(const std::string& stage, Fn&& fn) {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record(stage, start);
        } else {
            auto out = fn();
            record(stage, start);
            return out;
        }
    }

private:
    void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
        sink_.push_back({stage, ms.count()});
    }
    std::vector<std::pair<std::string, double>>& sink_;
};

std::vector<SccSummaryEntry> summarize(const std::vector<SccRadius>& radii) {
    std::vector<SccSummaryEntry> out;
    for (const auto& s : radii)
        out.push_back({static_cast<int>(s.vertices.size()), s.rho});
    std::sort(out.begin(), out.end(), [](const SccSummaryEntry& a, const SccSummaryEntry& b) {
        if (a.rho != b.rho) return a.rho > b.rho;
        return a.size > b.size;
    });
    return out;
}

// rank check with relative tolerance 1e-9 (Gram-Schmidt)
bool realize_independent(const std::vector<Eigen::VectorXd>& vectors, int dim) {
    if (static_cast<int>(vectors.size()) != dim) return false;
    std::vector<Eigen::VectorXd> ortho;
    for (const auto& v0 : vectors) {
        Eigen::VectorXd v = v0;
        for (const auto& u : ortho) v -= u.dot(v) * u;
        if (v.norm() <= 1e-9 * v0.norm()) return false;
        ortho.push_back(v.normalized());
    }
    return true;
}

} // namespace

PipelineResult run_pipeline(const SubstitutionModel& model, const PipelineOptions& opts) {
    PipelineResult result;
    Report& report = result.report;
    report.model_name = model.name;
    StageTimer timer(report.timings_ms);

    ValidationReport validation = timer.time("validate", [&] { return validate(model); });
    report.beta = validation.abs_det_q;
    report.tol_verdict_used = opts.tol_verdict >= 0 ? opts.tol_verdict : 1e-6 * report.beta;

    result.prepared = timer.time("recenter", [&] {
        return opts.recenter ? recenter(model, opts.recenter_depth) : model;
    });

    MeyerDiagnostics meyer = timer.time("meyer_check", [&] { return meyer_check(result.prepared); });
    report.meyer = meyer.status;
    report.meyer_notes = meyer.notes;

    FixedSeed seed = timer.time("fixed_seed", [&] {
        return fixed_seed(result.prepared, opts.seed_power_cap);
    });
    result.xi = seed.xi;
    report.seed_power = seed.power;
    report.xi_colour = seed.xi.colour + 1;
    Eigen::VectorXd xi_real = realize(result.prepared.realization, seed.xi.pos);
    report.xi_realized.assign(xi_real.data(), xi_real.data() + xi_real.size());

    result.working = timer.time("power_model", [&] {
        return power_model(result.prepared, seed.power);
    });

    auto caps_guard = [&](const char* stage, auto&& fn) -> bool {
        try {
            fn();
            return true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CapExceeded) throw;
            report.caps_hit.push_back(std::string(stage) + ": " + e.what());
            return false;
        }
    };

    OverlapRadius rad;
    if (!caps_guard("overlap_radius", [&] {
            rad = timer.time("overlap_radius", [&] {
                return overlap_radius(result.working, opts.max_points);
            });
        })) {
        report.verdict = Verdict::Unreliable;
        return result;
    }
    report.contraction_k = rad.power;
    report.spread_e = rad.spread;
    report.radius = rad.radius;
    report.delta = admission_margin(rad.radius);

    bool basis_ok = caps_guard("translation_basis", [&] {
        result.basis = timer.time("translation_basis", [&] {
            if (opts.use_model_translations && !model.translations.empty()) {
                std::vector<Eigen::VectorXd> realized;
                for (const auto& t : model.translations)
                    realized.push_back(realize(model.realization, t));
                if (!realize_independent(realized, model.dim))
                    fail(ErrorCode::NoBasis, "translation_basis",
                         "supplied translations are not a realize-independent basis");
                return model.translations;
            }
            return translation_basis(result.working, result.xi, opts.basis_level_cap, opts.max_points);
        });
    });
    if (!basis_ok) {
        report.verdict = Verdict::Unreliable;
        return result;
    }
    double alpha_max = 0.0;
    for (const auto& t : result.basis) {
        Eigen::VectorXd r = realize(result.prepared.realization, t);
        report.basis_realized.emplace_back(r.data(), r.data() + r.size());
        alpha_max = std::max(alpha_max, r.norm());
    }
    report.bound = rad.radius + rad.inv_norm * alpha_max;

    PairClosure closure;
    if (!caps_guard("pair_closure", [&] {
            closure = timer.time("pair_closure", [&] {
                return pair_closure(result.working, result.xi, rad.power, report.bound,
                                    opts.pair_closure_cap, opts.max_points);
            });
        })) {
        report.verdict = Verdict::Unreliable;
        return result;
    }
    report.closure_level = closure.stabilized_at;

    std::vector<OverlapClass> seeds = timer.time("seed_overlaps", [&] {
        std::vector<OverlapClass> pooled;
        for (const auto& alpha : result.basis) {
            auto part = seed_overlaps(result.working, closure.witness, alpha, rad.radius);
            pooled.insert(pooled.end(), std::make_move_iterator(part.begin()),
                          std::make_move_iterator(part.end()));
        }
        std::sort(pooled.begin(), pooled.end(), [](const OverlapClass& a, const OverlapClass& b) {
            return class_key(a) < class_key(b);
        });
        pooled.erase(std::unique(pooled.begin(), pooled.end(),
                                 [](const OverlapClass& a, const OverlapClass& b) {
                                     return class_key(a) == class_key(b);
                                 }),
                     pooled.end());
        return pooled;
    });
    report.counts.seeds = static_cast<long long>(seeds.size());

    if (!caps_guard("build_graph", [&] {
            result.graph = timer.time("build_graph", [&] {
                return build_graph(result.prepared, seeds, rad.radius, opts.max_vertices);
            });
        })) {
        report.verdict = Verdict::Unreliable;
        return result;
    }
    report.counts.vertices = static_cast<long long>(result.graph.vertices.size());
    report.counts.edges = result.graph.edge_count();
    report.counts.coincidences = result.graph.coincidence_count();

    result.split = timer.time("split_graph", [&] { return split_graph(result.graph); });
    report.counts.g_coin_size = static_cast<long long>(result.split.coin.vertices.size());
    report.counts.g_res_size = static_cast<long long>(result.split.res.vertices.size());

    timer.time("spectral_radius", [&] {
        OverlapGraph res_pruned = prune_sinks(result.split.res);
        auto coin_sccs = scc_radii(result.split.coin.digraph(), opts.spectral_tol);
        auto res_sccs = scc_radii(res_pruned.digraph(), opts.spectral_tol);
        report.scc_coin = summarize(coin_sccs);
        report.scc_res = summarize(res_sccs);
        report.rho_coin = 0.0;
        for (const auto& s : coin_sccs) report.rho_coin = std::max(report.rho_coin, s.rho);
        report.rho_res = 0.0;
        for (const auto& s : res_sccs) report.rho_res = std::max(report.rho_res, s.rho);
    });

    report.verdict = decide_verdict(report.rho_coin, report.rho_res, report.beta, report.meyer,
                                    !report.caps_hit.empty(), report.tol_verdict_used);
    if (report.verdict == Verdict::PurePoint && report.rho_res >= 1.0 - 1e-9 && report.beta > 1.0) {
        double rho = std::max(report.rho_res, 1.0);
        report.boundary_dim = boundary_dimension(model.dim, rho, report.beta);
    }
    return result;
}

} // namespace purepoint
