#include "purepoint/report.hpp"

#include <iomanip>
#include <sstream>

namespace purepoint {

using nlohmann::ordered_json;

namespace {

ordered_json vec_json(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::string fmt_vec(const std::vector<double>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << std::setprecision(6) << v[i];
    }
    os << ")";
    return os.str();
}

} // namespace

ordered_json report_to_json(const Report& report, bool with_timings) {
    ordered_json j;
    j["model"] = report.model_name;
    j["verdict"] = verdict_name(report.verdict);
    j["rho_coin"] = report.rho_coin;
    j["rho_res"] = report.rho_res;
    j["beta"] = report.beta;
    if (report.boundary_dim)
        j["boundary_dim"] = *report.boundary_dim;
    else
        j["boundary_dim"] = nullptr;
    j["meyer"] = meyer_name(report.meyer);
    j["meyer_notes"] = report.meyer_notes;
    j["counts"] = {{"vertices", report.counts.vertices},
                   {"edges", report.counts.edges},
                   {"g_coin_size", report.counts.g_coin_size},
                   {"g_res_size", report.counts.g_res_size},
                   {"seeds", report.counts.seeds},
                   {"coincidences", report.counts.coincidences}};
    j["basis"] = ordered_json::array();
    for (const auto& b : report.basis_realized) j["basis"].push_back(vec_json(b));
    j["xi"] = {{"colour", report.xi_colour}, {"realized", vec_json(report.xi_realized)}};
    j["stages"] = {{"seed_power", report.seed_power},
                   {"contraction_k", report.contraction_k},
                   {"spread_e", report.spread_e},
                   {"radius", report.radius},
                   {"delta", report.delta},
                   {"bound", report.bound},
                   {"closure_level", report.closure_level},
                   {"tol_verdict", report.tol_verdict_used}};
    auto scc = [](const std::vector<SccSummaryEntry>& entries) {
        ordered_json arr = ordered_json::array();
        for (const auto& e : entries) arr.push_back({{"size", e.size}, {"rho", e.rho}});
        return arr;
    };
    j["scc"] = {{"coin", scc(report.scc_coin)}, {"res", scc(report.scc_res)}};
    j["caps_hit"] = report.caps_hit;
    if (with_timings) {
        ordered_json t;
        for (const auto& [stage, ms] : report.timings_ms) t[stage] = ms;
        j["timings_ms"] = t;
    }
    return j;
}

std::string report_to_text(const Report& report) {
    std::ostringstream os;
    os << "model:        " << report.model_name << "\n";
    os << "verdict:      " << verdict_name(report.verdict) << "\n";
    os << "rho_coin:     " << fmt(report.rho_coin) << "\n";
    os << "rho_res:      " << fmt(report.rho_res) << "\n";
    os << "beta:         " << fmt(report.beta) << "\n";
    os << "boundary_dim: " << (report.boundary_dim ? fmt(*report.boundary_dim) : "-") << "\n";
    os << "meyer:        " << meyer_name(report.meyer);
    for (const auto& note : report.meyer_notes) os << " [" << note << "]";
    os << "\n";
    os << "counts:       vertices=" << report.counts.vertices << " edges=" << report.counts.edges
       << " g_coin=" << report.counts.g_coin_size << " g_res=" << report.counts.g_res_size
       << " seeds=" << report.counts.seeds << " coincidences=" << report.counts.coincidences << "\n";
    os << "basis:       ";
    for (const auto& b : report.basis_realized) os << " " << fmt_vec(b);
    os << "\n";
    os << "xi:           colour " << report.xi_colour << " at " << fmt_vec(report.xi_realized) << "\n";
    os << "stages:       p=" << report.seed_power << " k=" << report.contraction_k
       << " e=" << fmt(report.spread_e) << " R=" << fmt(report.radius)
       << " delta=" << fmt(report.delta) << " bound=" << fmt(report.bound)
       << " N=" << report.closure_level << " tol_verdict=" << fmt(report.tol_verdict_used) << "\n";
    auto scc_line = [&](const char* label, const std::vector<SccSummaryEntry>& entries) {
        os << label;
        for (const auto& e : entries) os << " (" << e.size << ", " << fmt(e.rho) << ")";
        os << "\n";
    };
    scc_line("scc coin:    ", report.scc_coin);
    scc_line("scc res:     ", report.scc_res);
    os << "caps_hit:    ";
    if (report.caps_hit.empty()) os << " none";
    for (const auto& c : report.caps_hit) os << " [" << c << "]";
    os << "\n";
    os << "timings_ms:  ";
    for (const auto& [stage, ms] : report.timings_ms)
        os << " " << stage << "=" << std::setprecision(1) << std::fixed << ms << std::defaultfloat
           << std::setprecision(6);
    os << "\n";
    return os.str();
}

} // namespace purepoint
