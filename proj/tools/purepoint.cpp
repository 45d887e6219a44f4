#include "purepoint/dot_export.hpp"
#include "purepoint/errors.hpp"
#include "purepoint/model_io.hpp"
#include "purepoint/oracle.hpp"
#include "purepoint/pipeline.hpp"
#include "purepoint/report.hpp"
#include "purepoint/svg_render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace purepoint;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::CapExceeded:
        case ErrorCode::NoBasis:
        case ErrorCode::NoFixedPoint:
        case ErrorCode::NoConvergence:
        case ErrorCode::SingularMatrix:
            return 3;
        default:
            return 2;  // input / model errors
    }
}

void print_error(const Error& e) {
    std::cerr << "error [stage=" << e.stage() << "] " << error_code_name(e.code()) << ": "
              << e.what() << "\n";
}

struct CheckFlags {
    std::string path;
    bool suspend = false;
    bool no_recenter = false;
    bool auto_basis = false;
    std::string report_format = "text";
    std::string output;
    double tol_verdict = -1.0;
    int precision_bits = 0;
    long long max_vertices = 200'000;
    long long max_points = 5'000'000;
    int seed_power_cap = 6;
};

void add_check_flags(CLI::App* cmd, CheckFlags& flags) {
    cmd->add_option("model", flags.path, "model file (JSON)")->required();
    cmd->add_flag("--suspend", flags.suspend, "input is a symbolic rule file; suspend it first");
    cmd->add_flag("--no-recenter", flags.no_recenter, "skip digit recentering");
    cmd->add_flag("--auto-basis", flags.auto_basis,
                  "ignore the file's translations; scan patches for a basis");
    cmd->add_option("--report", flags.report_format, "report format: json | text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("-o,--output", flags.output, "write the report here instead of stdout");
    cmd->add_option("--tol-verdict", flags.tol_verdict, "verdict margin (default 1e-6 * beta)");
    cmd->add_option("--precision-bits", flags.precision_bits, "field working precision override");
    cmd->add_option("--max-vertices", flags.max_vertices, "overlap-graph vertex cap");
    cmd->add_option("--max-points", flags.max_points, "patch point cap");
    cmd->add_option("--seed-power-cap", flags.seed_power_cap, "max substitution power for the fixed point");
}

SubstitutionModel load_input(const CheckFlags& flags) {
    if (flags.suspend)
        return suspend_symbolic(load_symbolic_file(flags.path),
                                flags.precision_bits > 0 ? flags.precision_bits : 128);
    return load_model_file(flags.path, flags.precision_bits);
}

PipelineOptions options_from(const CheckFlags& flags) {
    PipelineOptions opts;
    opts.recenter = !flags.no_recenter;
    opts.use_model_translations = !flags.auto_basis;
    opts.tol_verdict = flags.tol_verdict;
    opts.max_vertices = flags.max_vertices;
    opts.max_points = flags.max_points;
    opts.seed_power_cap = flags.seed_power_cap;
    return opts;
}

void write_out(const std::string& output, const std::string& content) {
    if (output.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(output);
    if (!out) fail(ErrorCode::IoError, "output", "cannot write " + output);
    out << content;
}

int run_check(const CheckFlags& flags) {
    SubstitutionModel model = load_input(flags);
    PipelineResult result = run_pipeline(model, options_from(flags));
    std::string rendered = flags.report_format == "json"
                               ? report_to_json(result.report).dump(2) + "\n"
                               : report_to_text(result.report);
    write_out(flags.output, rendered);
    return result.report.exit_code();
}

int run_suspend(const std::string& path, const std::string& output) {
    SubstitutionModel model = suspend_symbolic(load_symbolic_file(path));
    write_out(output, emit_model_json(model).dump(2) + "\n");
    return 0;
}

int run_graph(const CheckFlags& flags, const std::string& dot_path) {
    SubstitutionModel model = load_input(flags);
    PipelineResult result = run_pipeline(model, options_from(flags));
    if (result.graph.vertices.empty())
        fail(ErrorCode::CapExceeded, "graph", "pipeline stopped before a graph was built");
    write_out(dot_path, graph_to_dot(result.graph, result.split, result.prepared.realization));
    std::cerr << "wrote " << result.graph.vertices.size() << " nodes, "
              << result.graph.edge_count() << " edges\n";
    return result.report.exit_code();
}

int run_render(const CheckFlags& flags, const std::string& svg_path, int depth, int tile_res) {
    SubstitutionModel model = load_input(flags);
    validate(model);
    FixedSeed seed = fixed_seed(model);
    RenderOptions opts;
    opts.depth = depth;
    opts.tile_res = tile_res;
    opts.max_points = flags.max_points;
    write_out(svg_path, render_patch_svg(model, seed.xi, opts));
    return 0;
}

int run_oracle(const CheckFlags& flags, int alpha_index, int n_max, int depth) {
    SubstitutionModel model = load_input(flags);
    validate(model);
    FieldVector alpha;
    if (!model.translations.empty()) {
        if (alpha_index < 0 || alpha_index >= static_cast<int>(model.translations.size()))
            fail(ErrorCode::DomainError, "oracle", "--alpha index out of range");
        alpha = model.translations[static_cast<std::size_t>(alpha_index)];
    } else {
        FixedSeed seed = fixed_seed(model);
        auto basis = translation_basis(power_model(model, seed.power), seed.xi);
        if (alpha_index < 0 || alpha_index >= static_cast<int>(basis.size()))
            fail(ErrorCode::DomainError, "oracle", "--alpha index out of range");
        alpha = basis[static_cast<std::size_t>(alpha_index)];
    }
    DensitySeries series = density_series(model, alpha, alpha_index, n_max, depth, flags.max_points);
    std::ostringstream os;
    os << "# density of agreement with the Q^n alpha translate\n";
    os << "# alpha index " << alpha_index << ", depth " << depth
       << (series.exact_intervals ? ", exact interval lengths" : "")
       << (series.heuristic ? ", point-count proxy (non-cube tiles): heuristic" : "") << "\n";
    os << std::setw(4) << "n" << std::setw(12) << "density" << "\n";
    bool monotone = true;
    for (std::size_t i = 0; i < series.n_values.size(); ++i) {
        os << std::setw(4) << series.n_values[i] << std::setw(12) << std::fixed
           << std::setprecision(5) << series.densities[i] << "\n";
        if (i > 0 && series.densities[i] < series.densities[i - 1] - 0.02) monotone = false;
    }
    os << "# series " << (monotone ? "is" : "is NOT") << " non-decreasing (0.02 slack)\n";
    write_out(flags.output, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pure point spectrum checker for self-affine substitution tilings"};
    app.require_subcommand(1);

    CheckFlags check_flags, graph_flags, render_flags, oracle_flags;
    std::string suspend_path, suspend_output;
    std::string dot_path, svg_path;
    int render_depth = 4, render_tile_res = 0;
    int oracle_alpha = 0, oracle_n_max = 6, oracle_depth = 10;

    CLI::App* cmd_check = app.add_subcommand("check", "decide pure pointedness of a model");
    add_check_flags(cmd_check, check_flags);

    CLI::App* cmd_suspend = app.add_subcommand("suspend", "suspend a symbolic substitution into a model file");
    cmd_suspend->add_option("rules", suspend_path, "symbolic rule file (JSON)")->required();
    cmd_suspend->add_option("-o,--output", suspend_output, "write the model here instead of stdout");

    CLI::App* cmd_graph = app.add_subcommand("graph", "run a check and export the overlap graph as DOT");
    add_check_flags(cmd_graph, graph_flags);
    cmd_graph->add_option("--dot", dot_path, "output DOT path")->required();

    CLI::App* cmd_render = app.add_subcommand("render", "render a patch of the tiling as SVG");
    add_check_flags(cmd_render, render_flags);
    cmd_render->add_option("--svg", svg_path, "output SVG path")->required();
    cmd_render->add_option("--depth", render_depth, "patch iteration depth");
    cmd_render->add_option("--tile-res", render_tile_res, "tile attractor cloud depth (0: markers only)");

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "density series diagnostic (independent of the graph)");
    add_check_flags(cmd_oracle, oracle_flags);
    cmd_oracle->add_option("--alpha", oracle_alpha, "translation index");
    cmd_oracle->add_option("--n-max", oracle_n_max, "largest n in the Q^n alpha series");
    cmd_oracle->add_option("--depth", oracle_depth, "patch depth for counting");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_check->parsed()) return run_check(check_flags);
        if (cmd_suspend->parsed()) return run_suspend(suspend_path, suspend_output);
        if (cmd_graph->parsed()) return run_graph(graph_flags, dot_path);
        if (cmd_render->parsed()) return run_render(render_flags, svg_path, render_depth, render_tile_res);
        if (cmd_oracle->parsed()) return run_oracle(oracle_flags, oracle_alpha, oracle_n_max, oracle_depth);
    } catch (const Error& e) {
        print_error(e);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
