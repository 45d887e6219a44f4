#include "purepoint/svg_render.hpp"
#include "purepoint/errors.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace purepoint {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                          "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
                          "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5"};

const char* colour_of(int c) { return kPalette[c % 20]; }

struct Projector {
    int dim;
    double x(const double* p) const { return p[0]; }
    double y(const double* p) const { return dim >= 2 ? p[1] : 0.0; }
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

} // namespace

std::string render_patch_svg(const SubstitutionModel& model, const ColouredPoint& xi,
                             const RenderOptions& opts) {
    if (model.dim > 3)
        fail(ErrorCode::UnsupportedDim, "render", "rendering supports d <= 3");

    ColouredPointSet start(model.realization);
    start.insert(xi);
    ColouredPointSet patch = iterate_points(model, start, opts.depth, opts.max_points);
    Projector proj{model.dim};

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        const double* p = patch.realized(i);
        xmin = std::min(xmin, proj.x(p));
        xmax = std::max(xmax, proj.x(p));
        ymin = std::min(ymin, proj.y(p));
        ymax = std::max(ymax, proj.y(p));
    }
    double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    double margin = 0.08 * span;
    xmin -= margin; xmax += margin; ymin -= margin; ymax += margin;
    double scale = opts.width / (xmax - xmin);
    double height = (ymax - ymin) * scale;
    auto px = [&](double x) { return (x - xmin) * scale; };
    auto py = [&](double y) { return height - (y - ymin) * scale; };
    double marker_r = std::max(1.0, 0.012 * opts.width * std::pow(0.5, opts.depth * 0.25));

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
       << "width=\"" << num(opts.width) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 "
       << num(opts.width) << " " << num(height) << "\">\n";
    os << "<!-- patch depth " << opts.depth << ", " << patch.size() << " markers";
    if (model.dim == 3) os << ", projection onto coordinates 1,2";
    os << " -->\n";

    if (opts.tile_res > 0) {
        os << "<defs>\n";
        for (int c = 0; c < model.colours; ++c) {
            os << "  <g id=\"tile" << c << "\">\n";
            for (const auto& a : tile_address_points(model, c, opts.tile_res)) {
                Eigen::VectorXd r = realize(model.realization, a);
                os << "    <circle cx=\"" << num(r(0) * scale) << "\" cy=\""
                   << num(-(model.dim >= 2 ? r(1) : 0.0) * scale) << "\" r=\""
                   << num(std::max(0.4, marker_r * 0.3)) << "\" fill=\"" << colour_of(c)
                   << "\" fill-opacity=\"0.35\"/>\n";
            }
            os << "  </g>\n";
        }
        os << "</defs>\n";
    }

    for (std::size_t i = 0; i < patch.size(); ++i) {
        const double* p = patch.realized(i);
        int c = patch.point(i).colour;
        if (opts.tile_res > 0)
            os << "<use xlink:href=\"#tile" << c << "\" x=\"" << num(px(proj.x(p))) << "\" y=\""
               << num(py(proj.y(p))) << "\"/>\n";
        os << "<circle class=\"marker c" << c << "\" cx=\"" << num(px(proj.x(p))) << "\" cy=\""
           << num(py(proj.y(p))) << "\" r=\"" << num(marker_r) << "\" fill=\"" << colour_of(c)
           << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace purepoint
