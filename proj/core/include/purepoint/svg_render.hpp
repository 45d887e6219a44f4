#pragma once

#include "purepoint/model.hpp"

#include <string>

namespace purepoint {

struct RenderOptions {
    int depth = 4;      // patch iteration depth k
    int tile_res = 0;   // address-cloud depth per tile shape; 0 draws markers only
    double width = 800; // canvas width in px
    long long max_points = 5'000'000;
};

// Draws Phi^depth(xi) as colour-coded markers, with tile shapes approximated
// by depth-`tile_res` digit-address clouds instanced per point. d = 1 renders
// on a line, d = 3 projects to the first two coordinates (labelled).
// Errors: UnsupportedDim for d > 3.
std::string render_patch_svg(const SubstitutionModel& model, const ColouredPoint& xi,
                             const RenderOptions& opts);

} // namespace purepoint
