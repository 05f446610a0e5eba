#pragma once

#include "reebarr/arrangement.h"

#include <string>
#include <vector>

namespace reebarr {

struct SvgOverlay {
    std::vector<Point> anchors;
    std::vector<Segment> chords;
    std::vector<Circle> secants;
};

/// Circles thin, boundary arcs thick, double points dotted, overlays in
/// their own strokes. The y axis points up.
std::string render_svg(const Arrangement& arr, const SvgOverlay& overlay = {}, int width = 600);

}  // namespace reebarr
