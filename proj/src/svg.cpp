#include "reebarr/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace reebarr {

std::string render_svg(const Arrangement& arr, const SvgOverlay& overlay, int width) {
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (const ArrCircle& c : arr.circles()) {
        xmin = std::min(xmin, c.circle.center.x - c.circle.radius);
        xmax = std::max(xmax, c.circle.center.x + c.circle.radius);
        ymin = std::min(ymin, c.circle.center.y - c.circle.radius);
        ymax = std::max(ymax, c.circle.center.y + c.circle.radius);
    }
    if (arr.size() == 0) xmin = ymin = -1, xmax = ymax = 1;
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    xmin -= pad, ymin -= pad, xmax += pad, ymax += pad;
    const double scale = width / (xmax - xmin);
    const int height = static_cast<int>(std::ceil((ymax - ymin) * scale));
    auto X = [&](double x) { return (x - xmin) * scale; };
    auto Y = [&](double y) { return (ymax - y) * scale; };

    std::ostringstream os;
    char buf[256];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const ArrCircle& c : arr.circles()) {
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"%s\" stroke-width=\"1\"/>\n",
                      X(c.circle.center.x), Y(c.circle.center.y), c.circle.radius * scale,
                      c.side == Side::Inside ? "#8899cc" : "#cc8888");
        os << buf;
    }
    for (const BoundaryArc& ba : boundary_arcs(arr)) {
        const Circle& c = arr[ba.circle].circle;
        const int n = std::max(8, static_cast<int>(ba.arc.sweep / (2 * std::numbers::pi) * 256));
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"3\" points=\"";
        for (int i = 0; i <= n; ++i) {
            const Point p = c.at(ba.arc.start + ba.arc.sweep * i / n);
            std::snprintf(buf, sizeof(buf), "%.3f,%.3f ", X(p.x), Y(p.y));
            os << buf;
        }
        os << "\"/>\n";
    }
    for (const DoublePoint& d : double_points(arr)) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"black\"/>\n", X(d.point.x),
                      Y(d.point.y));
        os << buf;
    }
    for (const Circle& c : overlay.secants) {
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"purple\" "
                      "stroke-dasharray=\"4 3\"/>\n",
                      X(c.center.x), Y(c.center.y), c.radius * scale);
        os << buf;
    }
    for (const Segment& s : overlay.chords) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"green\" stroke-width=\"2\"/>\n",
                      X(s.a.x), Y(s.a.y), X(s.b.x), Y(s.b.y));
        os << buf;
    }
    for (Point p : overlay.anchors) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"orange\"/>\n", X(p.x), Y(p.y));
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace reebarr
