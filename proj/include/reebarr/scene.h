#pragma once

#include "reebarr/arrangement.h"
#include "reebarr/reeb.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reebarr {

struct ScriptStep {
    Point anchor;
    double rho = 0.0;
    std::array<double, 2> offsets{0.0, 0.0};
    double t = 0.0;
    SurgeryKind kind = SurgeryKind::Thm11Unsupported;
    Axis axis = Axis::X;
};

struct Scene {
    Arrangement arr = Arrangement::unchecked({}, 0);
    std::map<std::string, Point> anchors;
    std::vector<ScriptStep> script;
};

/// Tolerance overrides applied on top of the scene's own "tol" field.
struct TolOverrides {
    std::optional<double> tol;
    std::optional<double> event_gap;
};

/// Parses and validates a scene. Errors carry a byte offset or a JSON
/// pointer to the offending field.
Scene parse_scene(const std::string& text, const TolOverrides& ov = {});
Scene load_scene(const std::string& path, const TolOverrides& ov = {});

/// Reads {"steps": [...]} (anchors may name entries of `anchors`).
std::vector<ScriptStep> parse_script(const std::string& text, const std::map<std::string, Point>& anchors = {});
std::vector<ScriptStep> load_script(const std::string& path, const std::map<std::string, Point>& anchors = {});

std::string scene_to_json(const Arrangement& arr);

std::string read_file(const std::string& path);

/// Default tolerances, honouring the REEB_ARRANGE_TOL environment variable.
Tolerances default_tolerances();

}  // namespace reebarr
