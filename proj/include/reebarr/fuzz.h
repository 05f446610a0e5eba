#pragma once

#include "reebarr/rng.h"
#include "reebarr/surgery.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reebarr {

/// A disk, or a disk with one or two holes, with generic events.
Arrangement random_base(Rng& rng);

struct DrawOptions {
    bool supported = true;
    bool unsupported = true;
    bool concave = true;
    bool double_point = true;
    double pole_prob = 0.25;
    double double_point_prob = 0.4;
    int attempts = 200;
};

struct Drawn {
    SurgerySpec spec;
    Arrangement result = Arrangement::unchecked({}, 0);
};

/// Draws a surgery that satisfies the smallness rules fixed in advance:
///  - the secant circle meets no circle other than its hosts;
///  - new crossings with the hosts away from the chord lie outside the closure;
///  - the arc of the secant circle that ends up on the boundary has a tangent
///    range free of axis directions, unless the chord is axis-aligned at a
///    pole by construction;
///  - no other sweep event projects into the probe disk's span on either axis.
std::optional<Drawn> draw_surgery(const Arrangement& arr, Rng& rng, const DrawOptions& opt = {});

/// Random base followed by up to max_steps surgeries, at most max_circles circles.
Arrangement random_ssc(Rng& rng, std::size_t max_circles, std::size_t max_steps);

/// Distinct event values differ by at least `cells` grid cells on both axes;
/// equal values must be at least that far apart across the sweep direction.
bool events_separated(const Arrangement& arr, int grid, double cells);

struct CampaignSummary {
    std::string name;
    std::size_t attempted = 0;
    std::size_t passed = 0;
    std::map<std::string, std::size_t> counts;
    std::vector<std::string> failures;  // first few

    bool ok() const { return attempted > 0 && passed == attempted; }
    std::string to_json() const;
};

CampaignSummary oracle_campaign(std::uint64_t seed, std::size_t count, int grid = 512, std::size_t max_circles = 6,
                               std::size_t max_steps = 3);
CampaignSummary class_campaign(std::uint64_t seed, std::size_t count);
CampaignSummary pattern_campaign(std::uint64_t seed, std::size_t count);
CampaignSummary sign_campaign(std::uint64_t seed, std::size_t anchors, std::size_t chords_per_anchor);

}  // namespace reebarr
