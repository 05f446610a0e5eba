#pragma once

#include "reebarr/chords.h"
#include "reebarr/reeb.h"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace reebarr {

struct SurgerySpec {
    Point anchor;
    Chord chord;
    SecantCircle secant;
    Side side = Side::Outside;
    SurgeryKind kind = SurgeryKind::Thm11Unsupported;
};

/// The side follows from the kind: Inside only for the supported surgery.
Side side_for(SurgeryKind kind);

SurgerySpec make_spec(const Arrangement& arr, Point anchor, double rho, std::array<double, 2> offsets, double t,
                      SurgeryKind kind);

/// Adds the secant circle after checking the hypotheses of its kind.
Arrangement apply(const Arrangement& arr, const SurgerySpec& spec);

enum class Pattern { T2_1_1, T2_1_2, T2_2_1, T2_2_2, T5_lt, T5_eq, T5_gt, Unrecognized };

std::string_view pattern_name(Pattern p);
std::optional<Pattern> parse_pattern(std::string_view s);

struct ChangeReport {
    Pattern pattern = Pattern::Unrecognized;
    /// before vertex -> after vertex, -1 when removed
    std::vector<long> mapping;
    std::vector<std::size_t> new_vertices;
    std::optional<std::array<double, 2>> i_values;
    bool mirrored = false;  // matched on the reversed graphs
    std::string detail;
};

/// Every template that matches the change, deduplicated by pattern.
std::vector<ChangeReport> matching_patterns(const PRGraph& before, const PRGraph& after, double locus);

/// The unique matching template, or Unrecognized.
ChangeReport classify_change(const PRGraph& before, const PRGraph& after, double locus);

/// Patterns the anchor taxonomy allows for this surgery on the given axis.
std::set<Pattern> predicted_patterns(const Arrangement& arr, const SurgerySpec& spec, Axis axis);

struct VerifyReport {
    Pattern pattern = Pattern::Unrecognized;
    std::set<Pattern> expected;
    bool ok = false;
    std::string before;
    std::string after;
    std::optional<std::array<double, 2>> i_values;
    std::string detail;

    std::string to_json() const;
};

/// Applies the surgery, classifies the change on the axis and checks it
/// against the expected set (the prediction when expected is empty).
VerifyReport verify_theorem(const Arrangement& arr, const SurgerySpec& spec, Axis axis,
                            std::set<Pattern> expected = {});

}  // namespace reebarr
