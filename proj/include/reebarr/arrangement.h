#pragma once

#include "reebarr/geom.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reebarr {

enum class Side { Inside, Outside };

std::string_view side_name(Side s);

enum class SurgeryKind { Thm11Supported, Thm11Unsupported, Thm12Concave, Thm32Double };

std::string_view surgery_kind_name(SurgeryKind k);
std::optional<SurgeryKind> parse_surgery_kind(std::string_view s);

/// How a circle was produced by a chord surgery. Stored so that the SSC-NI
/// classification can be decided from the construction log.
struct Provenance {
    SurgeryKind kind = SurgeryKind::Thm11Unsupported;
    Point anchor;
    Segment chord;
    double rho = 0.0;
    std::array<double, 2> offsets{0.0, 0.0};
    double secant_t = 0.0;
};

struct ArrCircle {
    Circle circle;
    Side side = Side::Inside;
    std::size_t step_index = 0;  // 0 for the initial set
    std::optional<Provenance> provenance;

    /// Signed distance oriented so that the region side is negative.
    double region_dist(Point p) const {
        const double d = circle.signed_dist(p);
        return side == Side::Inside ? d : -d;
    }
};

enum class MemberKind { Interior, Boundary, Exterior };

struct Membership {
    MemberKind kind = MemberKind::Exterior;
    std::vector<std::size_t> on_circles;
};

/// Region D_S given as the conjunction of per-circle side conditions, in
/// construction order. Values are immutable; extension returns a copy.
class Arrangement {
public:
    /// Builds the initial arrangement, deriving sides structurally.
    static Arrangement initial(const std::vector<Circle>& circles, const Tolerances& tol = {});

    /// No validation. Used for transposed copies and for tests of invalid data.
    static Arrangement unchecked(std::vector<ArrCircle> circles, std::size_t initial_count,
                                 const Tolerances& tol = {});

    const std::vector<ArrCircle>& circles() const { return circles_; }
    std::size_t size() const { return circles_.size(); }
    std::size_t initial_count() const { return initial_count_; }
    const Tolerances& tolerances() const { return tol_; }
    const ArrCircle& operator[](std::size_t i) const { return circles_[i]; }

    Membership contains(Point p) const;
    bool in_closure(Point p) const { return contains(p).kind != MemberKind::Exterior; }

    /// Bounding box of the enclosing (Inside) circles: {xmin, ymin, xmax, ymax}.
    std::array<double, 4> bbox() const;

    /// Copy without the last circle (no revalidation).
    Arrangement without_last() const;

private:
    friend Arrangement validate_step(const Arrangement&, const Circle&, Side, std::optional<Provenance>);

    std::vector<ArrCircle> circles_;
    std::size_t initial_count_ = 0;
    Tolerances tol_;
};

/// Structural check of an initial disjoint circle set: one enclosing circle
/// (Inside) and the rest pairwise disjoint, non-nested holes (Outside).
std::vector<Side> validate_initial(const std::vector<Circle>& circles, const Tolerances& tol = {});

Arrangement validate_step(const Arrangement& arr, const Circle& nc, Side side,
                          std::optional<Provenance> provenance = std::nullopt);

struct DoublePoint {
    Point point;
    std::size_t i1 = 0;
    std::size_t i2 = 0;
};

/// Pairwise intersection points lying in the closure of the region.
std::vector<DoublePoint> double_points(const Arrangement& arr);

struct BoundaryArc {
    std::size_t circle = 0;
    Arc arc;
};

/// Maximal arcs of each circle lying on the boundary of the closure.
std::vector<BoundaryArc> boundary_arcs(const Arrangement& arr);

struct ClassReport {
    bool ni = true;
    bool ni_mbc = false;
    bool nci = false;
    bool nci_mbc = false;
    bool mbcc = false;
    bool ssc_ni = false;
    std::vector<std::string> notes;
};

ClassReport classify(const Arrangement& arr);

/// Swap x and y of every circle; the Y-projection graph of arr is the
/// X-projection graph of the transpose.
Arrangement transposed(const Arrangement& arr);
/// Mirror x -> -x.
Arrangement mirrored_x(const Arrangement& arr);

/// Runs the region checks shared by validate_initial/validate_step:
/// nonempty, connected, generic events in both projections.
void check_region(const Arrangement& arr);

}  // namespace reebarr
