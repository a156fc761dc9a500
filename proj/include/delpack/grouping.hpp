#pragma once

#include "delpack/delone.hpp"

#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

namespace delpack {

class GroupingError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class RatioExceeded : public GroupingError
{
public:
    using GroupingError::GroupingError;
};

class CycleDetected : public GroupingError
{
public:
    using GroupingError::GroupingError;
};

class PathTooLong : public GroupingError
{
public:
    using GroupingError::GroupingError;
};

class InvariantViolation : public GroupingError
{
public:
    using GroupingError::GroupingError;
};

inline constexpr int kMaxPathEdges = 7;
inline constexpr int kMaxComponentSize = 1 + 3 * ((1 << kMaxPathEdges) - 1);

/// Packing radius r (half the least point distance) and covering radius R
/// (largest empty circumradius among the counted triangles).
struct RRRadii
{
    double r = 0.0;
    double R = 0.0;
    double ratio() const { return R / r; }
};

RRRadii rr_radii(const DeloneTriangulation& t);

/// Each obtuse triangle points to the neighbour across its longest side.
struct ObtuseDigraph
{
    // Triangles taking part in the statistics (all on a torus; fully interior
    // components in a window).
    std::vector<char> active;
    std::vector<int> target;  // -1 when no outgoing edge
    std::vector<std::vector<int>> sources;
    std::vector<int> component;  // weak component id, -1 for inactive triangles
    int component_count = 0;
    int longest_path = 0;
    int largest_component = 0;
    RRRadii radii{};
    bool invariants_checked = false;
};

/// Builds the digraph and checks its structural invariants. Throws RatioExceeded when
/// R/r > 2*sqrt(2) unless allow_ratio_exceeded is set, in which case the digraph is
/// returned without invariant checks.
ObtuseDigraph build_obtuse_digraph(const DeloneTriangulation& t, bool allow_ratio_exceeded = false);

/// Structural problems of a digraph, empty when every invariant holds.
std::vector<std::string> digraph_violations(const ObtuseDigraph& g, const DeloneTriangulation& t);

enum class GroupCase { NonObtuseSingle = 1, ObtuseSingle = 2, NonObtuseHub = 3, ObtuseHub = 4 };

struct TriangleClass
{
    GroupCase kind = GroupCase::NonObtuseSingle;
    int hub = -1;                // the triangle receiving the leaves, or the singleton
    std::vector<int> members;    // hub first
    double mean_area = 0.0;
    double bound = 0.0;          // lower bound the mean must respect
};

struct GroupingForest
{
    std::vector<TriangleClass> classes;
    std::vector<int> class_of;  // per triangle, -1 if inactive
    double r = 0.0;
    double v0 = std::numeric_limits<double>::infinity();
    double tolerance = 0.0;
    std::vector<std::string> violations;
};

/// Groups the active triangles into classes and checks their area bounds.
/// Throws InvariantViolation when any check fails.
GroupingForest form_groups(const ObtuseDigraph& g, const DeloneTriangulation& t);

/// Same grouping but never throws on failed checks; they are listed in violations.
GroupingForest form_groups_unchecked(const ObtuseDigraph& g, const DeloneTriangulation& t);

struct AreaCertificate
{
    RRRadii radii{};
    double v0 = std::numeric_limits<double>::infinity();
    double mean_area = 0.0;
    double bound = 0.0;
    std::size_t triangle_count = 0;
    int longest_path = 0;
    std::vector<TriangleClass> classes;
    std::vector<std::string> violations;
    bool pass = false;
};

/// Global mean triangle area against min(V0, 2r^2) with every class checked.
AreaCertificate average_area_certificate(const DeloneTriangulation& t, bool allow_ratio_exceeded = false);

nlohmann::json to_json(const AreaCertificate& c);

}  // namespace delpack
