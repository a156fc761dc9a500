#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace delpack {

class ProfileError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class CoveringViolated : public ProfileError
{
public:
    using ProfileError::ProfileError;
};

class HypothesisViolated : public ProfileError
{
public:
    using ProfileError::ProfileError;
};

/// A periodic string or layer of unit bodies, described through its axial lattice.
struct StringProfile
{
    enum class Kind { String1D, SquareLayer, TriLayer, CustomConcave };

    Kind kind = Kind::String1D;
    // String1D: ball centres at 2d * k. CustomConcave: period 2d along the axis.
    double d = 1.0;
    // CustomConcave: radius samples over one period [0, 2d), linearly interpolated.
    std::vector<double> f_samples;

    static StringProfile string1d(double d);
    static StringProfile square_layer();
    static StringProfile tri_layer();
    static StringProfile custom(double half_period, std::vector<double> samples);

    /// Dimension of the axial space (1 for strings, 2 for layers).
    int axis_dim() const;
};

using AxialOffset = std::array<double, 2>;  // second entry ignored when axis_dim() == 1

const char* to_string(StringProfile::Kind k);

StringProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StringProfile& p);

/// Half of the least axis separation at which two translates with the given axial offset are disjoint.
double g_value(const StringProfile& p, AxialOffset offset);

/// Distance from an axial offset to the nearest point of the profile's axial lattice.
double axial_distance(const StringProfile& p, AxialOffset offset);

struct ProfileExtremes
{
    double m = 0.0;
    double M = 0.0;
    AxialOffset argmin{};
};

ProfileExtremes m_M_of(const StringProfile& p);

struct V0Options
{
    int grid = 256;            // initial boxes per axial coordinate (strings); layers use grid / 16
    double tolerance = 1e-10;  // target width of the certified bracket
    std::size_t max_boxes = 4'000'000;
};

struct V0Result
{
    double value = 0.0;  // best area found (upper end of the bracket)
    double lower = 0.0;
    double upper = 0.0;
    std::array<AxialOffset, 2> offsets{};
    std::array<double, 3> sides{};
    std::size_t boxes = 0;
    bool converged = false;
};

V0Result v0_of(const StringProfile& p, const V0Options& opt = {});

/// Volume fraction of the profile inside its circumscribed cylinder.
double fill_density(const StringProfile& p);

/// pi d(L) / (2 sqrt(4 m^2 - 1)).
double density_lower_bound(const StringProfile& p);

}  // namespace delpack
