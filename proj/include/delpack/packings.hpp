#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace delpack {

class OutOfRange : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

using VecN = std::vector<double>;

struct LatticeBasis
{
    int dim = 0;
    std::vector<VecN> vectors;
    std::string description;

    /// |det| of the basis matrix; throws if the vectors are dependent.
    double cell_volume() const;
    double gram_determinant() const;
};

/// Translates of a finite motif by a lattice.
struct PeriodicPacking
{
    LatticeBasis periods;
    std::vector<VecN> motif;
    std::string description;

    double density() const;  // unit balls
};

PeriodicPacking as_packing(const LatticeBasis& b);

struct PackingCheck
{
    double unit_radius = 1.0;
    double window_radius = 0.0;
    double min_center_distance = 0.0;
    std::size_t centers = 0;
    std::size_t touching_pairs = 0;  // pairs at distance 2 within 1e-9
    double measured_density = 0.0;
    bool pass = false;
};

inline constexpr double kDistanceTolerance = 1e-9;

/// Enumerates every centre within the window and checks all close pairs.
PackingCheck verify_packing(const PeriodicPacking& p, double window_radius);

double unit_ball_volume(int dim);

double density_string_3d(double d);
double density_planar_strings(double d);
/// The same expression on the closed interval [sqrt(3), 2], i.e. its continuous extension.
double density_planar_strings_closure(double d);
double density_ball_4d();

LatticeBasis lattice_theorem_2_1(double d);
/// Same lattice generated by a tetrahedron with five edges 2 and one edge 2d.
LatticeBasis lattice_theorem_2_1_tetrahedral(double d);
/// Layers of the tetrahedral face lattice stacked alternately in the two admissible ways.
PeriodicPacking alternating_layer_packing(double d);

struct PlanarConstruction
{
    double d = 0.0;
    std::array<double, 2> A0{}, A1{}, B0{}, C1{};
    PeriodicPacking packing;
};

PlanarConstruction planar_construction(double d);

LatticeBasis lattice_4d_square_layers();
LatticeBasis lattice_4d_tri_layers();

struct ConjectureConstruction
{
    double d = 0.0;
    double delta = 0.0;
    LatticeBasis basis;
    double density = 0.0;
    // 2 (cos delta - sin delta)^2 + d^2; equals 4 because the apex touches the base vertices.
    double touching_identity = 0.0;
    std::string label = "CONJECTURE";
};

ConjectureConstruction conjecture_2_10_construction(double d);

nlohmann::json to_json(const PackingCheck& c);
nlohmann::json to_json(const LatticeBasis& b);

}  // namespace delpack
