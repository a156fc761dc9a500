#pragma once

#include "delpack/delone.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace delpack {

struct PointSet
{
    std::vector<Point2> points;
    Domain domain{};
    std::string description;
};

/// Deterministic 64-bit generator (splitmix64) so point sets are reproducible across platforms.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

enum class LatticeKind { Square, Triangular, Rectangular };

LatticeKind parse_lattice_kind(const std::string& name);

struct LatticeParams
{
    LatticeKind kind = LatticeKind::Square;
    double side = 2.0;
    double aspect = 1.5;  // rectangular only: height / width of a cell
    int cells_x = 10;
    int cells_y = 10;
    double jitter = 0.0;  // each coordinate moves uniformly in [-jitter, jitter]
    std::uint64_t seed = 1;
};

/// Lattice points on a torus made of whole lattice periods.
PointSet lattice_points(const LatticeParams& p);

struct PoissonParams
{
    double period_x = 40.0;
    double period_y = 40.0;
    double r = 1.0;           // half the minimal point distance
    double saturation = 2.0;  // empty circles are filled until their radius is at most this
    std::uint64_t seed = 1;
};

/// Random points at mutual distance >= 2r on a torus, filled until every empty
/// circle has radius <= saturation.
PointSet poisson_disk(const PoissonParams& p);

}  // namespace delpack

namespace delpack {

struct EnsembleParams
{
    int min_points = 100;
    int max_points = 2000;
};

/// Member `index` of a reproducible family of (r,R)-systems on tori with R/r <= 2*sqrt(2):
/// jittered square, triangular and rectangular lattices and saturated Poisson-disk sets.
PointSet random_rr_system(std::uint64_t seed, int index, const EnsembleParams& p = {});

}  // namespace delpack
