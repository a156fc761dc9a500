#include "delpack/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace delpack {

namespace {

class TorusGrid
{
public:
    TorusGrid(double px, double py, double cell)
        : px_(px), py_(py), nx_(std::max(1, static_cast<int>(px / cell))),
          ny_(std::max(1, static_cast<int>(py / cell))), cells_(static_cast<std::size_t>(nx_) * ny_)
    {
    }

    bool clear(Point2 p, double min_dist, const std::vector<Point2>& pts) const
    {
        const int cx = cell_x(p.x), cy = cell_y(p.y);
        const int reach_x = std::min(nx_ / 2, static_cast<int>(std::ceil(min_dist / (px_ / nx_))));
        const int reach_y = std::min(ny_ / 2, static_cast<int>(std::ceil(min_dist / (py_ / ny_))));
        for (int dy = -reach_y; dy <= reach_y; ++dy)
            for (int dx = -reach_x; dx <= reach_x; ++dx) {
                const int gx = ((cx + dx) % nx_ + nx_) % nx_;
                const int gy = ((cy + dy) % ny_ + ny_) % ny_;
                for (int idx : cells_[static_cast<std::size_t>(gy) * nx_ + gx])
                    if (torus_dist(p, pts[idx]) < min_dist)
                        return false;
            }
        return true;
    }

    void add(Point2 p, int idx) { cells_[static_cast<std::size_t>(cell_y(p.y)) * nx_ + cell_x(p.x)].push_back(idx); }

    double torus_dist(Point2 a, Point2 b) const
    {
        double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
        dx = std::min(dx, px_ - dx);
        dy = std::min(dy, py_ - dy);
        return std::hypot(dx, dy);
    }

private:
    int cell_x(double x) const { return std::min(nx_ - 1, static_cast<int>(x / px_ * nx_)); }
    int cell_y(double y) const { return std::min(ny_ - 1, static_cast<int>(y / py_ * ny_)); }

    double px_, py_;
    int nx_, ny_;
    std::vector<std::vector<int>> cells_;
};

}  // namespace

LatticeKind parse_lattice_kind(const std::string& name)
{
    if (name == "square")
        return LatticeKind::Square;
    if (name == "triangular" || name == "triangle" || name == "hex")
        return LatticeKind::Triangular;
    if (name == "rectangular" || name == "rect")
        return LatticeKind::Rectangular;
    throw std::invalid_argument("unknown lattice kind: " + name);
}

PointSet lattice_points(const LatticeParams& p)
{
    if (p.cells_x < 1 || p.cells_y < 1 || !(p.side > 0))
        throw std::invalid_argument("lattice needs positive side and cell counts");
    PointSet out;
    Rng rng(p.seed);
    double dy = p.side, px = p.cells_x * p.side, py = 0.0;
    int rows = p.cells_y;
    switch (p.kind) {
    case LatticeKind::Square:
        out.description = "square lattice";
        break;
    case LatticeKind::Rectangular:
        dy = p.side * p.aspect;
        out.description = "rectangular lattice";
        break;
    case LatticeKind::Triangular:
        dy = p.side * std::sqrt(3.0) / 2.0;
        rows = p.cells_y + (p.cells_y % 2);
        out.description = "triangular lattice";
        break;
    }
    py = rows * dy;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < p.cells_x; ++i) {
            double x = i * p.side;
            if (p.kind == LatticeKind::Triangular && j % 2 == 1)
                x += 0.5 * p.side;
            Point2 q{x, j * dy};
            if (p.jitter > 0) {
                q.x += rng.uniform(-p.jitter, p.jitter);
                q.y += rng.uniform(-p.jitter, p.jitter);
            }
            out.points.push_back(wrap_torus(q, px, py));
        }
    out.domain = Domain::torus(px, py);
    return out;
}

PointSet poisson_disk(const PoissonParams& p)
{
    if (!(p.r > 0) || p.saturation < 2 * p.r)
        throw std::invalid_argument("saturation radius must be at least 2r");
    const double min_dist = 2.0 * p.r;
    PointSet out;
    out.domain = Domain::torus(p.period_x, p.period_y);
    out.description = "saturated Poisson-disk set";
    Rng rng(p.seed);
    TorusGrid grid(p.period_x, p.period_y, min_dist);
    auto& pts = out.points;

    // Sparse random start, so that saturation decides the local structure.
    const double area = p.period_x * p.period_y;
    const int darts = static_cast<int>(area / (M_PI * p.saturation * p.saturation));
    for (int k = 0; k < 4 * darts; ++k) {
        const Point2 q{rng.uniform(0, p.period_x), rng.uniform(0, p.period_y)};
        if (grid.clear(q, std::max(min_dist, p.saturation), pts)) {
            grid.add(q, static_cast<int>(pts.size()));
            pts.push_back(q);
        }
    }
    if (pts.size() < 3)
        throw std::invalid_argument("torus too small for the requested spacing");

    for (int round = 0; round < 1000; ++round) {
        const DeloneTriangulation t = build_delone(pts, out.domain);
        std::vector<std::pair<double, Point2>> holes;
        for (const MeshTriangle& tri : t.triangles)
            if (tri.metrics.circumradius > p.saturation)
                holes.emplace_back(-tri.metrics.circumradius,
                                   wrap_torus(tri.metrics.circumcenter, p.period_x, p.period_y));
        if (holes.empty())
            return out;
        std::sort(holes.begin(), holes.end(), [](const auto& a, const auto& b) {
            return a.first < b.first || (a.first == b.first && lex_less(a.second, b.second));
        });
        for (auto& h : holes) {
            // Nudge the new point randomly inside the hole so the result is not too regular.
            const double slack = -h.first - p.saturation;
            Point2 q = h.second;
            if (slack > 0) {
                const double ang = rng.uniform(0, 2 * M_PI);
                const double rad = slack * std::sqrt(rng.uniform());
                q = wrap_torus({q.x + rad * std::cos(ang), q.y + rad * std::sin(ang)}, p.period_x, p.period_y);
            }
            if (grid.clear(q, min_dist, pts)) {
                grid.add(q, static_cast<int>(pts.size()));
                pts.push_back(q);
            }
        }
    }
    throw std::runtime_error("Poisson-disk saturation did not converge");
}

}  // namespace delpack

namespace delpack {

namespace {

double torus_ratio(const PointSet& ps)
{
    const DeloneTriangulation t = build_delone(ps.points, ps.domain);
    double r = 0.5 * min_pair_distance(t), R = 0;
    for (const MeshTriangle& tri : t.triangles)
        R = std::max(R, tri.metrics.circumradius);
    return R / r;
}

}  // namespace

PointSet random_rr_system(std::uint64_t seed, int index, const EnsembleParams& p)
{
    Rng rng(seed ^ (0x5bd1e995ULL * static_cast<std::uint64_t>(index + 1)));
    const double limit = 2.0 * std::sqrt(2.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double target = rng.uniform(p.min_points, p.max_points);
        PointSet ps;
        if (index % 4 == 3) {
            PoissonParams pp;
            pp.saturation = rng.uniform(2.0, limit);
            // Saturated sets hold roughly one point per 2.4 * saturation^2 of area.
            const double side = std::sqrt(target * 2.4 * pp.saturation * pp.saturation / 4.0);
            pp.period_x = side * rng.uniform(0.8, 1.25);
            pp.period_y = target * 2.4 * pp.saturation * pp.saturation / 4.0 / pp.period_x;
            pp.seed = rng.next();
            ps = poisson_disk(pp);
            ps.description += " (saturation " + std::to_string(pp.saturation) + ")";
        } else {
            LatticeParams lp;
            lp.kind = static_cast<LatticeKind>(index % 4);
            lp.side = 2.0;
            lp.aspect = rng.uniform(1.0, 2.4);
            const int side_cells = std::max(5, static_cast<int>(std::sqrt(target)));
            lp.cells_x = std::max(5, static_cast<int>(side_cells * rng.uniform(0.8, 1.25)));
            lp.cells_y = std::max(5, static_cast<int>(target / lp.cells_x));
            lp.jitter = rng.uniform(0.0, 0.45);
            lp.seed = rng.next();
            ps = lattice_points(lp);
            ps.description += " (jitter " + std::to_string(lp.jitter) + ")";
        }
        if (static_cast<int>(ps.points.size()) < p.min_points || static_cast<int>(ps.points.size()) > p.max_points)
            continue;
        if (torus_ratio(ps) <= limit)
            return ps;
    }
    throw std::runtime_error("could not draw an (r,R)-system with ratio <= 2*sqrt(2)");
}

}  // namespace delpack
