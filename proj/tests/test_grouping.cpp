#include "doctest.h"

#include "delpack/generators.hpp"
#include "delpack/grouping.hpp"

#include <cmath>
#include <set>

using namespace delpack;

namespace {

double torus_dist(Point2 a, Point2 b, double px, double py)
{
    double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    dx = std::min(dx, px - dx);
    dy = std::min(dy, py - dy);
    return std::hypot(dx, dy);
}

// Largest empty circle over all point triples of a periodic set, by exhaustion.
double brute_covering_radius(const std::vector<Point2>& pts, double px, double py)
{
    std::vector<Point2> lifted;
    for (int oy = -1; oy <= 1; ++oy)
        for (int ox = -1; ox <= 1; ++ox)
            for (const Point2& p : pts)
                lifted.push_back({p.x + ox * px, p.y + oy * py});
    const int n = static_cast<int>(pts.size());
    double best = 0;
    for (int i = 0; i < n; ++i)
        for (std::size_t j = 0; j < lifted.size(); ++j)
            for (std::size_t k = j + 1; k < lifted.size(); ++k) {
                const Point2 a = pts[i], b = lifted[j], c = lifted[k];
                if (b == a || c == a)
                    continue;
                const double d = 2 * cross(b - a, c - a);
                if (std::abs(d) < 1e-12)
                    continue;
                const Point2 ab = b - a, ac = c - a;
                const Point2 o{a.x + (ac.y * dot(ab, ab) - ab.y * dot(ac, ac)) / d,
                               a.y + (ab.x * dot(ac, ac) - ac.x * dot(ab, ab)) / d};
                const double rad = dist(o, a);
                if (rad > 0.45 * std::min(px, py) || rad <= best)
                    continue;
                bool empty = true;
                for (const Point2& q : lifted)
                    if (dist(o, q) < rad * (1 - 1e-12)) {
                        empty = false;
                        break;
                    }
                if (empty)
                    best = rad;
            }
    return best;
}

std::vector<PointSet> ensemble(int count, std::uint64_t seed)
{
    std::vector<PointSet> out;
    EnsembleParams ep;
    ep.max_points = 500;
    for (int i = 0; i < count; ++i)
        out.push_back(random_rr_system(seed, i, ep));
    return out;
}

// A fan of slightly obtuse triangles around the origin whose longest sides grow
// outwards, padded with greedily placed points at distance >= 2 kept outside the
// fan's circumdisks.
std::vector<Point2> spiral_fan(double half_width)
{
    std::vector<Point2> pts{{0, 0}, {2, 0}};
    const double turn = 93.0 * M_PI / 180.0;
    for (int k = 0; k < 5; ++k) {
        const Point2 pk = pts.back();
        const Point2 back = (-1.0 / norm(pk)) * pk;
        const Point2 dir{std::cos(turn) * back.x + std::sin(turn) * back.y,
                         -std::sin(turn) * back.x + std::cos(turn) * back.y};
        pts.push_back(pk + 2.0 * dir);
    }
    std::vector<std::pair<Point2, double>> discs;
    for (int k = 1; k + 1 < static_cast<int>(pts.size()) - 1; ++k) {
        const auto m = triangle_metrics(pts[0], pts[k], pts[k + 1]);
        discs.emplace_back(m.circumcenter, m.circumradius);
    }
    Rng rng(3);
    for (int i = 0; i < 200000; ++i) {
        const Point2 q{rng.uniform(-half_width, half_width), rng.uniform(-half_width, half_width)};
        bool ok = true;
        for (const auto& [o, rad] : discs)
            ok = ok && dist(q, o) >= rad + 0.05;
        for (std::size_t j = 0; j < pts.size() && ok; ++j)
            ok = dist(q, pts[j]) >= 2.0;
        if (ok)
            pts.push_back(q);
    }
    return pts;
}

}  // namespace

TEST_SUITE("grouping")
{
    TEST_CASE("square lattice: right triangles only, mean equals 2r^2")
    {
        LatticeParams lp;
        const PointSet ps = lattice_points(lp);
        const auto t = build_delone(ps.points, ps.domain);
        const RRRadii rr = rr_radii(t);
        CHECK(rr.r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rr.R == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(rr.ratio() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        const auto g = build_obtuse_digraph(t);
        for (int x : g.target)
            CHECK(x == -1);
        const auto f = form_groups(g, t);
        for (const auto& c : f.classes)
            CHECK(c.kind == GroupCase::NonObtuseSingle);
        const auto cert = average_area_certificate(t);
        CHECK(cert.pass);
        CHECK(std::abs(cert.mean_area - 2.0) < 1e-9);
        CHECK(std::abs(cert.bound - 2.0) < 1e-9);
        CHECK(cert.v0 == doctest::Approx(2.0));
    }

    TEST_CASE("triangular lattice: mean equals V0")
    {
        LatticeParams lp;
        lp.kind = LatticeKind::Triangular;
        const PointSet ps = lattice_points(lp);
        const auto t = build_delone(ps.points, ps.domain);
        const RRRadii rr = rr_radii(t);
        CHECK(rr.r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rr.R == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-12));
        const auto cert = average_area_certificate(t);
        CHECK(cert.pass);
        CHECK(std::abs(cert.mean_area - std::sqrt(3.0)) < 1e-9);
        CHECK(std::abs(cert.v0 - std::sqrt(3.0)) < 1e-9);
        CHECK(std::abs(cert.bound - std::sqrt(3.0)) < 1e-9);
    }

    TEST_CASE("lattice of a fixed acute triangle: every triangle congruent, mean equals V0")
    {
        // Lattice spanned by (2, 0) and (0.7, 2.1): the triangle (0,0),(2,0),(0.7,2.1) is acute.
        const Point2 u{2, 0}, v{0.7, 2.1};
        const double area_t = 0.5 * cross(u, v);
        std::vector<Point2> lattice;
        // (20, 0) = 10u and (0, 42) = 20v - 7u are lattice vectors, so the rectangle is a period.
        for (int j = 0; j < 20; ++j)
            for (int i = 0; i < 10; ++i)
                lattice.push_back(wrap_torus(i * u + j * v, 20.0, 42.0));
        const auto t = build_delone(lattice, Domain::torus(20.0, 42.0));
        CHECK(validate_delone(t).ok());
        for (const auto& tri : t.triangles)
            CHECK(tri.metrics.area == doctest::Approx(area_t).epsilon(1e-12));
        const auto cert = average_area_certificate(t);
        CHECK(cert.pass);
        CHECK(std::abs(cert.mean_area - area_t) < 1e-9);
        CHECK(std::abs(cert.v0 - area_t) < 1e-9);
    }

    TEST_CASE("one obtuse triangle over an acute neighbour gives one edge")
    {
        const std::vector<Point2> pts{{0, 0}, {4, 0}, {2, 0.8}, {2, -5.5}};
        const auto t = build_delone(pts, Domain::window({-10, -20, 14, 10}));
        REQUIRE(t.triangles.size() == 2);
        const auto g = build_obtuse_digraph(t, true);
        int edges = 0;
        for (std::size_t i = 0; i < t.triangles.size(); ++i)
            if (g.target[i] >= 0) {
                ++edges;
                CHECK(t.triangles[i].metrics.obtuse());
                CHECK(!t.triangles[g.target[i]].metrics.obtuse());
            }
        CHECK(edges == 1);
        const auto f = form_groups_unchecked(g, t);
        REQUIRE(f.classes.size() == 1);
        CHECK(f.classes[0].kind == GroupCase::NonObtuseHub);
        CHECK(f.classes[0].members.size() == 2);
    }

    TEST_CASE("r and R agree with exhaustive search on jittered lattices")
    {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            LatticeParams lp;
            lp.kind = static_cast<LatticeKind>(seed % 3);
            lp.cells_x = 6;
            lp.cells_y = 6;
            lp.jitter = 0.3;
            lp.seed = seed;
            const PointSet ps = lattice_points(lp);
            const auto t = build_delone(ps.points, ps.domain);
            double dmin = 1e300;
            for (std::size_t i = 0; i < ps.points.size(); ++i)
                for (std::size_t j = i + 1; j < ps.points.size(); ++j)
                    dmin = std::min(dmin, torus_dist(ps.points[i], ps.points[j], ps.domain.period_x,
                                                     ps.domain.period_y));
            const RRRadii rr = rr_radii(t);
            CHECK(rr.r == doctest::Approx(dmin / 2).epsilon(1e-12));
            CHECK(rr.R == doctest::Approx(brute_covering_radius(ps.points, ps.domain.period_x,
                                                                ps.domain.period_y)).epsilon(1e-9));
        }
    }

    TEST_CASE("ratio above 2 sqrt 2 is rejected unless allowed")
    {
        Rng rng(5);
        std::vector<Point2> pts;
        for (int i = 0; i < 80; ++i)
            pts.push_back({rng.uniform(0, 20), rng.uniform(0, 20)});
        const auto t = build_delone(pts, Domain::torus(20, 20));
        CHECK_THROWS_AS(build_obtuse_digraph(t), RatioExceeded);
        CHECK_THROWS_AS(average_area_certificate(t), RatioExceeded);
        const auto cert = average_area_certificate(t, true);
        CHECK(!cert.pass);
    }

    TEST_CASE("random (r,R)-systems satisfy every structural and area invariant")
    {
        std::array<int, 5> seen{};
        int max_path = 0;
        for (const PointSet& ps : ensemble(100, 4242)) {
            const auto t = build_delone(ps.points, ps.domain);
            const auto g = build_obtuse_digraph(t);
            CHECK(g.radii.ratio() <= 2 * std::sqrt(2.0) + 1e-12);
            CHECK(digraph_violations(g, t).empty());
            CHECK(g.longest_path <= kMaxPathEdges);
            CHECK(g.largest_component <= kMaxComponentSize);
            max_path = std::max(max_path, g.longest_path);

            // Partition and structure of classes.
            const auto f = form_groups(g, t);
            std::vector<int> hits(t.triangles.size(), 0);
            for (const auto& c : f.classes) {
                for (int x : c.members)
                    ++hits[x];
                for (std::size_t k = 1; k < c.members.size(); ++k) {
                    const int leaf = c.members[k];
                    CHECK(t.triangles[leaf].metrics.obtuse());
                    CHECK(g.sources[leaf].empty());
                    CHECK(g.target[leaf] == c.hub);
                }
                ++seen[static_cast<int>(c.kind)];
            }
            for (int h : hits)
                CHECK(h == 1);

            // Between two triangles at most one directed edge.
            std::set<std::pair<int, int>> pairs;
            for (std::size_t i = 0; i < g.target.size(); ++i)
                if (g.target[i] >= 0)
                    CHECK(pairs.insert({std::min<int>(i, g.target[i]), std::max<int>(i, g.target[i])}).second);

            const auto cert = average_area_certificate(t);
            CHECK(cert.pass);
            CHECK(cert.mean_area >= cert.bound - 1e-9 * 4 * g.radii.r * g.radii.r);
        }
        // Chains long enough for obtuse singletons are rare in random sets; see the spiral fan case.
        CHECK(seen[1] > 0);
        CHECK(seen[3] > 0);
        CHECK(seen[4] > 0);
        MESSAGE("longest obtuse chain in ensemble: " << max_path << ", class counts " << seen[1] << " " << seen[2] << " " << seen[3] << " " << seen[4]);
    }

    TEST_CASE("spiral fan produces long chains and obtuse singletons")
    {
        const auto pts = spiral_fan(14.0);
        const auto t = build_delone(pts, Domain::window({-14, -14, 14, 14}));
        CHECK(validate_delone(t).ok());
        const auto g = build_obtuse_digraph(t);
        CHECK(g.longest_path >= 3);
        CHECK(digraph_violations(g, t).empty());
        const auto f = form_groups(g, t);
        int singles = 0, obtuse_hubs = 0;
        for (const auto& c : f.classes) {
            singles += c.kind == GroupCase::ObtuseSingle;
            obtuse_hubs += c.kind == GroupCase::ObtuseHub;
        }
        CHECK(singles > 0);
        CHECK(obtuse_hubs > 0);
        CHECK(average_area_certificate(t).pass);
    }

    TEST_CASE("certificate JSON fields")
    {
        LatticeParams lp;
        lp.jitter = 0.1;
        lp.seed = 7;
        const PointSet ps = lattice_points(lp);
        const auto j = to_json(average_area_certificate(build_delone(ps.points, ps.domain)));
        for (const char* key : {"r", "R", "ratio", "v0", "mean_area", "bound", "classes", "pass"})
            CHECK(j.contains(key));
        CHECK(j["pass"].get<bool>());
    }
}
