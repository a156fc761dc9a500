#include "doctest.h"

#include "delpack/generators.hpp"
#include "delpack/geom.hpp"

#include <cmath>

using namespace delpack;

namespace {

// Law-of-cosines reference computed in extended precision.
struct Reference
{
    long double sides[3];
    long double angles[3];
    long double area;
};

Reference reference(Point2 a, Point2 b, Point2 c)
{
    const Point2 v[3] = {a, b, c};
    Reference r{};
    for (int i = 0; i < 3; ++i) {
        const Point2 p = v[(i + 1) % 3], q = v[(i + 2) % 3];
        r.sides[i] = std::hypot(static_cast<long double>(p.x) - q.x, static_cast<long double>(p.y) - q.y);
    }
    for (int i = 0; i < 3; ++i) {
        const long double x = r.sides[i], y = r.sides[(i + 1) % 3], z = r.sides[(i + 2) % 3];
        r.angles[i] = std::acos((y * y + z * z - x * x) / (2 * y * z));
    }
    r.area = std::abs((static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
                      (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x)) / 2;
    return r;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

}  // namespace

TEST_SUITE("geom")
{
    TEST_CASE("right isosceles triangle")
    {
        const auto m = triangle_metrics({0, 0}, {2, 0}, {0, 2});
        CHECK(m.circumradius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(m.area == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(m.shape == ShapeClass::Right);
        CHECK(m.longest_side == 0);
        CHECK(m.sides[0] == doctest::Approx(2 * std::sqrt(2.0)));
        CHECK(m.circumcenter.x == doctest::Approx(1.0));
        CHECK(m.circumcenter.y == doctest::Approx(1.0));
    }

    TEST_CASE("equilateral triangle of side 2")
    {
        const auto m = triangle_metrics({0, 0}, {2, 0}, {1, std::sqrt(3.0)});
        CHECK(m.circumradius == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-14));
        CHECK(m.area == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
        CHECK(m.shape == ShapeClass::Acute);
        for (double a : m.angles)
            CHECK(a == doctest::Approx(M_PI / 3));
    }

    TEST_CASE("classification follows the directly computed largest angle")
    {
        // The triple below has largest angle about 87.8 degrees when computed
        // from coordinates, so it is acute.
        const Point2 a{0, 0}, b{2 * std::sqrt(2.0), 0}, c{0.2, 0.9};
        const Reference ref = reference(a, b, c);
        const long double top = std::max({ref.angles[0], ref.angles[1], ref.angles[2]});
        const auto m = triangle_metrics(a, b, c);
        CHECK(top < M_PI / 2);
        CHECK(m.shape == ShapeClass::Acute);

        const Point2 d{std::sqrt(2.0), 0.5};
        const auto o = triangle_metrics(a, b, d);
        CHECK(o.shape == ShapeClass::Obtuse);
        CHECK(o.longest_side == 2);
        CHECK(o.sides[2] == doctest::Approx(2 * std::sqrt(2.0)));
        CHECK(o.angles[2] > M_PI / 2);
    }

    TEST_CASE("degenerate triangles are rejected")
    {
        CHECK_THROWS_AS(triangle_metrics({0, 0}, {1, 1}, {2, 2}), DegenerateTriangle);
        CHECK_THROWS_AS(triangle_metrics({0, 0}, {0, 0}, {1, 0}), DegenerateTriangle);
        CHECK_THROWS_AS(triangle_metrics({0, 0}, {1, 0}, {2, 1e-13}), DegenerateTriangle);
    }

    TEST_CASE("area from sides")
    {
        CHECK(area_from_sides(2, 2, 2) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
        CHECK(area_from_sides(std::sqrt(2.0), std::sqrt(2.0), 2) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(area_from_sides(2, 2, 2) < area_from_sides(2, 2, 2.2));
        CHECK(area_from_sides(1, 1, 2) == 0.0);
        CHECK_THROWS_AS(area_from_sides(1, 1, 3), TriangleInequalityViolated);
        CHECK_THROWS_AS(area_from_sides(-1, 1, 1), TriangleInequalityViolated);
    }

    TEST_CASE("in-circle predicate")
    {
        CHECK(incircle({0, 0}, {1, 0}, {1, 1}, {0.5, 0.5}) == CircleSide::Inside);
        CHECK(incircle({0, 0}, {1, 1}, {1, 0}, {0.5, 0.5}) == CircleSide::Inside);
        CHECK(incircle({2, 0}, {0, 2}, {-2, 0}, {0, -2}) == CircleSide::OnCircle);
        const double s = std::sqrt(2.0);
        CHECK(incircle({2, 0}, {s, s}, {-s, s}, {0, -2}) == CircleSide::OnCircle);
        CHECK(incircle({0, 0}, {1, 0}, {1, 1}, {10, 10}) == CircleSide::Outside);
        CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
        CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
        CHECK(orientation({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}) == 0);
        CHECK(incircle_exact_sign({0, 0}, {1, 0}, {1, 1}, {0, 1}) == 0);
    }

    TEST_CASE("law of sines and area agreement on random triangles")
    {
        Rng rng(20240611);
        int checked = 0;
        double worst_sines = 0, worst_area = 0, worst_ref = 0;
        while (checked < 100000) {
            const Point2 a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            const Point2 b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            const Point2 c{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            const double d2 = std::max({dist2(a, b), dist2(b, c), dist2(c, a)});
            if (std::abs(cross(b - a, c - a)) < 1e-3 * d2)
                continue;
            const auto m = triangle_metrics(a, b, c);
            for (int i = 0; i < 3; ++i)
                worst_sines = std::max(worst_sines, rel(m.sides[i] / std::sin(m.angles[i]), 2 * m.circumradius));
            worst_area = std::max(worst_area, rel(area_from_sides(m.sides[0], m.sides[1], m.sides[2]), m.area));
            const Reference ref = reference(a, b, c);
            for (int i = 0; i < 3; ++i)
                worst_ref = std::max(worst_ref, rel(m.angles[i], static_cast<double>(ref.angles[i])));
            worst_ref = std::max(worst_ref, rel(m.area, static_cast<double>(ref.area)));
            ++checked;
        }
        CHECK(worst_sines < 1e-10);
        CHECK(worst_area < 1e-10);
        CHECK(worst_ref < 1e-9);
    }

    TEST_CASE("area grows with the sides of non-obtuse triangles")
    {
        Rng rng(77);
        auto non_obtuse = [](double a, double b, double c) {
            const double x = std::max({a, b, c});
            return x * x <= a * a + b * b + c * c - x * x;
        };
        int checked = 0;
        while (checked < 20000) {
            const double a = rng.uniform(1, 3), b = rng.uniform(1, 3), c = rng.uniform(1, 3);
            const double a2 = a + rng.uniform(0, 0.3) * (rng.uniform() < 0.7);
            const double b2 = b + rng.uniform(0, 0.3) * (rng.uniform() < 0.7);
            double c2 = c + rng.uniform(0, 0.3) * (rng.uniform() < 0.7);
            if (a2 == a && b2 == b && c2 == c)
                c2 = c + 0.1;
            if (!non_obtuse(a, b, c) || !non_obtuse(a2, b2, c2))
                continue;
            CHECK(area_from_sides(a, b, c) < area_from_sides(a2, b2, c2));
            ++checked;
        }
    }
}
