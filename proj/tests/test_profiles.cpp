#include "doctest.h"

#include "delpack/generators.hpp"
#include "delpack/geom.hpp"
#include "delpack/profiles.hpp"

#include <cmath>

using namespace delpack;

namespace {

// Least axis separation x such that every ball of one translate is at distance >= 2
// from every ball of the other, found by bisection over explicit ball pairs.
// `lattice` lists axial ball positions of a translate around the origin.
double separation_by_bisection(const std::vector<AxialOffset>& lattice, AxialOffset offset)
{
    auto feasible = [&](double x) {
        for (const auto& a : lattice)
            for (const auto& b : lattice) {
                const double dx = b[0] + offset[0] - a[0];
                const double dy = b[1] + offset[1] - a[1];
                if (x * x + dx * dx + dy * dy < 4.0)
                    return false;
            }
        return true;
    };
    double lo = 0.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<AxialOffset> string_balls(double d)
{
    std::vector<AxialOffset> v;
    for (int k = -6; k <= 6; ++k)
        v.push_back({2 * d * k, 0.0});
    return v;
}

std::vector<AxialOffset> layer_balls(AxialOffset b1, AxialOffset b2)
{
    std::vector<AxialOffset> v;
    for (int j = -4; j <= 4; ++j)
        for (int i = -4; i <= 4; ++i)
            v.push_back({i * b1[0] + j * b2[0], i * b1[1] + j * b2[1]});
    return v;
}

}  // namespace

TEST_SUITE("profiles")
{
    TEST_CASE("touching function at reference offsets")
    {
        CHECK(g_value(StringProfile::string1d(1.0), {0, 0}) == doctest::Approx(1.0));
        CHECK(g_value(StringProfile::string1d(1.3), {0, 0}) == doctest::Approx(1.0));
        CHECK(g_value(StringProfile::string1d(std::sqrt(2.0)), {std::sqrt(2.0), 0}) ==
              doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(g_value(StringProfile::square_layer(), {1, 1}) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
        CHECK_THROWS_AS(g_value(StringProfile::string1d(2.5), {2.5, 0}), CoveringViolated);
    }

    TEST_CASE("closed form agrees with ball-pair bisection")
    {
        Rng rng(17);
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const double d = rng.uniform(1.0, std::sqrt(2.0));
            const double t = rng.uniform(-3, 3);
            const auto p = StringProfile::string1d(d);
            worst = std::max(worst, std::abs(2 * g_value(p, {t, 0}) - separation_by_bisection(string_balls(d), {t, 0})));
        }
        const auto sq = layer_balls({2, 0}, {0, 2});
        const auto tri = layer_balls({2, 0}, {1, std::sqrt(3.0)});
        for (int i = 0; i < 100; ++i) {
            const AxialOffset o{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            worst = std::max(worst, std::abs(2 * g_value(StringProfile::square_layer(), o) - separation_by_bisection(sq, o)));
            worst = std::max(worst, std::abs(2 * g_value(StringProfile::tri_layer(), o) - separation_by_bisection(tri, o)));
        }
        CHECK(worst < 1e-9);
    }

    TEST_CASE("g is even and periodic")
    {
        Rng rng(3);
        const auto p = StringProfile::string1d(1.2);
        const auto q = StringProfile::tri_layer();
        for (int i = 0; i < 100; ++i) {
            const double t = rng.uniform(-4, 4);
            CHECK(g_value(p, {t, 0}) == doctest::Approx(g_value(p, {-t, 0})).epsilon(1e-13));
            CHECK(g_value(p, {t, 0}) == doctest::Approx(g_value(p, {t + 2.4, 0})).epsilon(1e-12));
            const AxialOffset o{rng.uniform(-4, 4), rng.uniform(-4, 4)};
            CHECK(g_value(q, o) == doctest::Approx(g_value(q, {-o[0], -o[1]})).epsilon(1e-12));
            CHECK(g_value(q, o) == doctest::Approx(g_value(q, {o[0] + 1, o[1] + std::sqrt(3.0)})).epsilon(1e-12));
        }
    }

    TEST_CASE("extremes of the touching function")
    {
        auto e = m_M_of(StringProfile::string1d(1.0));
        CHECK(e.m == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
        CHECK(e.M == 1.0);
        e = m_M_of(StringProfile::string1d(std::sqrt(2.0)));
        CHECK(e.m == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
        e = m_M_of(StringProfile::tri_layer());
        CHECK(e.m == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
        e = m_M_of(StringProfile::square_layer());
        CHECK(e.m == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
        CHECK_THROWS_AS(m_M_of(StringProfile::string1d(1.5)), HypothesisViolated);
        CHECK_THROWS_AS(m_M_of(StringProfile::string1d(2.5)), CoveringViolated);
        CHECK_THROWS_AS(StringProfile::string1d(0.9), ProfileError);
    }

    TEST_CASE("least touching triangle of ball strings")
    {
        auto v = v0_of(StringProfile::string1d(1.0));
        CHECK(v.converged);
        CHECK(v.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
        CHECK(v.lower <= v.upper);
        CHECK(v.upper - v.lower < 1e-9);
        v = v0_of(StringProfile::string1d(std::sqrt(2.0)));
        CHECK(v.value == doctest::Approx(1.0).epsilon(1e-10));
    }

    TEST_CASE("grid oracle for the least touching triangle")
    {
        // Independent dense grid over the offset torus with the distance formula written out.
        for (double d : {1.0, 1.17, 1.33}) {
            const int n = 1200;
            double best = 1e300;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double t1 = 2 * d * i / n, t2 = 2 * d * j / n;
                    auto side = [&](double t) {
                        const double r = std::abs(t - 2 * d * std::round(t / (2 * d)));
                        return std::sqrt(4 - r * r);
                    };
                    const double a = side(t1), b = side(t2), c = side(t1 + t2);
                    const double s = 0.5 * (a + b + c);
                    best = std::min(best, std::sqrt(s * (s - a) * (s - b) * (s - c)));
                }
            const auto v = v0_of(StringProfile::string1d(d));
            CHECK(v.lower <= best + 1e-12);
            CHECK(v.value <= best + 1e-9);
            CHECK(v.value == doctest::Approx(best).epsilon(1e-6));
        }
    }

    TEST_CASE("least touching triangle sweep against sqrt(3 - d^2)")
    {
        double worst = 0;
        for (int k = 0; k < 50; ++k) {
            const double d = 1.0 + (std::sqrt(2.0) - 1.0) * k / 49.0;
            const auto v = v0_of(StringProfile::string1d(d));
            worst = std::max(worst, std::abs(v.value - std::sqrt(3 - d * d)));
            const double smax = std::max({v.sides[0], v.sides[1], v.sides[2]});
            const double smin = std::min({v.sides[0], v.sides[1], v.sides[2]});
            CHECK(smax / smin <= std::sqrt(2.0) + 1e-12);
            const auto tm = triangle_metrics({0, 0}, {v.sides[2], 0},
                                             {(v.sides[2] * v.sides[2] + v.sides[1] * v.sides[1] - v.sides[0] * v.sides[0]) /
                                                  (2 * v.sides[2]),
                                              2 * v.value / v.sides[2]});
            CHECK(tm.shape != ShapeClass::Obtuse);
        }
        CHECK(worst < 1e-6);
    }

    TEST_CASE("layer profiles")
    {
        V0Options opt;
        opt.tolerance = 1e-6;
        const auto v = v0_of(StringProfile::tri_layer(), opt);
        CHECK(v.lower <= v.upper);
        const double smax = std::max({v.sides[0], v.sides[1], v.sides[2]});
        const double smin = std::min({v.sides[0], v.sides[1], v.sides[2]});
        CHECK(smax / smin <= std::sqrt(2.0) + 1e-9);
        CHECK(v.value >= area_from_sides(2 * std::sqrt(2.0 / 3.0), 2 * std::sqrt(2.0 / 3.0), 2 * std::sqrt(2.0 / 3.0)) - 1e-9);
    }

    TEST_CASE("density bound")
    {
        const auto p = StringProfile::string1d(std::sqrt(2.0));
        CHECK(fill_density(p) == doctest::Approx((4 * M_PI / 3) / (2 * std::sqrt(2.0) * M_PI)));
        CHECK(density_lower_bound(p) == doctest::Approx(M_PI * fill_density(p) / 2).epsilon(1e-9));
        CHECK(std::isfinite(density_lower_bound(p)));
        const double exact = M_PI / std::sqrt(18.0);
        CHECK(density_lower_bound(StringProfile::string1d(1.0)) <= exact + 1e-9);
        CHECK(fill_density(StringProfile::square_layer()) == doctest::Approx(M_PI / 8));
        CHECK(fill_density(StringProfile::tri_layer()) == doctest::Approx(M_PI / (4 * std::sqrt(3.0))));
    }

    TEST_CASE("custom concave profile")
    {
        // f(z) = sqrt(1 - z^2 / 2) on [-1, 1): concave, values in [1/sqrt(2), 1].
        const int n = 200;
        std::vector<double> f;
        for (int i = 0; i < n; ++i) {
            const double z = -1.0 + 2.0 * i / n;
            f.push_back(std::sqrt(1 - z * z / 2));
        }
        const auto p = StringProfile::custom(1.0, f);
        CHECK(g_value(p, {0, 0}) == doctest::Approx(1.0));
        // Brute-force: maximize the sum of the two radii over a fine axial grid.
        for (double t : {0.3, 0.7, 1.0, 1.6}) {
            double best = 0;
            for (int i = 0; i < 20000; ++i) {
                const double z = -1.0 + 2.0 * i / 20000;
                auto F = [&](double x) {
                    double u = (x + 1.0) / 2.0;
                    u -= std::floor(u);
                    const double pos = u * n;
                    const int k = static_cast<int>(pos) % n;
                    const double fr = pos - std::floor(pos);
                    return (1 - fr) * f[k] + fr * f[(k + 1) % n];
                };
                best = std::max(best, F(z) + F(z - t));
            }
            CHECK(2 * g_value(p, {t, 0}) == doctest::Approx(best).epsilon(1e-6));
        }
        const auto e = m_M_of(p);
        CHECK(e.m >= 1 / std::sqrt(2.0) - 1e-9);
        CHECK(e.M == doctest::Approx(1.0));
        V0Options opt;
        opt.grid = 64;
        opt.tolerance = 1e-6;
        const auto v = v0_of(p, opt);
        CHECK(v.lower <= v.upper + 1e-12);
        CHECK(fill_density(p) < 1.0);

        CHECK_THROWS_AS(StringProfile::custom(1.0, {1.0, 0.5, 1.0}), HypothesisViolated);
        CHECK_THROWS_AS(StringProfile::custom(1.0, {0.8, 1.0, 0.75, 1.0}), HypothesisViolated);
    }

    TEST_CASE("profile JSON round trip")
    {
        const auto p = profile_from_json(nlohmann::json::parse(R"({"kind":"string1d","d":1.25})"));
        CHECK(p.kind == StringProfile::Kind::String1D);
        CHECK(p.d == 1.25);
        const auto q = profile_from_json(to_json(p));
        CHECK(q.d == 1.25);
        CHECK(profile_from_json(nlohmann::json::parse(R"({"kind":"tri_layer"})")).axis_dim() == 2);
        CHECK_THROWS(profile_from_json(nlohmann::json::parse(R"({"kind":"blob"})")));
    }
}
