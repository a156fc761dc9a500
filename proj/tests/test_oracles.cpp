#include "doctest.h"

#include "delpack/minimize.hpp"
#include "delpack/oracles.hpp"

#include <cmath>
#include <set>

using namespace delpack;

namespace {

const ClaimResult& claim(const OracleReport& r, std::size_t i)
{
    REQUIRE(i < r.claims.size());
    return r.claims[i];
}

double info(const OracleReport& r, const std::string& label)
{
    for (const auto& i : r.informational)
        if (i.label == label)
            return i.value;
    FAIL("missing informational value " << label);
    return 0.0;
}

}  // namespace

TEST_SUITE("oracles")
{
    TEST_CASE("grid minimizer finds a smooth interior minimum")
    {
        const BoxObjective f = [](const std::vector<double>& x)
        { return (x[0] - 0.3) * (x[0] - 0.3) + 2 * (x[1] + 0.7) * (x[1] + 0.7) + 1.5; };
        const MinResult r = grid_minimize(f, {-1, -1}, {1, 1});
        REQUIRE(r.found());
        CHECK(std::abs(r.value - 1.5) < 1e-7);
        CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-4));
        CHECK(r.x[1] == doctest::Approx(-0.7).epsilon(1e-4));
        CHECK(r.previous >= r.value);
    }

    TEST_CASE("grid minimizer follows a minimum on a feasibility boundary")
    {
        // Feasible set is the half plane x + y >= 1; minimum at (0.5, 0.5).
        const BoxObjective f = [](const std::vector<double>& x)
        {
            if (x[0] + x[1] < 1.0)
                return std::numeric_limits<double>::infinity();
            return x[0] * x[0] + x[1] * x[1];
        };
        const MinResult r = grid_minimize(f, {0, 0}, {2, 2});
        REQUIRE(r.found());
        CHECK(r.value >= 0.5 - 1e-12);
        CHECK(r.value - 0.5 < 1e-4);
    }

    TEST_CASE("grid minimizer reports infeasible boxes and bad options")
    {
        const BoxObjective none = [](const std::vector<double>&) { return std::numeric_limits<double>::infinity(); };
        CHECK_FALSE(grid_minimize(none, {0}, {1}).found());
        const BoxObjective f = [](const std::vector<double>& x) { return x[0]; };
        GridOptions bad;
        bad.zoom = 9.0;
        CHECK_THROWS_AS(grid_minimize(f, {0}, {1}, bad), std::invalid_argument);
        bad.zoom = 1.0;
        CHECK_THROWS_AS(grid_minimize(f, {0}, {1}, bad), std::invalid_argument);
    }

    TEST_CASE("grid minimizer is deterministic")
    {
        const BoxObjective f = [](const std::vector<double>& x)
        { return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.1 * x[0]; };
        const MinResult a = grid_minimize(f, {-2, -2}, {2, 2});
        const MinResult b = grid_minimize(f, {-2, -2}, {2, 2});
        CHECK(a.value == b.value);
        CHECK(a.x == b.x);
        CHECK(a.evaluations == b.evaluations);
    }

    TEST_CASE("case registry")
    {
        const auto cases = list_cases();
        CHECK(cases.size() == 16);
        std::set<std::string> ids;
        for (const auto& c : cases) {
            ids.insert(c.id);
            CHECK_FALSE(c.params.empty());
            CHECK_FALSE(c.claims.empty());
            for (const auto& p : c.params)
                CHECK(p.lo < p.hi);
        }
        CHECK(ids.size() == 16);
        for (const char* id : {"3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9", "3.10", "4.1", "4.2",
                               "4.3", "4.4", "4.5", "4.6"})
            CHECK(ids.count(id) == 1);
        CHECK_THROWS_AS(run_case("9.9"), UnknownCase);
        CHECK_THROWS_AS(resolution_from_string("medium"), std::invalid_argument);
        CHECK(resolution_from_string("fine") == Resolution::Fine);
    }

    TEST_CASE("triangle claims")
    {
        const OracleReport r32 = run_case("3.2", Resolution::Coarse);
        CHECK(r32.pass);
        CHECK(claim(r32, 0).spec.value == doctest::Approx((std::sqrt(7.0) + std::sqrt(3.0)) / 8).epsilon(1e-12));
        CHECK(claim(r32, 1).witness_value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(claim(r32, 2).witness_value == doctest::Approx(std::sqrt(7.0) / 8).epsilon(1e-9));
        for (const auto& c : r32.claims) {
            CHECK(c.found_min >= c.witness_value - 1e-9);
            CHECK(c.claim_delta < kOracleTolerance);
        }
        for (const char* id : {"3.1", "3.3", "3.4", "3.5"}) {
            const OracleReport r = run_case(id, Resolution::Coarse);
            CHECK_MESSAGE(r.pass, id);
        }
    }

    TEST_CASE("pentagon and quadrangle claims")
    {
        const OracleReport r36 = run_case("3.6", Resolution::Coarse);
        CHECK(r36.pass);
        CHECK(claim(r36, 0).witness_value == doctest::Approx(1.25 / std::tan(M_PI / 5)).epsilon(1e-9));

        const OracleReport r37 = run_case("3.7", Resolution::Coarse);
        CHECK(r37.pass);
        // Frozen from the coarse run; agrees with default resolution to 1e-4.
        const double pieces37[] = {1.40488, 1.57042, 1.72617, 1.87632, 2.02308};
        for (int i = 0; i < 5; ++i)
            CHECK(info(r37, "subinterval " + std::to_string(i + 1) + " estimate")
                  == doctest::Approx(pieces37[i]).epsilon(2e-4));

        const OracleReport r38 = run_case("3.8", Resolution::Coarse);
        CHECK(r38.pass);
    }

    TEST_CASE("eared circle claims")
    {
        const OracleReport r39 = run_case("3.9", Resolution::Coarse);
        CHECK(r39.pass);
        CHECK(info(r39, "R=1.414214 minimum at a vertex") == doctest::Approx(1 + std::sqrt(3.0) / 2).epsilon(1e-9));

        const OracleReport r310 = run_case("3.10", Resolution::Coarse);
        CHECK(r310.pass);
        const double pieces310[] = {1.37303, 1.39499, 1.39129, 1.37201, 1.55288};
        for (int i = 0; i < 5; ++i)
            CHECK(info(r310, "subinterval " + std::to_string(i + 1) + " estimate")
                  == doctest::Approx(pieces310[i]).epsilon(2e-4));
    }

    TEST_CASE("cluster claims")
    {
        const OracleReport r41 = run_case("4.1", Resolution::Coarse);
        CHECK(r41.pass);
        CHECK(claim(r41, 0).witness_value == doctest::Approx(1.0).epsilon(1e-12));

        const OracleReport r45 = run_case("4.5", Resolution::Coarse);
        CHECK(r45.pass);
        CHECK(claim(r45, 0).witness_value == doctest::Approx(0.5 + (std::sqrt(7.0) + std::sqrt(3.0)) / 8).epsilon(1e-9));
    }

    TEST_CASE("ear with a chosen radius bound")
    {
        OracleOptions o;
        o.radius_bound = std::sqrt(2.5);
        const OracleReport r = run_case("4.4", Resolution::Coarse, o);
        REQUIRE(r.claims.size() == 1);
        CHECK(r.pass);
        CHECK(claim(r, 0).spec.value == doctest::Approx(0.5));
        CHECK(std::abs(claim(r, 0).found_min - 0.5) < kOracleTolerance);

        o.radius_bound = 1.7;
        const OracleReport unmatched = run_case("4.4", Resolution::Coarse, o);
        CHECK_FALSE(unmatched.pass);
    }

    TEST_CASE("three-triangle obtuse cluster and its radius bound")
    {
        const OracleReport r = run_case("4.6", Resolution::Coarse);
        CHECK(r.pass);
        CHECK(claim(r, 0).witness_value == doctest::Approx(1 + std::sqrt(3.0) / 2).epsilon(1e-12));
        CHECK(info(r, "R=sqrt(5/2), both ears right") == doctest::Approx(1.8).epsilon(1e-9));
        CHECK(info(r, "R=sqrt(5/2), one ear right, one on the circle") == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(info(r, "one ear on the circle, inscribed part / (R^2/2) + right ear") == doctest::Approx(1.7).epsilon(1e-9));
        CHECK(info(r, "both ears on the circle, inscribed part / (R^2/2)") == doctest::Approx(1.8624).epsilon(1e-9));

        // A looser circumradius bound admits configurations below the claimed value.
        OracleOptions loose;
        loose.radius_bound = 1.8;
        const OracleReport neg = run_case("4.6", Resolution::Coarse, loose);
        CHECK_FALSE(neg.pass);
        CHECK(claim(neg, 0).found_min < claim(neg, 0).spec.value - kOracleTolerance);

        OracleOptions tight;
        tight.radius_bound = 0.5;
        CHECK_THROWS_AS(run_case("4.6", Resolution::Coarse, tight), InfeasibleCase);
    }

    TEST_CASE("reports serialize deterministically")
    {
        const OracleReport a = run_case("3.6", Resolution::Coarse);
        const OracleReport b = run_case("3.6", Resolution::Coarse);
        CHECK(to_json(a).dump(2) == to_json(b).dump(2));
        const auto j = to_json(a);
        CHECK(j.at("id") == "3.6");
        CHECK(j.at("resolution") == "coarse");
        CHECK(j.at("pass") == true);
        CHECK(j.at("claims").size() == 1);
        CHECK(to_json(list_cases().front()).at("id") == "3.1");
    }
}
