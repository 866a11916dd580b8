#include "befp/radial_profile.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace befp;

TEST_SUITE("radial_profile")
{
    TEST_CASE("sampling stores r times the density")
    {
        const auto g = RadialGrid::uniform(8.0, 400);
        const auto p = RadialProfile::from_density(g, [](double r) { return std::exp(-r * r); }, ProfileKind::fp);
        CHECK(p.values()[0] == 0.0);
        CHECK(p.values()[10] == doctest::Approx(g[10] * std::exp(-g[10] * g[10])));
        const auto d = p.density();
        CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-9));  // O(h^6) extrapolation
        CHECK(d[57] == doctest::Approx(std::exp(-g[57] * g[57])));
    }

    TEST_CASE("density interpolation")
    {
        const auto g = RadialGrid::uniform(8.0, 4000);
        const auto p = RadialProfile::from_density(g, [](double r) { return std::exp(-r * r / 2.0); }, ProfileKind::befp);
        for (double r : {0.0, 0.0007, 0.3333, 1.23456, 4.0001, 7.9999})
            CHECK(p.density_at(r) == doctest::Approx(std::exp(-r * r / 2.0)).epsilon(1e-10));
        CHECK(p.density_at(-0.5) == doctest::Approx(p.density_at(0.5)));
        CHECK(p.density_at(8.5) == 0.0);
    }

    TEST_CASE("mass of a Maxwellian")
    {
        const auto g = RadialGrid::uniform(8.0, 4000);
        const double M = 3.7;
        const auto p = RadialProfile::from_density(
            g, [M](double r) { return M * std::exp(-r * r / 2.0) / (2.0 * oracle::pi); }, ProfileKind::fp);
        CHECK(p.mass() == doctest::Approx(M).epsilon(1e-11));
        const RadialProfile with_atom(g, p.values(), 0.5, ProfileKind::fp);
        CHECK(with_atom.mass() == doctest::Approx(M + oracle::pi).epsilon(1e-11));
    }

    TEST_CASE("cumulative profile includes the atom")
    {
        const auto g = RadialGrid::uniform(8.0, 800);
        const auto p = RadialProfile::from_density(g, [](double r) { return std::exp(-r * r / 2.0); }, ProfileKind::fp, 0.25);
        const auto c = cumulate(p);
        CHECK(c.at_origin() == 0.25);
        CHECK(c.total() == doctest::Approx(p.mass() / (2.0 * oracle::pi)));
        CHECK(c.kind == ProfileKind::fp);
    }

    TEST_CASE("invalid values are rejected")
    {
        const auto g = RadialGrid::uniform(1.0, 4);
        CHECK_THROWS_AS(RadialProfile(g, {0, 1, -1, 0, 0}, 0.0, ProfileKind::fp), std::invalid_argument);
        CHECK_THROWS_AS(RadialProfile(g, {0, 1, NAN, 0, 0}, 0.0, ProfileKind::fp), std::invalid_argument);
        CHECK_THROWS_AS(RadialProfile(g, {0, 1, 1, 0}, 0.0, ProfileKind::fp), std::invalid_argument);
        CHECK_THROWS_AS(RadialProfile(g, {0, 1, 1, 0, 0}, -0.1, ProfileKind::fp), std::invalid_argument);
    }

    TEST_CASE("l1 distance")
    {
        const auto g = RadialGrid::uniform(8.0, 800);
        const auto a = RadialProfile::from_density(g, [](double r) { return std::exp(-r * r / 2.0); }, ProfileKind::befp);
        const auto b = RadialProfile::from_density(g, [](double r) { return 0.5 * std::exp(-r * r / 2.0); }, ProfileKind::befp, 0.1);
        CHECK(l1_distance(a, a) == 0.0);
        CHECK(l1_distance(a, b) == doctest::Approx(l1_distance(b, a)));
        // 2 pi * (1/2) + 2 pi * 0.1
        CHECK(l1_distance(a, b) == doctest::Approx(oracle::pi + 0.2 * oracle::pi).epsilon(1e-8));
    }

    TEST_CASE("csv round trip")
    {
        const auto g = RadialGrid::uniform(3.0, 30);
        const auto p = RadialProfile::from_density(g, [](double r) { return 1.0 / (1.0 + r * r); }, ProfileKind::befp, 0.125);
        std::stringstream ss;
        write_profile_csv(ss, p);
        const auto q = read_profile_csv(ss);
        CHECK(q.kind() == ProfileKind::befp);
        CHECK(q.atom() == 0.125);
        REQUIRE(q.size() == p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(q.grid()[i] == p.grid()[i]);
            CHECK(q.values()[i] == p.values()[i]);
        }
        std::stringstream bad("r,value\n0,0\n");
        CHECK_THROWS(read_profile_csv(bad));
    }

    TEST_CASE("kind names")
    {
        CHECK(to_string(ProfileKind::fp) == "fp");
        CHECK(profile_kind_from_string("befp") == ProfileKind::befp);
        CHECK_THROWS(profile_kind_from_string("bose"));
    }
}
