#include "befp/transform.hpp"

#include "befp/equilibria.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace befp;

namespace {

constexpr double two_pi = 2.0 * oracle::pi;

RadialProfile maxwellian(const RadialGrid& g, double M)
{
    return RadialProfile::from_density(g, [M](double r) { return M * std::exp(-r * r / 2.0) / two_pi; }, ProfileKind::fp);
}

double nodewise_error_vs_equilibrium(const RadialGrid& g, double M)
{
    const auto f = lambda_forward(maxwellian(g, M)).density();
    const double beta = two_pi / M + 1.0;
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        e = std::max(e, std::abs(f[i] - oracle::bose_einstein(beta, g[i])));
    return e;
}

}  // namespace

TEST_SUITE("transform")
{
    TEST_CASE("Maxwellians map onto Bose-Einstein equilibria")
    {
        const auto g = RadialGrid::uniform(8.0, 4000);
        for (double M : {0.1, 1.0, two_pi, 50.0})
            CHECK(nodewise_error_vs_equilibrium(g, M) < 1e-9);
    }

    TEST_CASE("trapezoid quadrature is far less accurate for the same map")
    {
        const auto gregory = RadialGrid::uniform(8.0, 4000);
        const auto trap = RadialGrid::uniform(8.0, 4000, RadialGrid::Rule::trapezoid);
        const double eg = nodewise_error_vs_equilibrium(gregory, 50.0);
        const double et = nodewise_error_vs_equilibrium(trap, 50.0);
        CHECK(et > 1e-8);
        CHECK(et > 100.0 * eg);
    }

    TEST_CASE("round trips in both directions")
    {
        const auto g = RadialGrid::uniform(8.0, 2000);
        oracle::Generator gen(7);
        for (int k = 0; k < 20; ++k) {
            const auto shape = gen.smooth_radial();
            const double scale = gen.uniform(0.1, 3.0);
            const auto p = RadialProfile::from_density(g, [&](double r) { return scale * shape(r); }, ProfileKind::fp);
            const auto back = lambda_inverse(lambda_forward(p));
            const auto f = RadialProfile(g, p.values(), 0.0, ProfileKind::befp);
            const auto fwd = lambda_forward(lambda_inverse(f));
            for (std::size_t i = 0; i < g.size(); ++i) {
                CHECK(back.values()[i] == doctest::Approx(p.values()[i]).epsilon(1e-12));
                CHECK(fwd.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("inverse forms agree to quadrature accuracy")
    {
        const auto g = RadialGrid::uniform(8.0, 2000);
        const auto f = RadialProfile::from_density(g, [](double r) { return bose_einstein(2.0, r); }, ProfileKind::befp);
        const auto a = lambda_inverse(f), b = lambda_inverse_direct(f);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(a.values()[i] - b.values()[i]) < 1e-9);
    }

    TEST_CASE("atoms map through log1p and expm1")
    {
        const auto g = RadialGrid::uniform(8.0, 100);
        const auto atom_only = RadialProfile(g, std::vector<double>(g.size(), 0.0), 1.0 / two_pi, ProfileKind::fp);
        const auto f = lambda_forward(atom_only);
        CHECK(f.atom() == doctest::Approx(oracle::fundamental_atom).epsilon(1e-14));
        CHECK(f.mass() == doctest::Approx(oracle::fundamental_mass).epsilon(1e-14));
        CHECK(lambda_inverse(f).atom() == doctest::Approx(1.0 / two_pi).epsilon(1e-14));
    }

    TEST_CASE("forward output lies below its input")
    {
        const auto g = RadialGrid::uniform(8.0, 400);
        const auto p = maxwellian(g, 10.0);
        const auto f = lambda_forward(p);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(f.values()[i] <= p.values()[i]);
    }

    TEST_CASE("mass relations")
    {
        CHECK(mass_f_from_M(1.0) == doctest::Approx(oracle::fundamental_mass).epsilon(1e-14));
        CHECK(mass_f_from_M(two_pi) == doctest::Approx(oracle::mass_at_beta_2).epsilon(1e-14));
        for (double M : {1e-6, 0.3, 7.0, 400.0})
            CHECK(mass_M_from_m(mass_f_from_M(M)) == doctest::Approx(M).epsilon(1e-13));
        CHECK(lipschitz_bound(1.0, two_pi) == doctest::Approx(2.0));
    }

    TEST_CASE("quadrature mass matches the mass relation")
    {
        const auto g = RadialGrid::uniform(8.0, 4000);
        oracle::Generator gen(3);
        for (int k = 0; k < 10; ++k) {
            const auto shape = gen.smooth_radial();
            const auto p = RadialProfile::from_density(g, shape, ProfileKind::fp);
            CHECK(std::abs(lambda_forward(p).mass() - mass_f_from_M(p.mass())) < 1e-8);
        }
    }

    TEST_CASE("wrong side or unresolved data is rejected")
    {
        const auto g = RadialGrid::uniform(8.0, 100);
        const auto p = maxwellian(g, 1.0);
        CHECK_THROWS_AS(lambda_inverse(p), std::invalid_argument);
        CHECK_THROWS_AS(lambda_forward(RadialProfile(g, p.values(), 0.0, ProfileKind::befp)), std::invalid_argument);
        auto spike = std::vector<double>(g.size(), 0.0);
        spike[1] = 1.0 / g.diagonal_weight(1) * 1.5;
        CHECK_THROWS_AS(lambda_inverse(RadialProfile(g, spike, 0.0, ProfileKind::befp)), std::domain_error);
    }
}
