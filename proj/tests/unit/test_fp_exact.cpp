#include "befp/fp_exact.hpp"

#include "befp/diagnostics.hpp"
#include "befp/equilibria.hpp"
#include "befp/log.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace befp;

namespace {

constexpr double two_pi = 2.0 * oracle::pi;

RadialProfile maxwellian(const RadialGrid& g, double M)
{
    return RadialProfile::from_density(g, [M](double r) { return fp_maxwellian(M, r); }, ProfileKind::fp);
}

/// d_t g - Lap g - div(v g) with fourth-order central differences.
double fp_residual(const std::function<double(double, double, double)>& g, double t, double x, double y, double h)
{
    auto d1 = [h](auto&& f) { return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h); };
    auto d2 = [h](auto&& f) { return (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / (12.0 * h * h); };
    const double gt = d1([&](int k) { return g(t + k * h, x, y); });
    const double gx = d1([&](int k) { return g(t, x + k * h, y); });
    const double gy = d1([&](int k) { return g(t, x, y + k * h); });
    const double lap = d2([&](int k) { return g(t, x + k * h, y); }) + d2([&](int k) { return g(t, x, y + k * h); });
    return gt - lap - 2.0 * g(t, x, y) - x * gx - y * gy;
}

}  // namespace

TEST_SUITE("fp_exact")
{
    TEST_CASE("kernel parameters")
    {
        const auto k = FpKernelParams::at(0.7);
        CHECK(k.a == doctest::Approx(std::exp(-1.4)));
        CHECK(k.nu == doctest::Approx(std::expm1(1.4)));
        CHECK(k.theta == doctest::Approx(k.a * k.nu));
        CHECK(k.decay == doctest::Approx(std::exp(-0.7)));
    }

    TEST_CASE("kernel equals its literal form")
    {
        oracle::Generator gen(11);
        for (int k = 0; k < 200; ++k) {
            const double t = gen.uniform(0.01, 5.0);
            const Vec2 v{gen.uniform(-4, 4), gen.uniform(-4, 4)}, w{gen.uniform(-4, 4), gen.uniform(-4, 4)};
            const double a = fp_kernel(t, v, w), b = fp_kernel_literal(t, v, w);
            // rounding in the exponent scales with its size
            if (a > 1e-290)
                CHECK(std::abs(a - b) <= 1e-15 * (1.0 + std::abs(std::log(a))) * a);
        }
    }

    TEST_CASE("kernel carries unit mass")
    {
        for (double t : {0.1, 1.0, 3.0}) {
            const Vec2 w{1.3, -0.4};
            const double h = 0.02;
            double sum = 0.0;
            for (double x = -10.0; x <= 10.0; x += h)
                for (double y = -10.0; y <= 10.0; y += h)
                    sum += fp_kernel(t, {x, y}, w);
            CHECK(sum * h * h == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    TEST_CASE("radial kernel is the angular integral")
    {
        for (double t : {0.05, 0.5, 2.0})
            for (double r : {0.0, 0.3, 1.0, 2.5})
                for (double s : {0.0, 0.7, 2.0, 4.0}) {
                    const double ref = oracle::radial_kernel_by_angle(t, r, s);
                    CHECK(std::abs(fp_radial_kernel(t, r, s) - ref) <= 1e-9 * std::max(ref, 1e-300) + 1e-300);
                }
    }

    TEST_CASE("radial kernel integrates to one in r")
    {
        const auto g = RadialGrid::uniform(12.0, 6000);
        for (double s : {0.0, 1.0, 3.0}) {
            std::vector<double> k(g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                k[i] = fp_radial_kernel(0.8, g[i], s) * g[i];
            CHECK(g.integrate(k) == doctest::Approx(1.0).epsilon(1e-11));
        }
    }

    TEST_CASE("Maxwellians are fixed")
    {
        const auto g = RadialGrid::uniform(8.0, 2000);
        const auto p = maxwellian(g, 2.5);
        for (double t : {0.3, 2.0}) {
            const auto q = fp_propagate_radial(p, t);
            for (std::size_t i = 0; i < g.size(); i += 7)
                CHECK(std::abs(q.values()[i] - p.values()[i]) < 1e-10);
        }
    }

    TEST_CASE("origin atom spreads into a centered Gaussian")
    {
        const auto g = RadialGrid::uniform(8.0, 1000);
        const RadialProfile dirac(g, std::vector<double>(g.size(), 0.0), 1.0 / two_pi, ProfileKind::fp);
        const double t = 0.6, th = 1.0 - std::exp(-2.0 * t);
        const auto q = fp_propagate_radial(dirac, t);
        CHECK(q.atom() == 0.0);
        const auto d = q.density();
        for (std::size_t i = 0; i < g.size(); i += 13)
            CHECK(d[i] == doctest::Approx(std::exp(-g[i] * g[i] / (2.0 * th)) / (two_pi * th)).epsilon(1e-12));
    }

    TEST_CASE("mass is conserved and positivity kept")
    {
        const auto g = RadialGrid::uniform(10.0, 2000);
        oracle::Generator gen(5);
        for (int k = 0; k < 5; ++k) {
            const auto p = RadialProfile::from_density(g, gen.smooth_radial(), ProfileKind::fp);
            const auto q = fp_propagate_radial(p, 2.0);
            CHECK(q.mass() == doctest::Approx(p.mass()).epsilon(1e-10));
            for (double v : q.values())
                CHECK(v >= 0.0);
        }
    }

    TEST_CASE("semigroup property")
    {
        const auto g = RadialGrid::uniform(10.0, 2000);
        const auto p = RadialProfile::from_density(
            g, [](double r) { return std::exp(-(r - 2.0) * (r - 2.0) / 0.5); }, ProfileKind::fp);
        const auto two = fp_propagate_radial(fp_propagate_radial(p, 0.3), 0.5);
        const auto one = fp_propagate_radial(p, 0.8);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(two.values()[i] - one.values()[i]) < 1e-7);
    }

    TEST_CASE("tiny times return the input with a warning")
    {
        std::vector<std::string> seen;
        set_warning_sink([&](const std::string& m) { seen.push_back(m); });
        const auto g = RadialGrid::uniform(8.0, 100);
        const auto p = maxwellian(g, 1.0);
        const auto q = fp_propagate_radial(p, 1e-5);
        set_warning_sink(nullptr);
        REQUIRE(seen.size() == 1);
        CHECK(q.values() == p.values());
    }

    TEST_CASE("point mass drifts toward the origin")
    {
        const Grid2D grid(6.0, 240);
        const PointMass pm{{2.0, 0.0}, 1.0};
        const double t = 0.4;
        const auto f = fp_propagate_2d(std::span<const PointMass>(&pm, 1), grid, t);
        const auto& v = f.values();
        const auto k = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        CHECK(grid.center(k / 240) == doctest::Approx(2.0 * std::exp(-t)).epsilon(0.02));
        CHECK(std::abs(grid.center(k % 240)) < grid.spacing());
        CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-6));
    }

    TEST_CASE("point-mass solutions satisfy the equation")
    {
        const std::vector<PointMass> pm{{{1.0, 0.5}, 2.0}, {{-0.5, -1.0}, 0.7}};
        auto g = [&](double t, double x, double y) { return fp_value(pm, t, {x, y}); };
        for (double t : {0.3, 1.0, 2.5})
            for (Vec2 v : {Vec2{0.0, 0.0}, Vec2{0.8, -0.3}, Vec2{-1.5, 1.2}})
                CHECK(std::abs(fp_residual(g, t, v.x, v.y, 1e-2)) < 1e-5);
    }

    TEST_CASE("field propagation agrees with pointwise evaluation")
    {
        const Grid2D grid(6.0, 48);
        const auto f0 = Field2D::sample(grid, [](double x, double y) { return std::exp(-((x - 1) * (x - 1) + y * y)); });
        const auto f = fp_propagate_2d(f0, 0.5);
        for (std::size_t i : {10u, 24u, 30u})
            for (std::size_t j : {12u, 25u})
                CHECK(f(i, j) == doctest::Approx(fp_value(f0, 0.5, {grid.center(i), grid.center(j)})).epsilon(1e-10));
    }

    TEST_CASE("off-center Gaussians decay slower than e^{-t}")
    {
        // g0 = N(c, I): ||g(t) - g_inf||_1 / ||g0 - g_inf||_1 = erf(e^{-t} x) / erf(x), x = |c| / (2 sqrt 2)
        const Grid2D grid(9.0, 180);
        const double c = 1.58;
        auto gauss = [](double cx) {
            return [cx](double x, double y) { return std::exp(-((x - cx) * (x - cx) + y * y) / 2.0) / two_pi; };
        };
        const auto g0 = Field2D::sample(grid, gauss(c));
        const auto ginf = Field2D::sample(grid, gauss(0.0));
        const double x = c / (2.0 * std::sqrt(2.0));
        for (double t : {0.5, 2.0}) {
            const double ratio = l1_distance(fp_propagate_2d(g0, t), ginf) / l1_distance(g0, ginf);
            CHECK(ratio == doctest::Approx(std::erf(std::exp(-t) * x) / std::erf(x)).epsilon(1e-4));
            CHECK(ratio > std::exp(-t));
        }
    }

    TEST_CASE("Lp bound report")
    {
        const auto g = RadialGrid::uniform(8.0, 1000);
        const auto g0 = RadialProfile::from_density(
            g, [](double r) { return std::exp(-(r - 1.5) * (r - 1.5)); }, ProfileKind::fp);
        const std::vector<double> times{0.25, 1.0, 3.0};
        std::vector<RadialProfile> traj;
        for (double t : times)
            traj.push_back(fp_propagate_radial(g0, t));
        const auto l1 = check_lp_bounds(g0, times, traj, 1.0, 0.0);
        REQUIRE(l1.rows.size() == 3);
        for (const auto& row : l1.rows)
            CHECK(*row.ratio_same_p == doctest::Approx(1.0).epsilon(1e-9));
        const auto l2 = check_lp_bounds(g0, times, traj, 2.0, 1.0);
        CHECK(l2.max_ratio_same_p() <= 1.0);
        CHECK(l2.max_ratio_from_l1() > 0.0);
        CHECK(l2.max_ratio_from_l1() < 10.0);
        const auto inf = check_lp_bounds(g0, times, traj, INFINITY, 0.0);
        CHECK(inf.rows[2].norm == doctest::Approx(lp_ell_norm(traj[2], INFINITY, 0.0)));
    }
}
