#include "oracles.hpp"

#include <cmath>

namespace oracle {

double dilog(double z)
{
    double sum = 0.0, zk = z;
    for (int k = 1; k < 100000 && zk > 1e-18; ++k, zk *= z)
        sum += zk / (static_cast<double>(k) * k);
    return sum;
}

double bose_einstein(double beta, double r) { return 1.0 / (beta * std::exp(0.5 * r * r) - 1.0); }

double equilibrium_entropy(double beta)
{
    const double m = -2.0 * pi * std::log(1.0 - 1.0 / beta);
    return -m * std::log(beta) - 2.0 * pi * dilog(1.0 / beta);
}

double ck_constant(double beta) { return (beta - 1.0) * (beta - 1.0) / (16.0 * pi * pi); }

double radial_kernel_by_angle(double t, double r, double s, int points)
{
    const double theta = 1.0 - std::exp(-2.0 * t);
    const double c = std::exp(-t) * s;
    double sum = 0.0;
    for (int k = 0; k < points; ++k) {
        const double phi = 2.0 * pi * k / points;
        const double dx = r * std::cos(phi) - c, dy = r * std::sin(phi);
        sum += std::exp(-(dx * dx + dy * dy) / (2.0 * theta)) / (2.0 * pi * theta);
    }
    return sum * 2.0 * pi / points;
}

namespace {

// Eighth order central differences.
template <class F>
double d1(F&& g, double h)
{
    return (4.0 / 5.0 * (g(h) - g(-h)) - 1.0 / 5.0 * (g(2 * h) - g(-2 * h)) + 4.0 / 105.0 * (g(3 * h) - g(-3 * h)) -
            1.0 / 280.0 * (g(4 * h) - g(-4 * h))) /
           h;
}

template <class F>
double d2(F&& g, double h)
{
    return (-205.0 / 72.0 * g(0.0) + 8.0 / 5.0 * (g(h) + g(-h)) - 1.0 / 5.0 * (g(2 * h) + g(-2 * h)) +
            8.0 / 315.0 * (g(3 * h) + g(-3 * h)) - 1.0 / 560.0 * (g(4 * h) + g(-4 * h))) /
           (h * h);
}

}  // namespace

double befp_residual(const std::function<double(double, double, double)>& f, double t, double x, double y,
                     double ht, double hx)
{
    const double dt = d1([&](double e) { return f(t + e, x, y); }, ht);
    const double lap = d2([&](double e) { return f(t, x + e, y); }, hx) + d2([&](double e) { return f(t, x, y + e); }, hx);
    auto flux = [&](double px, double py) {
        const double v = f(t, px, py);
        return v * (1.0 + v);
    };
    const double div = d1([&](double e) { return (x + e) * flux(x + e, y); }, hx) +
                       d1([&](double e) { return (y + e) * flux(x, y + e); }, hx);
    return dt - lap - div;
}

double SmoothRadial::operator()(double r) const
{
    const double r2 = r * r;
    return (a0 + a1 * r2 + a2 * r2 * r2) * std::exp(-r2 / (2.0 * s * s));
}

SmoothRadial Generator::smooth_radial()
{
    SmoothRadial p;
    p.a0 = uniform(0.0, 1.0);
    p.a1 = uniform(0.0, 1.0);
    p.a2 = uniform(0.0, 0.3);
    if (p.a0 + p.a1 + p.a2 < 0.05)
        p.a0 = 0.5;
    p.s = uniform(0.5, 1.4);
    return p;
}

}  // namespace oracle
