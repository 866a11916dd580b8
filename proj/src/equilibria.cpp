#include "befp/equilibria.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace befp {

namespace {

void require_beta(double beta)
{
    if (!(beta > 1.0) || !std::isfinite(beta))
        throw std::domain_error("beta must be finite and > 1 (beta = 1 has infinite mass in 2D), got "
                                + std::to_string(beta));
}

}  // namespace

EquilibriumParams EquilibriumParams::from_beta(double beta)
{
    require_beta(beta);
    return EquilibriumParams(beta, mass_from_beta(beta), 2.0 * M_PI / (beta - 1.0));
}

EquilibriumParams EquilibriumParams::from_mass(double m)
{
    const double beta = beta_from_mass(m);
    return EquilibriumParams(beta, m, 2.0 * M_PI * std::expm1(m / (2.0 * M_PI)));
}

EquilibriumParams EquilibriumParams::from_fp_mass(double M)
{
    if (!(M > 0.0) || !std::isfinite(M))
        throw std::domain_error("FP mass must be positive and finite");
    return EquilibriumParams(2.0 * M_PI / M + 1.0, 2.0 * M_PI * std::log1p(M / (2.0 * M_PI)), M);
}

double bose_einstein(double beta, double r)
{
    require_beta(beta);
    return 1.0 / (beta - 1.0 + beta * std::expm1(0.5 * r * r));
}

double bose_einstein_dr(double beta, double r)
{
    require_beta(beta);
    if (0.5 * r * r > 700.0)
        return 0.0;
    const double e = std::exp(0.5 * r * r);
    const double den = beta - 1.0 + beta * std::expm1(0.5 * r * r);
    return -beta * r * e / (den * den);
}

double mass_from_beta(double beta)
{
    require_beta(beta);
    return -2.0 * M_PI * std::log1p(-1.0 / beta);
}

double beta_from_mass(double m)
{
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::domain_error("beta_from_mass: mass must be positive and finite, got " + std::to_string(m));
    return -1.0 / std::expm1(-m / (2.0 * M_PI));
}

double fp_maxwellian(double M, double r)
{
    if (!(M >= 0.0))
        throw std::domain_error("fp_maxwellian: mass must be non-negative");
    return M * std::exp(-0.5 * r * r) / (2.0 * M_PI);
}

double befp_vartheta(double t)
{
    return -std::expm1(-2.0 * t);
}

double befp_fundamental(double t, double r)
{
    if (!(t > 0.0))
        throw std::domain_error("befp_fundamental: t must be > 0");
    const double th = befp_vartheta(t);
    const double u = 0.5 * r * r / th;
    if (u > 700.0)
        return 0.0;
    return 1.0 / (th * (2.0 * M_PI + (2.0 * M_PI + 1.0) * std::expm1(u)));
}

double befp_fundamental_mass()
{
    return 2.0 * M_PI * std::log1p(1.0 / (2.0 * M_PI));
}

double befp_infinite_mass(double t, double r, double amplitude)
{
    if (!(amplitude > 0.0))
        throw std::domain_error("befp_infinite_mass: amplitude must be > 0");
    if (!(t >= 0.0))
        throw std::domain_error("befp_infinite_mass: t must be >= 0");
    return 2.0 / (2.0 / amplitude * std::exp(-2.0 * t) + r * r);
}

}  // namespace befp
