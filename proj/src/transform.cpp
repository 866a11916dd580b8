#include "befp/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace befp {

namespace {

constexpr double max_log_growth = 700.0;

void require_kind(const RadialProfile& p, ProfileKind kind, const char* where)
{
    if (p.kind() != kind)
        throw std::invalid_argument(std::string(where) + ": expected a " + to_string(kind) + "-side profile");
}

}  // namespace

RadialProfile lambda_forward(const RadialProfile& g)
{
    require_kind(g, ProfileKind::fp, "lambda_forward");
    const auto& psi = g.values();
    const auto cum = g.grid().running_integral(psi);
    std::vector<double> phi(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        phi[i] = psi[i] / (1.0 + g.atom() + cum[i]);
    return RadialProfile(g.grid(), std::move(phi), std::log1p(g.atom()), ProfileKind::befp);
}

RadialProfile lambda_inverse(const RadialProfile& f)
{
    require_kind(f, ProfileKind::befp, "lambda_inverse");
    if (f.atom() > max_log_growth)
        throw std::overflow_error("lambda_inverse: atom exceeds exp overflow guard (corrupt data?)");
    const auto& grid = f.grid();
    const auto& phi = f.values();
    const double atom_psi = std::expm1(f.atom());

    std::vector<double> psi(phi.size());
    RadialGrid::Accumulator acc(grid);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double w = grid.diagonal_weight(i);
        const double wp = w * phi[i];
        if (!(wp < 1.0))
            throw std::domain_error("lambda_inverse: profile too steep for the grid at r = "
                                    + std::to_string(grid[i]) + " (refine the radial grid)");
        const double base = 1.0 + atom_psi + acc.off_diagonal();
        psi[i] = phi[i] * base / (1.0 - wp);
        const double total = acc.push(psi[i]);
        if (std::log1p(atom_psi + total) > max_log_growth)
            throw std::overflow_error("lambda_inverse: exp(Phi) exceeds e^700 at r = " + std::to_string(grid[i])
                                      + " (corrupt data?)");
    }
    return RadialProfile(grid, std::move(psi), atom_psi, ProfileKind::fp);
}

RadialProfile lambda_inverse_direct(const RadialProfile& f)
{
    require_kind(f, ProfileKind::befp, "lambda_inverse_direct");
    const auto cum = f.grid().running_integral(f.values());
    std::vector<double> psi(cum.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double expo = f.atom() + cum[i];
        if (expo > max_log_growth)
            throw std::overflow_error("lambda_inverse_direct: exponent exceeds 700 (corrupt data?)");
        psi[i] = f.values()[i] * std::exp(expo);
    }
    return RadialProfile(f.grid(), std::move(psi), std::expm1(f.atom()), ProfileKind::fp);
}

double mass_f_from_M(double fp_mass)
{
    if (!(fp_mass >= 0.0))
        throw std::invalid_argument("mass_f_from_M: mass must be non-negative");
    return 2.0 * M_PI * std::log1p(fp_mass / (2.0 * M_PI));
}

double mass_M_from_m(double befp_mass)
{
    if (!(befp_mass >= 0.0))
        throw std::invalid_argument("mass_M_from_m: mass must be non-negative");
    return 2.0 * M_PI * std::expm1(befp_mass / (2.0 * M_PI));
}

double lipschitz_bound(double fp_mass_1, double fp_mass_2)
{
    if (!(fp_mass_1 >= 0.0) || !(fp_mass_2 >= 0.0))
        throw std::invalid_argument("lipschitz_bound: masses must be non-negative");
    return 1.0 + fp_mass_2 / (2.0 * M_PI);
}

}  // namespace befp
