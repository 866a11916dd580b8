#include "befp/radial_solver.hpp"

#include "befp/diagnostics.hpp"
#include "befp/equilibria.hpp"
#include "befp/fp_exact.hpp"
#include "befp/transform.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace befp {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

RadialProfile scaled_to_mass(RadialProfile p, double mass)
{
    const double current = p.mass();
    if (!(current > 0.0))
        throw std::domain_error("initial condition has zero mass on this grid");
    auto v = p.values();
    for (double& x : v)
        x *= mass / current;
    return RadialProfile(p.grid(), std::move(v), 0.0, ProfileKind::befp);
}

}  // namespace

RadialProfile initial_profile(const RadialInitialCondition& ic, const RadialGrid& grid)
{
    return std::visit(
        overloaded{
            [&](const initial::Equilibrium& e) {
                const double beta = e.beta;
                return RadialProfile::from_density(grid, [beta](double r) { return bose_einstein(beta, r); },
                                                   ProfileKind::befp);
            },
            [&](const initial::Fundamental& fs) {
                const double t0 = fs.t0;
                return RadialProfile::from_density(grid, [t0](double r) { return befp_fundamental(t0, r); },
                                                   ProfileKind::befp);
            },
            [&](const initial::GaussianBump& b) {
                if (!(b.width > 0.0) || !(b.center_radius >= 0.0) || !(b.mass > 0.0))
                    throw std::invalid_argument("gaussian bump: need width > 0, center radius >= 0, mass > 0");
                const double c = b.center_radius, w = b.width;
                auto shape = [c, w](double r) {
                    if (c == 0.0)
                        return std::exp(-r * r / (2.0 * w * w));
                    const double q = r * r - c * c;
                    return std::exp(-q * q / (8.0 * c * c * w * w));
                };
                return scaled_to_mass(RadialProfile::from_density(grid, shape, ProfileKind::befp), b.mass);
            },
            [&](const initial::Dirac& d) {
                if (!(d.mass >= 0.0) || !std::isfinite(d.mass))
                    throw std::invalid_argument("dirac: mass must be finite and non-negative");
                return RadialProfile(grid, std::vector<double>(grid.size(), 0.0), d.mass / (2.0 * M_PI),
                                     ProfileKind::befp);
            },
            [&](const RadialProfile& p) {
                if (p.kind() != ProfileKind::befp)
                    throw std::invalid_argument("tabulated initial condition must be a befp-side profile");
                return p;
            },
        },
        ic);
}

Trajectory solve_radial_exact(const RadialInitialCondition& f0, const RadialGrid& grid, std::span<const double> times)
{
    return solve_radial_exact(initial_profile(f0, grid), times);
}

Trajectory solve_radial_exact(const RadialProfile& f0, std::span<const double> times)
{
    if (f0.kind() != ProfileKind::befp)
        throw std::invalid_argument("solve_radial_exact: initial data must be befp-side");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] > 0.0) || !std::isfinite(times[k]))
            throw std::invalid_argument("solve_radial_exact: times must be positive and finite");
        if (k > 0 && !(times[k] > times[k - 1]))
            throw std::invalid_argument("solve_radial_exact: times must be strictly increasing");
    }
    const double m = f0.mass();
    if (!std::isfinite(m))
        throw std::domain_error("solve_radial_exact: initial mass is not finite");

    Trajectory traj{std::vector<double>(times.begin(), times.end()), {}, {}, {}, f0, m,
                    m > 0.0 ? beta_from_mass(m) : std::numeric_limits<double>::infinity()};
    const auto g0 = lambda_inverse(f0);

    const std::size_t n = times.size();
    std::vector<std::optional<RadialProfile>> fp(n), befp(n);
    std::vector<SnapshotDiagnostics> diag(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < n; ++k) {
        fp[k] = fp_propagate_radial(g0, times[k]);
        befp[k] = lambda_forward(*fp[k]);
        const auto& f = *befp[k];
        diag[k] = {times[k], f.mass(), entropy(f), m > 0.0 ? l1_to_equilibrium(f, traj.beta_eq) : f.mass(),
                   sup_norm(f)};
    }
    for (std::size_t k = 0; k < n; ++k) {
        traj.fp_snapshots.push_back(std::move(*fp[k]));
        traj.snapshots.push_back(std::move(*befp[k]));
    }
    traj.diagnostics = std::move(diag);
    return traj;
}

RadialProfile direct_quotient(const RadialProfile& g)
{
    if (g.kind() != ProfileKind::fp)
        throw std::invalid_argument("direct_quotient: expected an fp-side profile");
    const auto& grid = g.grid();
    const auto psi_cum = cumulate(g);
    const auto dens = g.density();
    std::vector<double> phi(g.size(), 0.0);
    for (std::size_t i = 1; i < phi.size(); ++i)
        phi[i] = grid[i] * (dens[i] / (1.0 + psi_cum.values[i]));
    return RadialProfile(grid, std::move(phi), std::log1p(g.atom()), ProfileKind::befp);
}

std::string to_string(SandwichReport::Inequality which)
{
    switch (which) {
    case SandwichReport::Inequality::lower: return "2pi/(2pi+M) g <= f";
    case SandwichReport::Inequality::middle: return "f <= g";
    case SandwichReport::Inequality::upper: return "g <= f e^{m/2pi}";
    }
    return "?";
}

std::string SandwichReport::describe() const
{
    std::ostringstream os;
    os << std::setprecision(6) << "worst margins: lower " << worst_lower_margin << ", middle " << worst_middle_margin
       << ", upper " << worst_upper_margin;
    for (const auto& v : violations)
        os << "\n  violated " << to_string(v.which) << " at node " << v.node << " (r = " << v.r << "): " << v.lhs
           << " > " << v.rhs;
    return os.str();
}

SandwichReport sandwich_check(const RadialProfile& f, const RadialProfile& g, double fp_mass, double befp_mass,
                              double slack)
{
    if (f.kind() != ProfileKind::befp || g.kind() != ProfileKind::fp)
        throw std::invalid_argument("sandwich_check: expects (befp-side f, fp-side g)");
    if (!f.grid().same_nodes(g.grid()))
        throw std::invalid_argument("sandwich_check: profiles live on different grids");
    const double lower = 2.0 * M_PI / (2.0 * M_PI + fp_mass);
    const double upper = std::exp(befp_mass / (2.0 * M_PI));
    const double big = std::numeric_limits<double>::infinity();
    SandwichReport rep{big, big, big, {}};
    using I = SandwichReport::Inequality;
    auto check = [&](std::size_t i, I which, double lhs, double rhs, double& worst) {
        worst = std::min(worst, rhs - lhs);
        if (lhs > rhs + slack * (1.0 + std::abs(rhs)))
            rep.violations.push_back({i, f.grid()[i], which, lhs, rhs});
    };
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double fi = f.values()[i], gi = g.values()[i];
        check(i, I::lower, lower * gi, fi, rep.worst_lower_margin);
        check(i, I::middle, fi, gi, rep.worst_middle_margin);
        check(i, I::upper, gi, fi * upper, rep.worst_upper_margin);
    }
    return rep;
}

std::vector<std::pair<double, double>> decay_history(const Trajectory& traj, double beta)
{
    std::vector<std::pair<double, double>> h;
    h.reserve(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        h.emplace_back(traj.times[k], l1_to_equilibrium(traj.snapshots[k], beta));
    return h;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << std::setprecision(17) << "t,r,value\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& p = traj.snapshots[k];
        for (std::size_t i = 0; i < p.size(); ++i)
            os << traj.times[k] << ',' << p.grid()[i] << ',' << p.values()[i] << '\n';
    }
}

void write_diagnostics_csv(std::ostream& os, const Trajectory& traj)
{
    os << std::setprecision(17) << "t,mass,entropy,l1_to_eq,sup\n";
    for (const auto& d : traj.diagnostics)
        os << d.t << ',' << d.mass << ',' << d.entropy << ',' << d.l1_to_eq << ',' << d.sup << '\n';
}

}  // namespace befp
