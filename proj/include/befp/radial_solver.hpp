#pragma once

#include "befp/radial_profile.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace befp {

namespace initial {

struct Equilibrium
{
    double beta;
};

/// The Dirac-start solution taken at time t0 > 0.
struct Fundamental
{
    double t0;
};

/// Ring of radius `center_radius` and width `width` carrying BEFP mass
/// `mass`. The shape exp(-(r^2 - c^2)^2 / (8 c^2 w^2)) is smooth at the
/// origin and equals exp(-(r - c)^2 / (2 w^2)) to leading order near r = c;
/// c = 0 gives the centered Gaussian exp(-r^2 / (2 w^2)).
struct GaussianBump
{
    double center_radius;
    double width;
    double mass;
};

/// Point mass at the origin with BEFP mass `mass`.
struct Dirac
{
    double mass;
};

}  // namespace initial

using RadialInitialCondition =
    std::variant<initial::Equilibrium, initial::Fundamental, initial::GaussianBump, initial::Dirac, RadialProfile>;

/// BEFP-side profile of an initial condition on the given grid.
RadialProfile initial_profile(const RadialInitialCondition& ic, const RadialGrid& grid);

struct SnapshotDiagnostics
{
    double t;
    double mass;
    double entropy;
    double l1_to_eq;
    double sup;
};

struct Trajectory
{
    std::vector<double> times;
    std::vector<RadialProfile> snapshots;     ///< BEFP side
    std::vector<RadialProfile> fp_snapshots;  ///< the FP solution they were mapped from
    std::vector<SnapshotDiagnostics> diagnostics;
    RadialProfile initial;
    double initial_mass = 0.0;
    /// beta of the equilibrium with the measured initial mass (infinite for zero data).
    double beta_eq = 0.0;
};

/// f(t) = Lambda(F[Lambda^{-1}(f0)](t)) for each requested time. Times must
/// be positive and strictly increasing. Snapshots are independent and are
/// computed in parallel when OpenMP is available.
Trajectory solve_radial_exact(const RadialInitialCondition& f0, const RadialGrid& grid, std::span<const double> times);
Trajectory solve_radial_exact(const RadialProfile& f0, std::span<const double> times);

/// f = g / (1 + Psi) evaluated on densities rather than on r * density.
/// Same formula as lambda_forward; a separate route for cross-checks.
RadialProfile direct_quotient(const RadialProfile& g_snapshot);

/// Pointwise check of (2 pi / (2 pi + M)) g <= f <= g <= f e^{m / 2 pi}.
struct SandwichReport
{
    enum class Inequality { lower, middle, upper };

    struct Violation
    {
        std::size_t node;
        double r;
        Inequality which;
        double lhs;
        double rhs;
    };

    double worst_lower_margin;   ///< min_i f_i - 2 pi / (2 pi + M) g_i
    double worst_middle_margin;  ///< min_i g_i - f_i
    double worst_upper_margin;   ///< min_i f_i e^{m/2pi} - g_i
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string describe() const;
};

std::string to_string(SandwichReport::Inequality which);

SandwichReport sandwich_check(const RadialProfile& f, const RadialProfile& g, double fp_mass, double befp_mass,
                              double slack = 1e-12);

/// (t, ||f(t) - f_inf^beta||_1) for every snapshot.
std::vector<std::pair<double, double>> decay_history(const Trajectory& traj, double beta);

/// `t,r,value` rows for every snapshot.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// `t,mass,entropy,l1_to_eq,sup` rows.
void write_diagnostics_csv(std::ostream& os, const Trajectory& traj);

}  // namespace befp
