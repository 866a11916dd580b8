#pragma once

#include "befp/field2d.hpp"
#include "befp/radial_profile.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace befp {

/// Entropy density s log s - (s + 1) log(s + 1) + (|v|^2 / 2) s, with 0 log 0 = 0.
/// Written as -s log1p(1/s) - log1p(s) for s > 1 so that large peaks
/// neither overflow nor cancel.
double entropy_density(double s, double half_v2 = 0.0);

/// H(f) = int [|v|^2 f / 2 + f log f - (f + 1) log(f + 1)] dv.
/// An origin atom contributes nothing: the integrand is O(f^{-1} log f) per
/// unit mass as the mass concentrates.
double entropy(const RadialProfile& f);
double entropy(const Field2D& f);

/// D(f) = int f (1 + f) |v + grad log(f / (1 + f))|^2 dv, gradients by
/// centered differences. Cells with f below 1e-300 contribute zero.
double dissipation(const RadialProfile& f);
double dissipation(const Field2D& f);

/// ||(1 + |v|^ell) f||_p for ell > 0 and the plain ||f||_p for ell = 0.
/// p = infinity gives the maximum over nodes / cells.
double lp_ell_norm(const RadialProfile& f, double p, double ell);
double lp_ell_norm(const Field2D& f, double p, double ell);

/// ||f - f_inf^beta||_1.
double l1_to_equilibrium(const RadialProfile& f, double beta);
double l1_to_equilibrium(const Field2D& f, double beta);

/// Supremum of the density (infinite when an atom is present).
double sup_norm(const RadialProfile& f);

/// Entropy, dissipation and the two sides of the Csiszar-Kullback bound
///     H(f) - H(f_inf^beta) >= C ||f - f_inf^beta||_1^2,
///     C = 1/4 (int f_inf^beta (1 + f_inf^beta) dv)^{-2}.
struct EntropyReport
{
    double H = 0.0;
    std::optional<double> D;
    double ck_lhs = 0.0;
    double ck_rhs = 0.0;
    double ck_constant = 0.0;
    double mass = 0.0;

    bool ck_holds(double tolerance = 0.0) const { return ck_lhs >= ck_rhs - tolerance; }
};

std::string to_json(const EntropyReport& r);
EntropyReport entropy_report_from_json(const std::string& text);

/// Builds the report for a BEFP profile against f_inf^beta. Rejects the
/// input (std::invalid_argument naming both masses) unless the masses agree
/// to 1e-6 relative. Every integral uses the profile's own grid.
EntropyReport ck_bound(const RadialProfile& f, double beta, bool with_dissipation = true);
EntropyReport ck_bound(const Field2D& f, double beta, bool with_dissipation = true);

struct DecayFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points_used = 0;
    std::vector<std::size_t> excluded;  ///< indices dropped for a zero distance
};

/// Least squares of log(distance) against t. Needs at least 4 points with
/// positive distance after exclusions.
DecayFit fit_decay_rate(std::span<const std::pair<double, double>> history);

}  // namespace befp
