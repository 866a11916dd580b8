#pragma once

#include "befp/field2d.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace befp {

/// B(x) = x / (e^x - 1), B(0) = 1.
double bernoulli(double x);

/// Net fluxes through cell edges, positive in the +x / +y direction.
/// fx has (n + 1) x n entries, fx[e * n + j] on the x-edge e between cells
/// (e - 1, j) and (e, j); fy has n x (n + 1) entries, fy[i * (n + 1) + e].
/// Edges on the domain boundary carry zero flux.
struct EdgeFluxes
{
    std::size_t n = 0;
    std::vector<double> fx;
    std::vector<double> fy;

    double x(std::size_t e, std::size_t j) const { return fx[e * n + j]; }
    double y(std::size_t i, std::size_t e) const { return fy[i * (n + 1) + e]; }
    double max_abs() const;
};

/// How the factor (1 + f) of the drift is evaluated on an edge between
/// cells holding a and b.
enum class EdgeAverage {
    /// 1 + f_e = (log b - log a) / (log z(b) - log z(a)), z = f / (1 + f).
    /// A mean of a and b for which sampled Bose-Einstein equilibria carry
    /// exactly zero flux.
    equilibrium,
    /// f_e = (a + b) / 2.
    arithmetic,
};

/// Edge value of f under the given averaging rule.
double edge_average(double a, double b, EdgeAverage avg);

/// Exponentially fitted fluxes for -(grad f + v f (1 + f)).
/// With `drift = false` only the 5-point diffusion fluxes remain.
EdgeFluxes assemble_flux(const Field2D& field, EdgeAverage avg = EdgeAverage::equilibrium, bool drift = true);

/// h^2 / (4 + 2 h max|v| (1 + max f)) with max|v| = sqrt(2) L.
double stable_dt(const Field2D& field);

class TimeStepTooLarge : public std::invalid_argument
{
public:
    TimeStepTooLarge(double dt, double bound);
    double dt() const { return dt_; }
    double bound() const { return bound_; }

private:
    double dt_;
    double bound_;
};

/// Raised when a cell goes below -1e-12.
class NegativeDensity : public std::runtime_error
{
public:
    NegativeDensity(double time, std::size_t i, std::size_t j, double value);
    double time() const { return time_; }
    std::size_t i() const { return i_; }
    std::size_t j() const { return j_; }
    double value() const { return value_; }

private:
    double time_;
    std::size_t i_, j_;
    double value_;
};

/// One explicit Euler step. Throws TimeStepTooLarge if dt > stable_dt(field).
Field2D step(const Field2D& field, double dt, EdgeAverage avg = EdgeAverage::equilibrium);

struct FieldDiagnostics
{
    double t;
    double mass;
    double entropy;
    double l1_to_eq;
    double sup;
};

struct Trajectory2D
{
    std::vector<double> times;
    std::vector<Field2D> snapshots;
    std::vector<FieldDiagnostics> diagnostics;
    double initial_mass = 0.0;
    double beta_eq = 0.0;  ///< infinite for zero data
    std::size_t steps = 0;
    double max_relative_mass_drift = 0.0;
};

/// Steps f0 up to the last snapshot time (<= t_end), shortening steps to
/// land exactly on every snapshot. dt <= 0 selects 0.9 * stable_dt at each
/// step; a positive dt is checked against the bound at every step.
/// Snapshot times must be increasing and lie in [0, t_end].
Trajectory2D solve_numeric(const Field2D& f0, double t_end, double dt, std::span<const double> snapshot_times,
                           EdgeAverage avg = EdgeAverage::equilibrium);

}  // namespace befp
