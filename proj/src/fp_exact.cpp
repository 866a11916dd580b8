#include "befp/fp_exact.hpp"

#include "befp/bessel.hpp"
#include "befp/diagnostics.hpp"
#include "befp/log.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace befp {

namespace {

// Kernel contributions below e^{-60} of the peak are dropped.
constexpr double kernel_log_cutoff = 60.0;

void require_time(double t, const char* where)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error(std::string(where) + ": t must be > 0, got " + std::to_string(t));
}

bool small_time_guard(double t, const char* where)
{
    if (t < fp_min_time) {
        warn(std::string(where) + ": t = " + std::to_string(t)
             + " is below the kernel resolution limit; returning the input unchanged");
        return true;
    }
    return false;
}

/// int_{lo}^{hi} (2 pi theta)^{-1/2} exp(-(x - e^{-t} w)^2 / (2 theta)) dw.
double cell_weight(const FpKernelParams& k, double x, double lo, double hi)
{
    const double s = std::sqrt(2.0 * k.theta);
    const double a = (x - k.decay * lo) / s;  // a >= b
    const double b = (x - k.decay * hi) / s;
    double diff;
    if (b > 0.0)
        diff = std::erfc(b) - std::erfc(a);
    else if (a < 0.0)
        diff = std::erfc(-a) - std::erfc(-b);
    else
        diff = std::erf(a) - std::erf(b);
    return 0.5 * diff / k.decay;
}

double gauss_1d(const FpKernelParams& k, double x, double w)
{
    const double d = x - k.decay * w;
    return std::exp(-d * d / (2.0 * k.theta)) / std::sqrt(2.0 * M_PI * k.theta);
}

}  // namespace

FpKernelParams FpKernelParams::at(double t)
{
    require_time(t, "FpKernelParams");
    return {t, std::exp(-2.0 * t), std::expm1(2.0 * t), -std::expm1(-2.0 * t), std::exp(-t)};
}

double fp_kernel(double t, Vec2 v, Vec2 w)
{
    const auto k = FpKernelParams::at(t);
    const Vec2 d{v.x - k.decay * w.x, v.y - k.decay * w.y};
    return std::exp(-norm2(d) / (2.0 * k.theta)) / (2.0 * M_PI * k.theta);
}

double fp_kernel_literal(double t, Vec2 v, Vec2 w)
{
    const auto k = FpKernelParams::at(t);
    const double sa = std::sqrt(k.a);
    const Vec2 xi{v.x / sa - w.x, v.y / sa - w.y};
    const double m_nu = std::exp(-norm2(xi) / (2.0 * k.nu)) / (2.0 * M_PI * k.nu);
    return m_nu / k.a;
}

double fp_radial_kernel(double t, double r, double s)
{
    const auto k = FpKernelParams::at(t);
    const double d = r - k.decay * s;
    return std::exp(-d * d / (2.0 * k.theta)) * bessel_i0_scaled(r * s * k.decay / k.theta) / k.theta;
}

double fp_value(std::span<const PointMass> masses, double t, Vec2 v)
{
    const auto k = FpKernelParams::at(t);
    double s = 0.0;
    for (const auto& pm : masses)
        s += pm.mass * gauss_1d(k, v.x, pm.position.x) * gauss_1d(k, v.y, pm.position.y);
    return s;
}

double fp_value(const Field2D& initial, double t, Vec2 v)
{
    const auto k = FpKernelParams::at(t);
    const auto& g = initial.grid();
    const std::size_t n = g.cells();
    std::vector<double> ax(n), ay(n);
    for (std::size_t j = 0; j < n; ++j) {
        ax[j] = cell_weight(k, v.x, g.edge(j), g.edge(j + 1));
        ay[j] = cell_weight(k, v.y, g.edge(j), g.edge(j + 1));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (ax[i] == 0.0)
            continue;
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row += initial(i, j) * ay[j];
        s += ax[i] * row;
    }
    return s;
}

Field2D fp_propagate_2d(const Field2D& initial, double t)
{
    if (small_time_guard(t, "fp_propagate_2d"))
        return initial;
    require_time(t, "fp_propagate_2d");
    const auto k = FpKernelParams::at(t);
    const auto& g = initial.grid();
    const std::size_t n = g.cells();

    // A(i, j): weight of source cell j at output center i (same along x and y).
    std::vector<double> A(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A[i * n + j] = cell_weight(k, g.center(i), g.edge(j), g.edge(j + 1));

    // tmp = A * G0 (contract the x source index), out = tmp * A^T.
    std::vector<double> tmp(n * n, 0.0);
#pragma omp parallel for
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double a = A[i * n + j];
            if (a == 0.0)
                continue;
            for (std::size_t l = 0; l < n; ++l)
                tmp[i * n + l] += a * initial(j, l);
        }
    Field2D out(g);
#pragma omp parallel for
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t kk = 0; kk < n; ++kk) {
            double s = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                s += tmp[i * n + l] * A[kk * n + l];
            out(i, kk) = s;
        }
    return out;
}

Field2D fp_propagate_2d(std::span<const PointMass> masses, const Grid2D& grid, double t)
{
    require_time(t, "fp_propagate_2d");
    for (const auto& pm : masses)
        if (!(pm.mass >= 0.0))
            throw std::invalid_argument("fp_propagate_2d: point masses must be non-negative");
    return Field2D::sample(grid, [&](double x, double y) { return fp_value(masses, t, Vec2{x, y}); });
}

RadialProfile fp_propagate_radial(const RadialProfile& psi0, double t)
{
    if (psi0.kind() != ProfileKind::fp)
        throw std::invalid_argument("fp_propagate_radial: expected an fp-side profile");
    if (small_time_guard(t, "fp_propagate_radial"))
        return psi0;
    require_time(t, "fp_propagate_radial");

    const auto k = FpKernelParams::at(t);
    const auto& grid = psi0.grid();
    const auto w = grid.weights();
    const auto& src = psi0.values();
    const std::size_t n = grid.size();
    const double window = std::sqrt(2.0 * k.theta * kernel_log_cutoff);
    const double inv_theta = 1.0 / k.theta;
    const double atom = psi0.atom();

    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 1; i < n; ++i) {
        const double r = grid[i];
        // |r - e^{-t} s| <= window
        const double s_lo = (r - window) / k.decay;
        const double s_hi = (r + window) / k.decay;
        const std::size_t j0 = s_lo <= 0.0 ? 0 : grid.locate(s_lo);
        const std::size_t j1 = s_hi >= grid.r_max() ? n - 1 : grid.locate(s_hi) + 1;
        double sum = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) {
            if (src[j] == 0.0)
                continue;
            const double s = grid[j];
            const double d = r - k.decay * s;
            sum += w[j] * src[j] * std::exp(-0.5 * d * d * inv_theta)
                   * bessel_i0_scaled(r * s * k.decay * inv_theta);
        }
        sum *= inv_theta;
        if (atom > 0.0)
            sum += atom * inv_theta * std::exp(-0.5 * r * r * inv_theta);
        out[i] = r * sum;
    }
    return RadialProfile(grid, std::move(out), 0.0, ProfileKind::fp);
}

double LpBoundReport::max_ratio_same_p() const
{
    double m = 0.0;
    for (const auto& r : rows)
        if (r.ratio_same_p)
            m = std::max(m, *r.ratio_same_p);
    return m;
}

double LpBoundReport::max_ratio_from_l1() const
{
    double m = 0.0;
    for (const auto& r : rows)
        m = std::max(m, r.ratio_from_l1);
    return m;
}

LpBoundReport check_lp_bounds(const RadialProfile& g0, std::span<const double> times,
                              std::span<const RadialProfile> trajectory, double p, double ell)
{
    if (times.size() != trajectory.size())
        throw std::invalid_argument("check_lp_bounds: times and trajectory differ in length");
    const double exponent = std::isinf(p) ? 1.0 : (p - 1.0) / p;
    const double n0_p = lp_ell_norm(g0, p, ell);
    const double n0_1 = lp_ell_norm(g0, 1.0, ell);

    LpBoundReport rep{p, ell, {}};
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        require_time(t, "check_lp_bounds");
        LpBoundRow row{t, lp_ell_norm(trajectory[k], p, ell), std::nullopt, 0.0};
        if (std::isfinite(n0_p))
            row.ratio_same_p = row.norm / (std::exp(2.0 * exponent * t) * n0_p);
        row.ratio_from_l1 = row.norm / (std::pow(1.0 / -std::expm1(-2.0 * t), exponent) * n0_1);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace befp
