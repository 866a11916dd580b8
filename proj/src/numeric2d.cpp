#include "befp/numeric2d.hpp"

#include "befp/diagnostics.hpp"
#include "befp/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace befp {

namespace {

std::string too_large_message(double dt, double bound)
{
    std::ostringstream os;
    os.precision(6);
    os << "time step " << dt << " exceeds the stability bound " << bound;
    return os.str();
}

std::string negative_message(double t, std::size_t i, std::size_t j, double v)
{
    std::ostringstream os;
    os.precision(6);
    os << "negative density " << v << " in cell (" << i << ", " << j << ") at t = " << t;
    return os.str();
}

inline double fitted_flux(double a, double b, double p, double h)
{
    const double bp = bernoulli(p);
    return (bp * a - (bp + p) * b) / h;  // B(-p) = B(p) + p
}

/// Equilibrium edge mean given log a, log b, log1p a, log1p b.
inline double equilibrium_mean(double a, double b, double la, double lb, double l1a, double l1b)
{
    if (a <= 0.0 || b <= 0.0)
        return 0.0;
    if (std::abs(b - a) < 1e-2 * std::min(a, b))
        return edge_average(a, b, EdgeAverage::equilibrium);
    const double dlog_f = lb - la;
    return dlog_f / (dlog_f - (l1b - l1a)) - 1.0;
}

}  // namespace

double bernoulli(double x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - 0.5 * x;
    return x / std::expm1(x);
}

double edge_average(double a, double b, EdgeAverage avg)
{
    if (avg == EdgeAverage::arithmetic || a == b)
        return 0.5 * (a + b);
    if (a <= 0.0 || b <= 0.0)
        return 0.0;
    const double dlog_f = std::log1p((b - a) / a);
    const double dlog_z = dlog_f - std::log1p((b - a) / (1.0 + a));
    return dlog_f / dlog_z - 1.0;
}

double EdgeFluxes::max_abs() const
{
    double m = 0.0;
    for (double v : fx)
        m = std::max(m, std::abs(v));
    for (double v : fy)
        m = std::max(m, std::abs(v));
    return m;
}

EdgeFluxes assemble_flux(const Field2D& field, EdgeAverage avg, bool drift)
{
    const auto& g = field.grid();
    const std::size_t n = g.cells();
    const double h = g.spacing();
    EdgeFluxes fl{n, std::vector<double>((n + 1) * n, 0.0), std::vector<double>(n * (n + 1), 0.0)};
    const auto& v = field.values();
    const long nn = static_cast<long>(n);
    if (!drift) {
#pragma omp parallel for
        for (long li = 0; li < nn; ++li) {
            const auto i = static_cast<std::size_t>(li);
            for (std::size_t j = 0; i >= 1 && j < n; ++j)
                fl.fx[i * n + j] = (v[(i - 1) * n + j] - v[i * n + j]) / h;
            for (std::size_t e = 1; e < n; ++e)
                fl.fy[i * (n + 1) + e] = (v[i * n + e - 1] - v[i * n + e]) / h;
        }
        return fl;
    }

    const bool eq = avg == EdgeAverage::equilibrium;
    std::vector<double> lf, l1p;
    if (eq) {
        lf.resize(v.size());
        l1p.resize(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            lf[k] = v[k] > 0.0 ? std::log(v[k]) : 0.0;
            l1p[k] = std::log1p(std::max(v[k], 0.0));
        }
    }
    auto mean = [&](std::size_t ka, std::size_t kb) {
        return eq ? equilibrium_mean(v[ka], v[kb], lf[ka], lf[kb], l1p[ka], l1p[kb]) : 0.5 * (v[ka] + v[kb]);
    };
#pragma omp parallel for
    for (long li = 0; li < nn; ++li) {
        const auto i = static_cast<std::size_t>(li);
        // x-edge i lies between cells i - 1 and i
        if (i >= 1) {
            const double xe = g.edge(i);
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t ka = (i - 1) * n + j, kb = i * n + j;
                fl.fx[i * n + j] = fitted_flux(v[ka], v[kb], xe * h * (1.0 + mean(ka, kb)), h);
            }
        }
        for (std::size_t e = 1; e < n; ++e) {
            const std::size_t ka = i * n + e - 1, kb = i * n + e;
            fl.fy[i * (n + 1) + e] = fitted_flux(v[ka], v[kb], g.edge(e) * h * (1.0 + mean(ka, kb)), h);
        }
    }
    return fl;
}

double stable_dt(const Field2D& field)
{
    const auto& g = field.grid();
    const double h = g.spacing();
    const double vmax = std::sqrt(2.0) * g.half_width();
    return h * h / (4.0 + 2.0 * h * vmax * (1.0 + std::max(0.0, field.max_value())));
}

TimeStepTooLarge::TimeStepTooLarge(double dt, double bound)
    : std::invalid_argument(too_large_message(dt, bound)), dt_(dt), bound_(bound)
{
}

NegativeDensity::NegativeDensity(double time, std::size_t i, std::size_t j, double value)
    : std::runtime_error(negative_message(time, i, j, value)), time_(time), i_(i), j_(j), value_(value)
{
}

namespace {

Field2D advance(const Field2D& field, double dt, EdgeAverage avg)
{
    const auto fl = assemble_flux(field, avg);
    const std::size_t n = field.cells();
    const double c = dt / field.grid().spacing();
    Field2D out = field;
    auto& o = out.values();
    const long nn = static_cast<long>(n);
#pragma omp parallel for
    for (long li = 0; li < nn; ++li) {
        const auto i = static_cast<std::size_t>(li);
        for (std::size_t j = 0; j < n; ++j)
            o[i * n + j] += c * (fl.x(i, j) - fl.x(i + 1, j) + fl.y(i, j) - fl.y(i, j + 1));
    }
    return out;
}

}  // namespace

Field2D step(const Field2D& field, double dt, EdgeAverage avg)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be positive");
    const double bound = stable_dt(field);
    if (dt > bound)
        throw TimeStepTooLarge(dt, bound);
    return advance(field, dt, avg);
}

Trajectory2D solve_numeric(const Field2D& f0, double t_end, double dt, std::span<const double> snapshot_times,
                           EdgeAverage avg)
{
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("solve_numeric: t_end must be finite and non-negative");
    for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
        const double t = snapshot_times[k];
        if (!(t >= 0.0) || t > t_end)
            throw std::invalid_argument("solve_numeric: snapshot times must lie in [0, t_end]");
        if (k > 0 && !(t > snapshot_times[k - 1]))
            throw std::invalid_argument("solve_numeric: snapshot times must be strictly increasing");
    }
    if (f0.min_value() < 0.0)
        throw std::invalid_argument("solve_numeric: initial field has negative cells");

    Trajectory2D traj;
    traj.initial_mass = f0.mass();
    traj.beta_eq = traj.initial_mass > 0.0 ? beta_from_mass(traj.initial_mass)
                                           : std::numeric_limits<double>::infinity();
    const bool has_eq = traj.initial_mass > 0.0;

    auto record = [&](const Field2D& f, double t) {
        const double m = f.mass();
        traj.times.push_back(t);
        traj.snapshots.push_back(f);
        traj.diagnostics.push_back({t, m, entropy(f), has_eq ? l1_to_equilibrium(f, traj.beta_eq) : m,
                                    f.max_value()});
        if (has_eq)
            traj.max_relative_mass_drift =
                std::max(traj.max_relative_mass_drift, std::abs(m - traj.initial_mass) / traj.initial_mass);
    };

    Field2D f = f0;
    double t = 0.0;
    const std::size_t n = f.cells();
    for (double target : snapshot_times) {
        while (t < target) {
            const double bound = stable_dt(f);
            double h = dt > 0.0 ? dt : 0.9 * bound;
            if (dt > 0.0 && dt > bound)
                throw TimeStepTooLarge(dt, bound);
            bool last = false;
            if (t + h >= target * (1.0 - 1e-14)) {
                h = target - t;
                last = true;
            }
            f = advance(f, h, avg);
            ++traj.steps;
            t = last ? target : t + h;
            const auto& v = f.values();
            const auto it = std::min_element(v.begin(), v.end());
            if (*it < -1e-12) {
                const auto k = static_cast<std::size_t>(it - v.begin());
                throw NegativeDensity(t, k / n, k % n, *it);
            }
        }
        record(f, t);
    }
    return traj;
}

}  // namespace befp
