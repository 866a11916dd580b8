#include "befp/runner.hpp"

#include "befp/diagnostics.hpp"
#include "befp/equilibria.hpp"
#include "befp/fp_exact.hpp"
#include "befp/numeric2d.hpp"
#include "befp/radial_solver.hpp"
#include "befp/transform.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;

namespace befp {

namespace {

constexpr double two_pi = 2.0 * M_PI;

RadialGrid radial_grid(const ExperimentConfig& cfg, double min_rmax = 0.0)
{
    return RadialGrid::uniform(std::max(cfg.radial_rmax, min_rmax), cfg.radial_n);
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + path.string());
    os << text;
}

template <class F>
void write_with(const fs::path& path, F&& writer)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + path.string());
    writer(os);
}

std::string fmt(double v, int precision = 6)
{
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

Field2D scaled(Field2D f, double mass)
{
    const double m = f.mass();
    if (!(m > 0.0))
        throw std::domain_error("initial field has zero mass on this grid");
    for (double& v : f.values())
        v *= mass / m;
    return f;
}

double gaussian(double dx, double dy, double width)
{
    return std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
}

/// Fit over times >= 1 when at least four remain, else over everything.
DecayFit late_decay_fit(const std::vector<std::pair<double, double>>& history)
{
    std::vector<std::pair<double, double>> late;
    for (const auto& p : history)
        if (p.first >= 1.0)
            late.push_back(p);
    return fit_decay_rate(late.size() >= 4 ? late : history);
}

void append_fit(std::ostream& os, const std::vector<std::pair<double, double>>& history)
{
    try {
        const auto fit = late_decay_fit(history);
        os << "decay slope (log L1 distance vs t): " << fmt(fit.slope) << "  r^2 " << fmt(fit.r2, 8) << "  points "
           << fit.points_used << "\n";
    } catch (const std::exception& e) {
        os << "decay slope: not available (" << e.what() << ")\n";
    }
}

std::string run_equilibrium(const ExperimentConfig& cfg)
{
    const fs::path out(cfg.out);
    const double beta = cfg.resolved_beta();
    const auto grid = radial_grid(cfg);
    const auto f = initial_profile(initial::Equilibrium{beta}, grid);
    write_profile_csv((out / "equilibrium.csv").string(), f);
    const auto rep = ck_bound(f, beta);
    write_file(out / "diagnostics.json", to_json(rep) + "\n");

    std::ostringstream s;
    s << std::setprecision(12);
    s << "beta: " << beta << "\n"
      << "mass (closed form): " << mass_from_beta(beta) << "\n"
      << "mass (quadrature): " << f.mass() << "\n"
      << "fp mass 2 pi / (beta - 1): " << two_pi / (beta - 1.0) << "\n"
      << "sup f = 1 / (beta - 1): " << 1.0 / (beta - 1.0) << "\n"
      << "entropy: " << rep.H << "\n"
      << "dissipation: " << rep.D.value_or(std::nan("")) << "\n"
      << "ck constant: " << rep.ck_constant << "\n";
    return s.str();
}

std::string run_radial(const ExperimentConfig& cfg)
{
    const fs::path out(cfg.out);
    const auto grid = radial_grid(cfg);
    const auto f0 = make_radial_initial(cfg, grid);
    const auto traj = solve_radial_exact(f0, cfg.times);

    write_profile_csv((out / "initial.csv").string(), f0);
    write_with(out / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, traj); });
    write_with(out / "fp_trajectory.csv", [&](std::ostream& os) {
        os << std::setprecision(17) << "t,r,value\n";
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const auto& p = traj.fp_snapshots[k];
            for (std::size_t i = 0; i < p.size(); ++i)
                os << traj.times[k] << ',' << grid[i] << ',' << p.values()[i] << '\n';
        }
    });
    write_with(out / "diagnostics.csv", [&](std::ostream& os) { write_diagnostics_csv(os, traj); });

    const double m = traj.initial_mass;
    const double M = mass_M_from_m(m);
    double worst_mass = 0.0, worst_ck = std::numeric_limits<double>::infinity();
    std::size_t ck_violations = 0, sandwich_bad = 0;
    std::string first_sandwich;
    auto reports = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& f = traj.snapshots[k];
        worst_mass = std::max(worst_mass, std::abs(f.mass() - m) / m);
        auto entry = nlohmann::ordered_json::parse(to_json(ck_bound(f, traj.beta_eq)));
        const double margin = entry["ck_lhs"].get<double>() - entry["ck_rhs"].get<double>();
        worst_ck = std::min(worst_ck, margin);
        ck_violations += margin < 0.0 ? 1 : 0;
        nlohmann::ordered_json row;
        row["t"] = traj.times[k];
        row.update(entry);
        reports.push_back(row);

        const auto sw = sandwich_check(f, traj.fp_snapshots[k], M, m);
        if (!sw.ok() && sandwich_bad++ == 0)
            first_sandwich = "t = " + fmt(traj.times[k]) + ": " + sw.describe();
    }
    write_file(out / "diagnostics.json", reports.dump(2) + "\n");

    std::ostringstream s;
    s << std::setprecision(12);
    s << "initial mass m: " << m << "\n"
      << "fp mass M: " << M << "\n"
      << "equilibrium beta: " << traj.beta_eq << "\n"
      << "max relative mass deviation: " << fmt(worst_mass) << "\n";
    append_fit(s, decay_history(traj, traj.beta_eq));
    s << "ck margin (min of lhs - rhs): " << fmt(worst_ck) << "  violations " << ck_violations << "\n";
    if (sandwich_bad == 0)
        s << "sandwich bound: holds at every snapshot\n";
    else
        s << "sandwich bound: violated at " << sandwich_bad << " snapshots; first " << first_sandwich << "\n";
    if (cfg.ic == InitialKind::fundamental) {
        double worst = 0.0;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const double t = traj.times[k];
            const auto exact = RadialProfile::from_density(
                grid, [t](double r) { return befp_fundamental(t, r); }, ProfileKind::befp);
            worst = std::max(worst, l1_distance(traj.snapshots[k], exact));
        }
        s << "max L1 error against the closed form: " << fmt(worst) << "\n";
    }
    return s.str();
}

std::string run_numeric(const ExperimentConfig& cfg)
{
    const fs::path out(cfg.out);
    const Grid2D grid(cfg.grid_l, cfg.grid_n);
    const auto f0 = make_field_initial(cfg, grid);
    const auto traj = solve_numeric(f0, cfg.resolved_t_end(), cfg.dt, cfg.times);

    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::ostringstream name;
        name << "snapshot_" << std::setw(3) << std::setfill('0') << k;
        write_field_csv((out / (name.str() + ".csv")).string(), traj.snapshots[k]);
        write_field_binary((out / (name.str() + ".bin")).string(), traj.snapshots[k], traj.times[k]);
    }
    write_with(out / "diagnostics.csv", [&](std::ostream& os) {
        os << std::setprecision(17) << "t,mass,entropy,l1_to_eq,sup\n";
        for (const auto& d : traj.diagnostics)
            os << d.t << ',' << d.mass << ',' << d.entropy << ',' << d.l1_to_eq << ',' << d.sup << '\n';
    });

    double entropy_rise = 0.0, min_cell = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> history;
    for (std::size_t k = 0; k < traj.diagnostics.size(); ++k) {
        const auto& d = traj.diagnostics[k];
        if (k > 0)
            entropy_rise = std::max(entropy_rise, d.entropy - traj.diagnostics[k - 1].entropy);
        min_cell = std::min(min_cell, traj.snapshots[k].min_value());
        history.emplace_back(d.t, d.l1_to_eq);
    }
    double boundary = 0.0;
    if (!traj.snapshots.empty()) {
        const auto& f = traj.snapshots.back();
        const std::size_t n = f.cells();
        for (std::size_t i = 0; i < n; ++i)
            boundary = std::max({boundary, f(i, 0), f(i, n - 1), f(0, i), f(n - 1, i)});
    }

    std::ostringstream s;
    s << std::setprecision(12);
    s << "grid: n = " << grid.cells() << ", L = " << grid.half_width() << ", h = " << grid.spacing() << "\n"
      << "initial mass: " << traj.initial_mass << "\n"
      << "equilibrium beta: " << traj.beta_eq << "\n"
      << "steps: " << traj.steps << "\n"
      << "max relative mass drift: " << fmt(traj.max_relative_mass_drift) << "\n"
      << "min cell value: " << fmt(min_cell) << "\n"
      << "max entropy increase between snapshots: " << fmt(entropy_rise) << "\n"
      << "max boundary cell at final time: " << fmt(boundary) << "\n";
    append_fit(s, history);
    return s.str();
}

std::string run_convergence(const ExperimentConfig& cfg)
{
    const auto rows = convergence_study(cfg);
    write_with(fs::path(cfg.out) / "convergence.csv", [&](std::ostream& os) {
        os << std::setprecision(17) << "n,h,l1_error,order\n";
        for (const auto& r : rows)
            os << r.n << ',' << r.h << ',' << r.l1_error << ',' << (r.order ? fmt(*r.order, 17) : "") << '\n';
    });
    std::ostringstream s;
    s << "t = " << cfg.resolved_t_end() << "\n";
    double min_order = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        s << "n = " << std::setw(4) << r.n << "  L1 error " << fmt(r.l1_error);
        if (r.order) {
            s << "  observed order " << fmt(*r.order, 4);
            min_order = std::min(min_order, *r.order);
        }
        s << "\n";
    }
    s << "minimum observed order: " << fmt(min_order, 4) << "\n";
    return s.str();
}

}  // namespace

RadialProfile random_radial_profile(const RadialGrid& grid, std::uint64_t seed, double mass)
{
    UniformSource u(seed);
    const double sigma = u.next(0.6, 1.5);
    const double a0 = u.next(0.1, 1.0), a1 = u.next(0.0, 1.0), a2 = u.next(0.0, 0.5);
    auto p = RadialProfile::from_density(
        grid,
        [=](double r) {
            const double r2 = r * r;
            return (a0 + a1 * r2 + a2 * r2 * r2) * std::exp(-r2 / (2.0 * sigma * sigma));
        },
        ProfileKind::befp);
    auto v = p.values();
    const double scale = mass / p.mass();
    for (double& x : v)
        x *= scale;
    return RadialProfile(grid, std::move(v), 0.0, ProfileKind::befp);
}

RadialProfile make_radial_initial(const ExperimentConfig& cfg, const RadialGrid& grid)
{
    switch (cfg.ic) {
    case InitialKind::dirac: return initial_profile(initial::Dirac{cfg.mass}, grid);
    case InitialKind::fundamental: return initial_profile(initial::Dirac{befp_fundamental_mass()}, grid);
    case InitialKind::equilibrium: return initial_profile(initial::Equilibrium{cfg.resolved_beta()}, grid);
    case InitialKind::gaussian: return initial_profile(initial::GaussianBump{0.0, 1.0, cfg.mass}, grid);
    case InitialKind::random: return random_radial_profile(grid, cfg.seed, cfg.mass);
    case InitialKind::two_bump: break;
    }
    throw ConfigError("ic", "'" + to_string(cfg.ic) + "' has no radial form");
}

Field2D make_field_initial(const ExperimentConfig& cfg, const Grid2D& grid)
{
    switch (cfg.ic) {
    case InitialKind::equilibrium: {
        const double beta = cfg.resolved_beta();
        return Field2D::sample(grid, [beta](double x, double y) { return bose_einstein(beta, std::hypot(x, y)); });
    }
    case InitialKind::gaussian:
        return scaled(Field2D::sample(grid, [](double x, double y) { return gaussian(x, y, 1.0); }), cfg.mass);
    case InitialKind::two_bump:
        return scaled(Field2D::sample(grid,
                                      [](double x, double y) {
                                          return gaussian(x - 2.0, y - 1.0, 0.7) + gaussian(x + 2.0, y + 1.5, 0.7);
                                      }),
                      cfg.mass);
    case InitialKind::random: {
        UniformSource u(cfg.seed);
        struct Bump
        {
            double x, y, w, a;
        };
        std::vector<Bump> bumps;
        for (int k = 0; k < 3; ++k)
            bumps.push_back({u.next(-3.0, 3.0), u.next(-3.0, 3.0), u.next(0.5, 1.2), u.next(0.2, 1.0)});
        return scaled(Field2D::sample(grid,
                                      [&](double x, double y) {
                                          double s = 0.0;
                                          for (const auto& b : bumps)
                                              s += b.a * gaussian(x - b.x, y - b.y, b.w);
                                          return s;
                                      }),
                      cfg.mass);
    }
    case InitialKind::dirac:
    case InitialKind::fundamental: break;
    }
    throw ConfigError("ic", "'" + to_string(cfg.ic) + "' cannot be sampled on a 2D grid");
}

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg)
{
    const double t = cfg.resolved_t_end();
    const auto rgrid = radial_grid(cfg, std::sqrt(2.0) * cfg.grid_l + 1.0);
    const double T[] = {t};
    const auto r0 = make_radial_initial(cfg, rgrid);
    const auto exact = solve_radial_exact(r0, T).snapshots.front();

    std::vector<ConvergenceRow> rows;
    for (std::size_t level = 0; level < 3; ++level) {
        const Grid2D grid(cfg.grid_l, cfg.grid_n << level);
        const auto start = Field2D::sample(grid, [&](double x, double y) { return r0.density_at(std::hypot(x, y)); });
        const auto traj = solve_numeric(start, t, cfg.dt, T);
        const auto ref = Field2D::sample(grid, [&](double x, double y) { return exact.density_at(std::hypot(x, y)); });
        ConvergenceRow row{grid.cells(), grid.spacing(), l1_distance(traj.snapshots.front(), ref), std::nullopt};
        if (!rows.empty())
            row.order = std::log2(rows.back().l1_error / row.l1_error);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ValidationCheck> run_validation_suite(const ExperimentConfig& cfg)
{
    std::vector<ValidationCheck> checks;
    auto add = [&](std::string name, double value, double threshold) {
        checks.push_back({std::move(name), value, threshold, value <= threshold});
    };
    const auto grid = radial_grid(cfg);

    // Round trips and the mass relation on random FP-side profiles.
    {
        UniformSource u(cfg.seed);
        double worst_trip = 0.0, worst_mass = 0.0;
        for (int k = 0; k < 10; ++k) {
            const auto seeded = random_radial_profile(grid, cfg.seed * 1000 + static_cast<std::uint64_t>(k),
                                                      u.next(0.05, 1.0) * 4.0 * M_PI);
            const RadialProfile g(grid, seeded.values(), 0.0, ProfileKind::fp);
            const auto f = lambda_forward(g);
            const auto back = lambda_inverse(f);
            for (std::size_t i = 0; i < g.size(); ++i)
                worst_trip = std::max(worst_trip, std::abs(back.values()[i] - g.values()[i]));
            worst_mass = std::max(worst_mass, std::abs(f.mass() - mass_f_from_M(g.mass())));
        }
        add("round trip, max nodewise error", worst_trip, 1e-10);
        add("mass relation m = 2 pi log(1 + M / 2 pi)", worst_mass, 1e-8);
    }

    // Maxwellians map onto Bose-Einstein equilibria.
    {
        double worst = 0.0;
        for (double M : {0.1, 1.0, two_pi, 50.0}) {
            const auto g = RadialProfile::from_density(
                grid, [M](double r) { return fp_maxwellian(M, r); }, ProfileKind::fp);
            const auto f = lambda_forward(g);
            const double beta = two_pi / M + 1.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                worst = std::max(worst, std::abs(f.values()[i] - grid[i] * bose_einstein(beta, grid[i])));
        }
        add("Maxwellian maps to equilibrium, max nodewise error", worst, 1e-9);
    }

    // Equilibria are stationary under the exact pipeline.
    {
        const double beta = 2.0;
        const auto f = initial_profile(initial::Equilibrium{beta}, grid);
        const double T[] = {1.0};
        const auto traj = solve_radial_exact(f, T);
        add("equilibrium stationary, L1 drift at t = 1", l1_distance(traj.snapshots.front(), f), cfg.tol);
    }

    // Kernel normalization and the two kernel forms.
    {
        double worst = 0.0;
        for (double t : {0.5, 2.0})
            for (double s : {0.0, 1.0, 3.0}) {
                std::vector<double> vals(grid.size());
                for (std::size_t i = 0; i < grid.size(); ++i)
                    vals[i] = grid[i] * fp_radial_kernel(t, grid[i], s);
                worst = std::max(worst, std::abs(grid.integrate(vals) - 1.0));
            }
        add("radial kernel integrates to 1", worst, 1e-10);

        const Grid2D g2(cfg.grid_l, cfg.grid_n);
        const PointMass pm[] = {{{1.0, -0.5}, 1.0}};
        const auto field = fp_propagate_2d(pm, g2, 1.0);
        add("2D kernel mass on the grid", std::abs(field.mass() - 1.0), 1e-10);

        double diff = 0.0;
        for (double t : {0.1, 1.0, 3.0})
            for (const Vec2 v : {Vec2{0.0, 0.0}, Vec2{1.0, -0.5}, Vec2{2.5, 1.5}})
                for (const Vec2 w : {Vec2{0.0, 0.0}, Vec2{-1.0, 2.0}}) {
                    const double a = fp_kernel(t, v, w), b = fp_kernel_literal(t, v, w);
                    diff = std::max(diff, std::abs(a - b) / std::max(a, 1e-300));
                }
        add("kernel forms agree (relative)", diff, 1e-12);
    }

    // Dirac start against the closed form, mass and the sandwich bound.
    {
        const double T[] = {0.25, 1.0, 4.0};
        const double m = befp_fundamental_mass();
        const auto traj = solve_radial_exact(initial::Dirac{m}, grid, T);
        double worst = 0.0, mass_dev = 0.0;
        std::size_t violations = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double t = T[k];
            const auto exact = RadialProfile::from_density(
                grid, [t](double r) { return befp_fundamental(t, r); }, ProfileKind::befp);
            worst = std::max(worst, l1_distance(traj.snapshots[k], exact));
            mass_dev = std::max(mass_dev, std::abs(traj.snapshots[k].mass() - m) / m);
            violations += sandwich_check(traj.snapshots[k], traj.fp_snapshots[k], 1.0, m).violations.size();
        }
        add("Dirac start vs closed form, L1", worst, 1e-7);
        add("Dirac start mass conservation (relative)", mass_dev, cfg.tol);
        add("sandwich bound violations", static_cast<double>(violations), 0.0);
    }
    return checks;
}

std::string manifest_json(const ExperimentConfig& cfg)
{
    nlohmann::ordered_json j;
    j["tool"] = tool_name;
    j["version"] = tool_version;
    nlohmann::ordered_json c;
    c["mode"] = to_string(cfg.mode);
    c["ic"] = to_string(cfg.ic);
    c["mass"] = cfg.mass;
    c["beta"] = cfg.resolved_beta();
    c["grid-n"] = cfg.grid_n;
    c["grid-l"] = cfg.grid_l;
    c["radial-n"] = cfg.radial_n;
    c["radial-rmax"] = cfg.radial_rmax;
    c["times"] = cfg.times;
    c["dt"] = cfg.dt;
    c["t-end"] = cfg.resolved_t_end();
    c["out"] = cfg.out;
    c["seed"] = cfg.seed;
    c["tol"] = cfg.tol;
    j["config"] = c;
    return j.dump(2) + "\n";
}

int run(const ExperimentConfig& cfg, std::ostream& report)
{
    try {
        const fs::path out(cfg.out);
        fs::create_directories(out);
        write_file(out / "manifest.json", manifest_json(cfg));

        std::string body;
        int code = exit_ok;
        switch (cfg.mode) {
        case Mode::equilibrium: body = run_equilibrium(cfg); break;
        case Mode::radial_exact: body = run_radial(cfg); break;
        case Mode::numeric_2d: body = run_numeric(cfg); break;
        case Mode::convergence_study: body = run_convergence(cfg); break;
        case Mode::validate: {
            const auto checks = run_validation_suite(cfg);
            std::ostringstream s;
            std::ostringstream csv;
            csv << std::setprecision(17) << "check,value,threshold,passed\n";
            for (const auto& c : checks) {
                s << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(52) << c.name << std::right
                  << std::setw(14) << fmt(c.value, 4) << "  <= " << fmt(c.threshold, 3) << "\n";
                csv << '"' << c.name << "\"," << c.value << ',' << c.threshold << ',' << (c.passed ? 1 : 0)
                    << '\n';
                if (!c.passed)
                    code = exit_validation_failure;
            }
            write_file(out / "validation.csv", csv.str());
            body = s.str();
            break;
        }
        }
        const std::string summary = "mode: " + to_string(cfg.mode) + "\nic: " + to_string(cfg.ic) + "\n" + body;
        write_file(out / "summary.txt", summary);
        report << summary;
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const TimeStepTooLarge& e) {
        std::cerr << "error: config field 'dt': " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return exit_numerical_abort;
    }
}

}  // namespace befp
