#include "befp/diagnostics.hpp"

#include "befp/equilibria.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace befp {

namespace {

constexpr double positivity_floor = 1e-300;
constexpr double inf = std::numeric_limits<double>::infinity();

void require_befp(const RadialProfile& f, const char* where)
{
    if (f.kind() != ProfileKind::befp)
        throw std::invalid_argument(std::string(where) + ": expected a befp-side profile");
}

double weight(double r, double ell)
{
    return ell == 0.0 ? 1.0 : 1.0 + std::pow(r, ell);
}

void require_p(double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_ell_norm: p must be in [1, inf]");
}

std::vector<double> radial_derivative(const RadialGrid& grid, const std::vector<double>& d)
{
    const std::size_t n = d.size();
    std::vector<double> dd(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        dd[i] = (d[i + 1] - d[i - 1]) / (grid[i + 1] - grid[i - 1]);
    const double h = grid[n - 1] - grid[n - 2];
    dd[n - 1] = (3.0 * d[n - 1] - 4.0 * d[n - 2] + d[n - 3]) / (2.0 * h);
    return dd;
}

}  // namespace

double entropy_density(double s, double half_v2)
{
    if (s <= 0.0)
        return 0.0;
    const double eta = s > 1.0 ? -s * std::log1p(1.0 / s) - std::log1p(s)
                               : s * std::log(s) - (1.0 + s) * std::log1p(s);
    return eta + half_v2 * s;
}

double entropy(const RadialProfile& f)
{
    require_befp(f, "entropy");
    const auto d = f.density();
    const auto& g = f.grid();
    std::vector<double> integrand(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        integrand[i] = entropy_density(d[i], 0.5 * g[i] * g[i]) * g[i];
    const double h = 2.0 * M_PI * g.integrate(integrand);
    if (!std::isfinite(h))
        throw std::domain_error("entropy: non-finite value (second moment or data not finite)");
    return h;
}

double entropy(const Field2D& f)
{
    const auto& g = f.grid();
    double s = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i)
        for (std::size_t j = 0; j < g.cells(); ++j) {
            const double x = g.center(i), y = g.center(j);
            s += entropy_density(std::max(f(i, j), 0.0), 0.5 * (x * x + y * y));
        }
    const double h = s * g.cell_area();
    if (!std::isfinite(h))
        throw std::domain_error("entropy: non-finite value");
    return h;
}

double dissipation(const RadialProfile& f)
{
    require_befp(f, "dissipation");
    if (f.atom() > 0.0)
        throw std::invalid_argument("dissipation: undefined for a profile with an atom");
    const auto& g = f.grid();
    const auto d = f.density();
    const auto dd = radial_derivative(g, d);
    std::vector<double> integrand(d.size(), 0.0);
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i] <= positivity_floor)
            continue;
        const double q = d[i] * (1.0 + d[i]);
        const double a = g[i] * q + dd[i];
        integrand[i] = a * a / q * g[i];
    }
    return 2.0 * M_PI * g.integrate(integrand);
}

double dissipation(const Field2D& f)
{
    const auto& g = f.grid();
    const std::size_t n = g.cells();
    const double h = g.spacing();
    auto diff = [&](std::size_t i, std::size_t j, bool along_x) {
        auto at = [&](std::size_t a) { return along_x ? f(a, j) : f(i, a); };
        const std::size_t k = along_x ? i : j;
        if (k == 0)
            return (at(1) - at(0)) / h;
        if (k == n - 1)
            return (at(n - 1) - at(n - 2)) / h;
        return (at(k + 1) - at(k - 1)) / (2.0 * h);
    };
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = f(i, j);
            if (v <= positivity_floor)
                continue;
            const double q = v * (1.0 + v);
            const double ax = g.center(i) * q + diff(i, j, true);
            const double ay = g.center(j) * q + diff(i, j, false);
            s += (ax * ax + ay * ay) / q;
        }
    return s * g.cell_area();
}

double lp_ell_norm(const RadialProfile& f, double p, double ell)
{
    require_p(p);
    const auto d = f.density();
    const auto& g = f.grid();
    if (std::isinf(p)) {
        if (f.atom() > 0.0)
            return inf;
        double m = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            m = std::max(m, weight(g[i], ell) * std::abs(d[i]));
        return m;
    }
    if (f.atom() > 0.0 && p > 1.0)
        return inf;
    std::vector<double> integrand(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        integrand[i] = std::pow(weight(g[i], ell) * std::abs(d[i]), p) * g[i];
    // The atom sits at |v| = 0 where the weight is 1.
    const double total = 2.0 * M_PI * (g.integrate(integrand) + (p == 1.0 ? f.atom() : 0.0));
    return std::pow(total, 1.0 / p);
}

double lp_ell_norm(const Field2D& f, double p, double ell)
{
    require_p(p);
    const auto& g = f.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i)
        for (std::size_t j = 0; j < g.cells(); ++j) {
            const double r = std::hypot(g.center(i), g.center(j));
            const double v = weight(r, ell) * std::abs(f(i, j));
            acc = std::isinf(p) ? std::max(acc, v) : acc + std::pow(v, p);
        }
    return std::isinf(p) ? acc : std::pow(acc * g.cell_area(), 1.0 / p);
}

double l1_to_equilibrium(const RadialProfile& f, double beta)
{
    require_befp(f, "l1_to_equilibrium");
    const auto& g = f.grid();
    std::vector<double> diff(f.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = std::abs(f.values()[i] - g[i] * bose_einstein(beta, g[i]));
    return 2.0 * M_PI * (f.atom() + g.integrate(diff));
}

double l1_to_equilibrium(const Field2D& f, double beta)
{
    const auto& g = f.grid();
    double s = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i)
        for (std::size_t j = 0; j < g.cells(); ++j)
            s += std::abs(f(i, j) - bose_einstein(beta, std::hypot(g.center(i), g.center(j))));
    return s * g.cell_area();
}

double sup_norm(const RadialProfile& f)
{
    if (f.atom() > 0.0)
        return inf;
    const auto d = f.density();
    return *std::max_element(d.begin(), d.end());
}

std::string to_json(const EntropyReport& r)
{
    nlohmann::ordered_json j;
    j["H"] = r.H;
    j["D"] = r.D ? nlohmann::ordered_json(*r.D) : nlohmann::ordered_json(nullptr);
    j["ck_lhs"] = r.ck_lhs;
    j["ck_rhs"] = r.ck_rhs;
    j["ck_constant"] = r.ck_constant;
    j["mass"] = r.mass;
    return j.dump(2);
}

EntropyReport entropy_report_from_json(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    EntropyReport r;
    r.H = j.at("H").get<double>();
    if (!j.at("D").is_null())
        r.D = j.at("D").get<double>();
    r.ck_lhs = j.at("ck_lhs").get<double>();
    r.ck_rhs = j.at("ck_rhs").get<double>();
    r.ck_constant = j.at("ck_constant").get<double>();
    r.mass = j.at("mass").get<double>();
    return r;
}

namespace {

void require_mass_match(double mass, double beta)
{
    const double target = mass_from_beta(beta);
    if (std::abs(mass - target) > 1e-6 * std::max(1.0, target)) {
        std::ostringstream os;
        os.precision(12);
        os << "ck_bound: mass of f (" << mass << ") differs from the mass of f_inf^beta (" << target << ")";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

EntropyReport ck_bound(const RadialProfile& f, double beta, bool with_dissipation)
{
    require_befp(f, "ck_bound");
    EntropyReport r;
    r.mass = f.mass();
    require_mass_match(r.mass, beta);

    const auto eq = RadialProfile::from_density(f.grid(), [beta](double s) { return bose_einstein(beta, s); },
                                                ProfileKind::befp);
    const auto& g = f.grid();
    std::vector<double> occ(g.size());
    for (std::size_t i = 0; i < occ.size(); ++i) {
        const double b = bose_einstein(beta, g[i]);
        occ[i] = b * (1.0 + b) * g[i];
    }
    const double occupancy = 2.0 * M_PI * g.integrate(occ);
    r.ck_constant = 0.25 / (occupancy * occupancy);
    r.H = entropy(f);
    r.ck_lhs = r.H - entropy(eq);
    const double dist = l1_distance(f, eq);
    r.ck_rhs = r.ck_constant * dist * dist;
    if (with_dissipation && f.atom() == 0.0)
        r.D = dissipation(f);
    return r;
}

EntropyReport ck_bound(const Field2D& f, double beta, bool with_dissipation)
{
    EntropyReport r;
    r.mass = f.mass();
    require_mass_match(r.mass, beta);
    const auto& g = f.grid();
    const auto eq = Field2D::sample(g, [beta](double x, double y) { return bose_einstein(beta, std::hypot(x, y)); });
    double occ = 0.0;
    for (double b : eq.values())
        occ += b * (1.0 + b);
    occ *= g.cell_area();
    r.ck_constant = 0.25 / (occ * occ);
    r.H = entropy(f);
    r.ck_lhs = r.H - entropy(eq);
    const double dist = l1_distance(f, eq);
    r.ck_rhs = r.ck_constant * dist * dist;
    if (with_dissipation)
        r.D = dissipation(f);
    return r;
}

DecayFit fit_decay_rate(std::span<const std::pair<double, double>> history)
{
    DecayFit fit;
    std::vector<double> t, y;
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (!(history[k].second > 0.0)) {
            fit.excluded.push_back(k);
            continue;
        }
        t.push_back(history[k].first);
        y.push_back(std::log(history[k].second));
    }
    if (t.size() < 4)
        throw std::invalid_argument("fit_decay_rate: need at least 4 points with positive distance");
    const double n = static_cast<double>(t.size());
    double mt = 0.0, my = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        mt += t[k];
        my += y[k];
    }
    mt /= n;
    my /= n;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        stt += (t[k] - mt) * (t[k] - mt);
        sty += (t[k] - mt) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    if (stt == 0.0)
        throw std::invalid_argument("fit_decay_rate: all times coincide");
    fit.slope = sty / stt;
    fit.intercept = my - fit.slope * mt;
    double ssr = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double e = y[k] - (fit.intercept + fit.slope * t[k]);
        ssr += e * e;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    fit.points_used = t.size();
    return fit;
}

}  // namespace befp
