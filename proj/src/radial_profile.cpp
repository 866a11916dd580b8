#include "befp/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace befp {

std::string to_string(ProfileKind kind)
{
    return kind == ProfileKind::befp ? "befp" : "fp";
}

ProfileKind profile_kind_from_string(const std::string& s)
{
    if (s == "befp")
        return ProfileKind::befp;
    if (s == "fp")
        return ProfileKind::fp;
    throw std::invalid_argument("unknown profile kind '" + s + "' (expected befp or fp)");
}

RadialProfile::RadialProfile(RadialGrid grid, std::vector<double> values, double atom, ProfileKind kind)
    : grid_(std::move(grid))
    , values_(std::move(values))
    , atom_(atom)
    , kind_(kind)
{
    if (values_.size() != grid_.size())
        throw std::invalid_argument("RadialProfile: value count does not match the grid");
    if (!(atom_ >= 0.0) || !std::isfinite(atom_))
        throw std::invalid_argument("RadialProfile: atom must be finite and non-negative");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
            throw std::invalid_argument("RadialProfile: negative or non-finite value at node "
                                        + std::to_string(i));
    // r * density vanishes at the origin for a bounded density.
    values_[0] = 0.0;
}

RadialProfile RadialProfile::from_density(RadialGrid grid, const std::function<double(double)>& density,
                                          ProfileKind kind, double atom)
{
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = grid[i] * density(grid[i]);
    return RadialProfile(std::move(grid), std::move(v), atom, kind);
}

RadialProfile RadialProfile::zero(RadialGrid grid, ProfileKind kind)
{
    std::vector<double> v(grid.size(), 0.0);
    return RadialProfile(std::move(grid), std::move(v), 0.0, kind);
}

double RadialProfile::density_at_origin() const
{
    // density = d0 + d2 r^2 + d4 r^4 + O(r^6): Lagrange in s = r^2 through nodes 1..3.
    double s[3], d[3];
    for (std::size_t k = 0; k < 3; ++k) {
        s[k] = grid_[k + 1] * grid_[k + 1];
        d[k] = values_[k + 1] / grid_[k + 1];
    }
    double result = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
        double w = 1.0;
        for (std::size_t b = 0; b < 3; ++b)
            if (b != a)
                w *= s[b] / (s[b] - s[a]);
        result += w * d[a];
    }
    return result;
}

std::vector<double> RadialProfile::density() const
{
    std::vector<double> d(values_.size());
    d[0] = density_at_origin();
    for (std::size_t i = 1; i < d.size(); ++i)
        d[i] = values_[i] / grid_[i];
    return d;
}

double RadialProfile::density_at(double r) const
{
    r = std::abs(r);
    if (r > grid_.r_max())
        return 0.0;
    const std::size_t n = grid_.size();
    const std::size_t k = grid_.locate(r);
    // Four-point stencil k-1..k+2, reflected across the origin.
    auto node = [&](long j) -> double { return j < 0 ? -grid_[static_cast<std::size_t>(-j)] : grid_[static_cast<std::size_t>(j)]; };
    auto dens = [&](long j) -> double {
        const std::size_t a = static_cast<std::size_t>(j < 0 ? -j : j);
        return a == 0 ? density_at_origin() : values_[a] / grid_[a];
    };
    long lo = static_cast<long>(k) - 1;
    if (lo + 3 > static_cast<long>(n) - 1)
        lo = static_cast<long>(n) - 4;
    double result = 0.0;
    for (long a = lo; a < lo + 4; ++a) {
        double w = 1.0;
        for (long b = lo; b < lo + 4; ++b)
            if (b != a)
                w *= (r - node(b)) / (node(a) - node(b));
        result += w * dens(a);
    }
    return std::max(result, 0.0);
}

double RadialProfile::mass() const
{
    return 2.0 * M_PI * (atom_ + grid_.integrate(values_));
}

double RadialProfile::max_value() const
{
    return *std::max_element(values_.begin(), values_.end());
}

CumulativeProfile cumulate(const RadialProfile& p)
{
    CumulativeProfile c{p.grid(), p.grid().running_integral(p.values()), p.kind()};
    for (double& v : c.values)
        v += p.atom();
    return c;
}

double l1_distance(const RadialProfile& a, const RadialProfile& b)
{
    if (!a.grid().same_nodes(b.grid()))
        throw std::invalid_argument("l1_distance: profiles live on different grids");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = std::abs(a.values()[i] - b.values()[i]);
    return 2.0 * M_PI * (std::abs(a.atom() - b.atom()) + a.grid().integrate(diff));
}

void write_profile_csv(std::ostream& os, const RadialProfile& p)
{
    os << std::setprecision(17);
    os << "# atom=" << p.atom() << " kind=" << to_string(p.kind()) << '\n';
    os << "r,value\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << p.grid()[i] << ',' << p.values()[i] << '\n';
}

void write_profile_csv(const std::string& path, const RadialProfile& p)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_profile_csv(os, p);
}

RadialProfile read_profile_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("profile csv: missing '# atom=... kind=...' header");
    double atom = -1.0;
    std::string kind;
    {
        std::istringstream hs(line.substr(2));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("profile csv: malformed header token '" + tok + "'");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "atom")
                atom = std::stod(val);
            else if (key == "kind")
                kind = val;
            else
                throw std::runtime_error("profile csv: unknown header key '" + key + "'");
        }
    }
    if (atom < 0.0 || kind.empty())
        throw std::runtime_error("profile csv: header must define atom and kind");

    std::vector<double> r, v;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line == "r,value")
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("profile csv: expected 'r,value' row, got '" + line + "'");
        r.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    return RadialProfile(RadialGrid(std::move(r)), std::move(v), atom, profile_kind_from_string(kind));
}

RadialProfile read_profile_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    return read_profile_csv(is);
}

}  // namespace befp
