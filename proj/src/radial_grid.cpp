#include "befp/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace befp {

namespace {

bool detect_uniform(const std::vector<double>& r, double& h)
{
    const std::size_t n = r.size() - 1;
    h = r.back() / static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i)
        if (std::abs((r[i] - r[i - 1]) - h) > 1e-9 * h)
            return false;
    return true;
}

}  // namespace

RadialGrid RadialGrid::uniform(double r_max, std::size_t intervals, Rule rule)
{
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw std::invalid_argument("RadialGrid: r_max must be positive and finite");
    if (intervals < 2)
        throw std::invalid_argument("RadialGrid: need at least 2 intervals");
    std::vector<double> nodes(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
        nodes[i] = r_max * static_cast<double>(i) / static_cast<double>(intervals);
    nodes.back() = r_max;
    return RadialGrid(std::move(nodes), rule);
}

RadialGrid::RadialGrid(std::vector<double> nodes)
    : RadialGrid(std::move(nodes), Rule::gregory)
{
}

RadialGrid::RadialGrid(std::vector<double> nodes, Rule rule)
{
    if (nodes.size() < 3)
        throw std::invalid_argument("RadialGrid: need N >= 2 (at least 3 nodes)");
    if (nodes.front() != 0.0)
        throw std::invalid_argument("RadialGrid: first node must be r = 0");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]) || !std::isfinite(nodes[i]))
            throw std::invalid_argument("RadialGrid: nodes must be strictly increasing and finite (node "
                                        + std::to_string(i) + ")");

    auto d = std::make_shared<Data>();
    d->uniform = detect_uniform(nodes, d->spacing);
    d->rule = (d->uniform && rule == Rule::gregory) ? Rule::gregory : Rule::trapezoid;
    d->nodes = std::move(nodes);
    data_ = d;

    // Full-range weights are the coefficients of Q_N; extract them by
    // pushing unit vectors would be O(N^2), so write them out directly.
    const std::size_t n = d->nodes.size() - 1;
    std::vector<double> w(n + 1, 0.0);
    if (d->rule == Rule::trapezoid) {
        for (std::size_t i = 1; i <= n; ++i) {
            const double hi = d->nodes[i] - d->nodes[i - 1];
            w[i - 1] += 0.5 * hi;
            w[i] += 0.5 * hi;
        }
    } else {
        const double h = d->spacing;
        switch (n) {
        case 2: w = {h / 3, 4 * h / 3, h / 3}; break;
        case 3: w = {3 * h / 8, 9 * h / 8, 9 * h / 8, 3 * h / 8}; break;
        case 4: w = {14 * h / 45, 64 * h / 45, 24 * h / 45, 64 * h / 45, 14 * h / 45}; break;
        default:
            std::fill(w.begin(), w.end(), h);
            w[0] = w[n] = 3.0 * h / 8.0;
            w[1] = w[n - 1] = 7.0 * h / 6.0;
            w[2] = w[n - 2] = 23.0 * h / 24.0;
        }
    }
    d->weights = std::move(w);
}

double RadialGrid::integrate(std::span<const double> f) const
{
    if (f.size() != size())
        throw std::invalid_argument("RadialGrid::integrate: size mismatch");
    double s = 0.0;
    const auto w = weights();
    for (std::size_t i = 0; i < f.size(); ++i)
        s += w[i] * f[i];
    return s;
}

std::vector<double> RadialGrid::running_integral(std::span<const double> f) const
{
    if (f.size() != size())
        throw std::invalid_argument("RadialGrid::running_integral: size mismatch");
    std::vector<double> q(f.size());
    Accumulator acc(*this);
    for (std::size_t i = 0; i < f.size(); ++i)
        q[i] = acc.push(f[i]);
    return q;
}

double RadialGrid::diagonal_weight(std::size_t i) const
{
    if (i == 0)
        return 0.0;
    if (rule() == Rule::trapezoid)
        return 0.5 * (data_->nodes[i] - data_->nodes[i - 1]);
    const double h = spacing();
    switch (i) {
    case 1: return 0.5 * h;
    case 2: return h / 3.0;
    case 3: return 3.0 * h / 8.0;
    case 4: return 14.0 * h / 45.0;
    default: return 3.0 * h / 8.0;
    }
}

std::size_t RadialGrid::locate(double r) const
{
    const auto& x = data_->nodes;
    if (r <= x.front())
        return 0;
    if (r >= x.back())
        return x.size() - 2;
    if (is_uniform())
        return std::min(static_cast<std::size_t>(r / spacing()), x.size() - 2);
    auto it = std::upper_bound(x.begin(), x.end(), r);
    return static_cast<std::size_t>(it - x.begin()) - 1;
}

bool RadialGrid::same_nodes(const RadialGrid& other) const
{
    if (data_ == other.data_)
        return true;
    return data_->nodes == other.data_->nodes && data_->rule == other.data_->rule;
}

RadialGrid::Accumulator::Accumulator(const RadialGrid& grid)
    : grid_(&grid)
{
    f_.reserve(grid.size());
}

double RadialGrid::Accumulator::off_diagonal() const
{
    const std::size_t i = f_.size();
    if (i == 0)
        return 0.0;
    if (grid_->rule() == Rule::trapezoid)
        return last_ + grid_->diagonal_weight(i) * f_[i - 1];

    const double h = grid_->spacing();
    const auto& f = f_;
    switch (i) {
    case 1: return 0.5 * h * f[0];
    case 2: return h / 3.0 * (f[0] + 4.0 * f[1]);
    case 3: return 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2]);
    case 4: return 2.0 * h / 45.0 * (7.0 * f[0] + 32.0 * f[1] + 12.0 * f[2] + 32.0 * f[3]);
    default:
        return h * (prefix_ - 5.0 / 8.0 * f[0] + 1.0 / 6.0 * f[1] - 1.0 / 24.0 * f[2]
                    - 1.0 / 24.0 * f[i - 2] + 1.0 / 6.0 * f[i - 1]);
    }
}

double RadialGrid::Accumulator::push(double value)
{
    const std::size_t i = f_.size();
    if (i >= grid_->size())
        throw std::out_of_range("RadialGrid::Accumulator: pushed past the last node");
    const double q = off_diagonal() + grid_->diagonal_weight(i) * value;
    f_.push_back(value);
    prefix_ += value;
    last_ = q;
    return q;
}

}  // namespace befp
