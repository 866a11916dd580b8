#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace befp {

/// Radial nodes 0 = r_0 < r_1 < ... < r_N = R_max together with the
/// quadrature used for every integral in r.
///
/// On uniform grids the running integral uses the fourth-order Gregory
/// rule (Simpson / 3-8 / Boole on the first four nodes); otherwise it is
/// the composite trapezoid. Both rules are lower triangular with a
/// strictly positive diagonal, so the running integral Q_i depends only on
/// f_0..f_i and can be inverted node by node.
///
/// The grid is an immutable value with shared storage; copies are cheap.
class RadialGrid
{
public:
    enum class Rule { gregory, trapezoid };

    /// Uniform grid with `intervals` cells on [0, r_max].
    static RadialGrid uniform(double r_max, std::size_t intervals, Rule rule = Rule::gregory);

    /// Arbitrary strictly increasing nodes starting at 0. Gregory is used
    /// when the spacing is uniform to 1e-9 relative.
    explicit RadialGrid(std::vector<double> nodes);
    RadialGrid(std::vector<double> nodes, Rule rule);

    std::size_t size() const { return data_->nodes.size(); }
    double operator[](std::size_t i) const { return data_->nodes[i]; }
    std::span<const double> nodes() const { return data_->nodes; }
    double r_max() const { return data_->nodes.back(); }
    bool is_uniform() const { return data_->uniform; }
    /// Spacing of a uniform grid (mean spacing otherwise).
    double spacing() const { return data_->spacing; }
    Rule rule() const { return data_->rule; }

    /// Weights of the full-range rule: sum_j w_j f_j ~ int_0^{R_max} f dr.
    std::span<const double> weights() const { return data_->weights; }
    double integrate(std::span<const double> f) const;

    /// Q_i ~ int_0^{r_i} f dr for every node.
    std::vector<double> running_integral(std::span<const double> f) const;

    /// Weight of f_i in Q_i.
    double diagonal_weight(std::size_t i) const;

    /// Index of the cell [r_k, r_{k+1}] containing r (clamped to the grid).
    std::size_t locate(double r) const;

    bool same_nodes(const RadialGrid& other) const;

    /// Builds Q_i one node at a time. `off_diagonal()` is the part of the
    /// next Q_i contributed by the values already pushed, so that
    /// Q_i = off_diagonal() + diagonal_weight(i) * f_i.
    class Accumulator
    {
    public:
        explicit Accumulator(const RadialGrid& grid);
        std::size_t next_index() const { return f_.size(); }
        double off_diagonal() const;
        /// Appends f_i and returns Q_i.
        double push(double value);

    private:
        const RadialGrid* grid_;
        std::vector<double> f_;
        double prefix_ = 0.0;  // f_0 + ... + f_{i-1}
        double last_ = 0.0;    // Q_{i-1}
    };

private:
    struct Data
    {
        std::vector<double> nodes;
        std::vector<double> weights;
        double spacing = 0.0;
        bool uniform = false;
        Rule rule = Rule::trapezoid;
    };
    std::shared_ptr<const Data> data_;
};

}  // namespace befp
