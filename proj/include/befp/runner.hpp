#pragma once

#include "befp/config.hpp"
#include "befp/field2d.hpp"
#include "befp/radial_profile.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace befp {

inline constexpr const char* tool_name = "befp_cli";
inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 1,
    exit_numerical_abort = 2,
    exit_validation_failure = 3,
};

/// Uniform draws in [0, 1) from std::mt19937_64, using the top 53 bits so
/// the sequence is identical across standard libraries.
class UniformSource
{
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double next(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

/// sum_p a_p r^{2p} exp(-r^2 / (2 sigma^2)), p = 0..2, scaled to BEFP mass `mass`.
RadialProfile random_radial_profile(const RadialGrid& grid, std::uint64_t seed, double mass);

RadialProfile make_radial_initial(const ExperimentConfig& cfg, const RadialGrid& grid);
Field2D make_field_initial(const ExperimentConfig& cfg, const Grid2D& grid);

struct ConvergenceRow
{
    std::size_t n;
    double h;
    double l1_error;
    std::optional<double> order;
};

/// L1 error at cfg.resolved_t_end() of the 2D solver against the exact
/// radial pipeline for n = grid_n, 2 grid_n, 4 grid_n.
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg);

struct ValidationCheck
{
    std::string name;
    double value;
    double threshold;
    bool passed;
};

/// Round trips, equilibrium mapping, stationarity, kernel normalization,
/// mass relation, the Dirac-start closed form and the sandwich bound.
std::vector<ValidationCheck> run_validation_suite(const ExperimentConfig& cfg);

/// Runs one experiment, writes its artifacts under cfg.out and a short
/// report to `report`. Returns an ExitCode.
int run(const ExperimentConfig& cfg, std::ostream& report);

/// Manifest echoing the resolved configuration and the tool version.
std::string manifest_json(const ExperimentConfig& cfg);

}  // namespace befp
