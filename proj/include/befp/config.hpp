#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace befp {

enum class Mode { equilibrium, radial_exact, numeric_2d, convergence_study, validate };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Initial data families. `random` draws a smooth profile from `seed`.
enum class InitialKind { dirac, fundamental, equilibrium, gaussian, two_bump, random };

std::string to_string(InitialKind k);
InitialKind initial_kind_from_string(const std::string& s);

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string& message);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct ExperimentConfig
{
    Mode mode = Mode::radial_exact;
    InitialKind ic = InitialKind::dirac;
    double mass = 6.283185307179586;     ///< BEFP mass of the initial data
    std::optional<double> beta;          ///< equilibrium parameter; takes precedence over mass
    std::size_t grid_n = 128;            ///< 2D cells per side (convergence-study: coarsest level)
    double grid_l = 8.0;                 ///< 2D half-width
    std::size_t radial_n = 4000;         ///< radial intervals
    double radial_rmax = 8.0;
    std::vector<double> times{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};
    double dt = 0.0;                     ///< 0 picks 0.9 of the stability bound each step
    double t_end = 0.0;                  ///< 0 means the last requested time
    std::string out = "befp_out";
    std::uint64_t seed = 1;
    double tol = 1e-8;

    /// Equilibrium parameter implied by `beta` or by `mass`.
    double resolved_beta() const;
    double resolved_t_end() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Recognised keys, in canonical order.
const std::vector<std::string>& config_keys();

/// `key = value` lines; `#` starts a comment. Unknown or repeated keys are rejected.
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);

/// Applies file values, then flag values; a flag that overrides a different
/// file value emits a warning. Validates the result.
ExperimentConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values);

/// `a,b,c` or `start:stop:step` (stop included).
std::vector<double> parse_times(const std::string& text);

/// Fully resolved configuration as canonical key/value strings.
KeyValues to_key_values(const ExperimentConfig& cfg);

/// Defaults and accepted values, one line per key.
std::string describe_defaults();

}  // namespace befp
