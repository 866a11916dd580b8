#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// Constants evaluated with 30-digit arithmetic.
inline constexpr double fundamental_mass = 0.927971443622063;   // 2 pi log(1 + 1/(2 pi))
inline constexpr double fundamental_atom = 0.147691242300573;   // log(1 + 1/(2 pi))
inline constexpr double beta_at_mass_2pi = 1.58197670686933;    // 1 / (1 - e^{-1})
inline constexpr double mass_at_beta_2 = 4.35517218060720;      // 2 pi log 2
inline constexpr double entropy_beta_2 = -6.67710043897047;     // -pi log^2 2 - pi^3 / 6
inline constexpr double fundamental_at_1_0 = 0.184065499616596; // t = 1, r = 0
inline constexpr double theta_at_1 = 0.864664716763387;

/// Li_2(z) for 0 <= z < 1 by its power series.
double dilog(double z);

/// f_inf^beta written directly from 1 / (beta e^{r^2/2} - 1).
double bose_einstein(double beta, double r);

/// Closed-form entropy of f_inf^beta: -m log beta - 2 pi Li_2(1 / beta).
double equilibrium_entropy(double beta);

/// (beta - 1)^2 / (16 pi^2).
double ck_constant(double beta);

/// Angular integral of the planar Ornstein-Uhlenbeck kernel over the circle
/// of radius s, by the periodic trapezoid rule in the angle.
double radial_kernel_by_angle(double t, double r, double s, int points = 512);

/// Residual of d_t f = Lap f + div(v f (1 + f)) at (t, x, y) with eighth
/// order central differences in t, x and y. The stencil reaches t - 4 ht.
double befp_residual(const std::function<double(double, double, double)>& f, double t, double x, double y,
                     double ht, double hx);

/// Smooth non-negative radial density sum_p a_p r^{2p} exp(-r^2 / (2 s^2)).
struct SmoothRadial
{
    double a0, a1, a2, s;
    double operator()(double r) const;
};

class Generator
{
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    SmoothRadial smooth_radial();

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
