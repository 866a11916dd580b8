#pragma once

#include "befp/field2d.hpp"
#include "befp/radial_profile.hpp"

#include <optional>
#include <span>
#include <vector>

namespace befp {

/// Time-dependent coefficients of the Ornstein-Uhlenbeck kernel.
struct FpKernelParams
{
    double t;
    double a;      ///< e^{-2t}
    double nu;     ///< e^{2t} - 1
    double theta;  ///< 1 - e^{-2t} = a nu
    double decay;  ///< e^{-t}

    static FpKernelParams at(double t);
};

/// F(t, v, w) = (2 pi theta)^{-1} exp(-|v - e^{-t} w|^2 / (2 theta)).
double fp_kernel(double t, Vec2 v, Vec2 w);
/// The same kernel written as a^{-1} M_nu(a^{-1/2} v - w), M_l the
/// centered Gaussian of variance l. Only used to cross-check fp_kernel.
double fp_kernel_literal(double t, Vec2 v, Vec2 w);

/// Angular integral of F over the circle |w| = s:
/// K(t, r, s) = theta^{-1} exp(-(r^2 + e^{-2t} s^2) / (2 theta)) I_0(r s e^{-t} / theta),
/// assembled as theta^{-1} exp(-(r - e^{-t} s)^2 / (2 theta)) * e^{-x} I_0(x).
double fp_radial_kernel(double t, double r, double s);

struct PointMass
{
    Vec2 position;
    double mass;
};

/// g(t, v) for initial data given as point masses or as a cell-averaged
/// field (each cell integrated exactly against the Gaussian kernel).
double fp_value(std::span<const PointMass> masses, double t, Vec2 v);
double fp_value(const Field2D& initial, double t, Vec2 v);

/// g(t) sampled at the cell centers of the output grid. The field version
/// exploits that the kernel factorizes in x and y.
/// Times below 1e-4 return the input unchanged with a warning.
Field2D fp_propagate_2d(const Field2D& initial, double t);
Field2D fp_propagate_2d(std::span<const PointMass> masses, const Grid2D& grid, double t);

/// psi(t, r) = r [ int_0^inf K(t, r, s) psi0(s) ds + atom K(t, r, 0) ].
/// The origin atom is absorbed for t > 0. Output nodes are independent
/// and are evaluated in parallel when OpenMP is available.
/// Times below 1e-4 return the input unchanged with a warning.
RadialProfile fp_propagate_radial(const RadialProfile& psi0, double t);

inline constexpr double fp_min_time = 1e-4;

/// Observed norms against the two alpha = 0 smoothing bounds, without their
/// unspecified constant:
///   same_p:  e^{2(p-1)t/p} ||g0||_{L^p_ell}
///   from_l1: (e^{2t} / (e^{2t} - 1))^{(p-1)/p} ||g0||_{L^1_ell}
struct LpBoundRow
{
    double t;
    double norm;
    std::optional<double> ratio_same_p;  ///< empty when ||g0||_{L^p_ell} is infinite
    double ratio_from_l1;
};

struct LpBoundReport
{
    double p;
    double ell;
    std::vector<LpBoundRow> rows;

    double max_ratio_same_p() const;
    double max_ratio_from_l1() const;
};

LpBoundReport check_lp_bounds(const RadialProfile& g0, std::span<const double> times,
                              std::span<const RadialProfile> trajectory, double p, double ell);

}  // namespace befp
