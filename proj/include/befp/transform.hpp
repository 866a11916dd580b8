#pragma once

#include "befp/radial_profile.hpp"

namespace befp {

/// Lambda: radial FP density g -> radial BEFP density f,
///     phi(r) = psi(r) / (1 + Psi(r)),   Psi(r) = atom_psi + int_0^r psi,
/// with the origin atom mapped to log(1 + atom_psi).
///
/// Psi is the grid's running integral. The output satisfies
/// phi <= psi nodewise.
RadialProfile lambda_forward(const RadialProfile& fp_side);

/// Lambda^{-1}: radial BEFP density f -> radial FP density g.
///
/// Solves psi_i = phi_i (1 + Psi_i) node by node with Psi_i the same
/// running integral as in lambda_forward, which makes the pair an exact
/// discrete bijection; this is the grid-consistent form of
/// psi = phi exp(int_0^r phi). The origin atom maps to expm1(atom_phi).
///
/// Throws std::domain_error when the profile is too steep for the grid
/// (diagonal weight * phi_i >= 1), and std::overflow_error when
/// log(1 + Psi) exceeds 700, which cannot happen for finite-mass data.
RadialProfile lambda_inverse(const RadialProfile& befp_side);

/// Closed-form psi = phi exp(Phi) with Phi the running integral of phi.
/// Agrees with lambda_inverse to the order of the quadrature; kept as an
/// independent route for cross-checks.
RadialProfile lambda_inverse_direct(const RadialProfile& befp_side);

/// m = 2 pi log(1 + M / 2 pi).
double mass_f_from_M(double fp_mass);
/// M = 2 pi (exp(m / 2 pi) - 1).
double mass_M_from_m(double befp_mass);

/// Local L1 Lipschitz factor of Lambda: ||L(g1) - L(g2)||_1 <= (1 + M2 / 2 pi) ||g1 - g2||_1.
double lipschitz_bound(double fp_mass_1, double fp_mass_2);

}  // namespace befp
