#pragma once

namespace befp {

/// The Bose-Einstein equilibrium with parameter beta together with its
/// BEFP mass m = 2 pi log(beta / (beta - 1)) and the mass M = 2 pi / (beta - 1)
/// of the Maxwellian it corresponds to on the FP side.
class EquilibriumParams
{
public:
    static EquilibriumParams from_beta(double beta);
    static EquilibriumParams from_mass(double befp_mass);
    static EquilibriumParams from_fp_mass(double fp_mass);

    double beta() const { return beta_; }
    double mass_m() const { return mass_m_; }
    double mass_M() const { return mass_M_; }

private:
    EquilibriumParams(double beta, double m, double M)
        : beta_(beta), mass_m_(m), mass_M_(M) {}
    double beta_;
    double mass_m_;
    double mass_M_;
};

/// f_inf^beta(r) = 1 / (beta e^{r^2/2} - 1), evaluated as
/// 1 / (beta - 1 + beta expm1(r^2/2)). Requires beta > 1.
double bose_einstein(double beta, double r);
/// d/dr f_inf^beta(r).
double bose_einstein_dr(double beta, double r);

/// 2 pi log(beta / (beta - 1)).
double mass_from_beta(double beta);
/// beta = (1 - e^{-m / 2 pi})^{-1}, m > 0.
double beta_from_mass(double befp_mass);

/// M g_inf(r) = M e^{-r^2/2} / (2 pi).
double fp_maxwellian(double fp_mass, double r);

/// vartheta(t) = 1 - e^{-2t}.
double befp_vartheta(double t);

/// Solution emanating from the Dirac mass with FP mass 1:
/// vartheta^{-1} [(2 pi + 1) e^{r^2 / 2 vartheta} - 1]^{-1}, t > 0.
double befp_fundamental(double t, double r);
/// Its conserved BEFP mass 2 pi log(1 + 1 / 2 pi).
double befp_fundamental_mass();

/// Infinite-mass solution 2 (2 A^{-1} e^{-2t} + r^2)^{-1}, A > 0. Not
/// integrable; used for residual checks only.
double befp_infinite_mass(double t, double r, double amplitude);

}  // namespace befp
