#pragma once

namespace befp {

/// Exponentially scaled modified Bessel function e^{-x} I_0(x), x >= 0.
/// Power series below x = 20, asymptotic expansion above; relative error
/// near machine precision on the whole range.
double bessel_i0_scaled(double x);

}  // namespace befp
