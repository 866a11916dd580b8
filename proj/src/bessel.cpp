#include "befp/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace befp {

double bessel_i0_scaled(double x)
{
    if (x < 0.0)
        x = -x;
    if (std::isnan(x))
        return x;
    if (x < 20.0) {
        // I_0(x) = sum_k (x^2/4)^k / (k!)^2, all terms positive.
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum * std::exp(-x);
    }
    // e^{-x} I_0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k).
    // The terms shrink until k ~ 2x, so at x >= 20 truncation is below 1e-17.
    const double inv8x = 1.0 / (8.0 * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd * inv8x / k;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace befp
