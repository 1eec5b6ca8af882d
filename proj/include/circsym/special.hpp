#pragma once

namespace circsym {

/// Modified Bessel function of the first kind, integer order m >= 0,
/// by its power series summed to relative tolerance 1e-14.
double bessel_i(int m, double x);

/// exp(-x) * I_m(x) for x >= 0; stays finite for large x.
double bessel_i_scaled(int m, double x);

/// Standard normal cdf.
double normal_cdf(double x);

/// Upper p quantile of the standard normal: z with 1 - Phi(z) = p.
double normal_upper_quantile(double p);

}  // namespace circsym
