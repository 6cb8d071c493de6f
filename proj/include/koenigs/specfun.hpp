#pragma once

#include "koenigs/common.hpp"

namespace koenigs::specfun {

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
};

// Lanczos approximation, z > 0; relative error of exp(log_gamma) below
// ~1e-13 on (0, 170).  Negative arguments are not provided here; callers
// that need the reflection handle it themselves.
double log_gamma(double z);

// Confluent hypergeometric M(a,b,z) by the ascending series (Kummer
// transform for z < 0).  Declared window |z| <= 50.
SeriesResult kummer_m(double a, double b, double z, int terms_max = 500);

// Confluent hypergeometric U(a,b,z) through the two-term connection
// formula, summed in double-double to survive the e^z cancellation.
// Fails loudly (precision_error) when the cancellation would still eat
// past ~1e-9 relative accuracy; near-integer b is handled by symmetric
// perturbation and averaging.  Window z in (0, 50].
SeriesResult kummer_u(double a, double b, double z, int terms_max = 500);

enum class WhittakerKind { M, W };

// M_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} M(mu-kappa+1/2, 1+2mu, z), and the
// analogous W through U.
double whittaker(WhittakerKind kind, double kappa, double mu, double z,
                 int terms_max = 500);

// Modified Bessel function of the first kind, ascending series.
// Window z in [0, 60], nu in [0, 100].
double bessel_i(double nu, double z, int terms_max = 500);

enum class PolyFamily { laguerre, jacobi, hermite };

struct PolyParams {
    double a = 0.0; // Laguerre lambda, or Jacobi a
    double b = 0.0; // Jacobi b
};

double orthopoly(PolyFamily family, int n, PolyParams params, double x);

double laguerre(int n, double lambda, double x);
double jacobi(int n, double a, double b, double x);
double hermite(int n, double x);

} // namespace koenigs::specfun
