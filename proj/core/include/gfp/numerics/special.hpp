#pragma once

namespace gfp {

/// Standard normal CDF. Absolute error below 1e-15 on finite inputs.
double normal_cdf(double a);

/// Upper tail 1 - Phi(a), accurate for large positive a.
double normal_sf(double a);

/// Standard normal density.
double normal_pdf(double a);

/// Gaussian mass of (lo, hi); either bound may be infinite. Computed from the
/// tail on the side where the interval lives to avoid cancellation.
double normal_interval_mass(double lo, double hi);

/// Inverse of normal_cdf on (0, 1). Throws DomainError outside.
double normal_quantile(double m);

/// Gamma function for z > 0. Throws DomainError for z <= 0.
double gamma_function(double z);

/// log Gamma(z) for z > 0.
double log_gamma(double z);

/// P(chi^2_dof < x), i.e. the Gaussian measure of the origin-centred ball of
/// radius sqrt(x) in dimension `dof`.
double chi_square_cdf(double x, int dof);

/// P(X < a, Y > a) for a standard bivariate normal pair with correlation rho.
///
/// Reduced to (1/2pi) * int_0^{arccos rho} exp(-a^2 / (1 + cos th)) dth and
/// evaluated adaptively. Throws DomainError for |rho| >= 1.
double orthant_prob(double a, double rho);

/// Same quantity parameterised by th = arccos(rho) in [0, pi], which is the
/// form the subordination integrals use (th is computed without cancellation
/// from the OU time).
double orthant_prob_angle(double a, double theta);

/// arccos(exp(-t)) evaluated stably for small and large t.
double ou_angle(double t);

/// Surface area of the unit sphere in R^n (n * omega_n).
double unit_sphere_area(int n);

}  // namespace gfp
