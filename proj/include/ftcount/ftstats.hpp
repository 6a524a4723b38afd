#pragma once

#include <span>

namespace ftc {

// Pooled track density with Poisson counting uncertainty.
struct TrackDensity {
    long n = 0;                  // total tracks
    int images = 0;
    double area_per_image = 0.0; // cm^2
    double rho = 0.0;            // tracks / cm^2
    double sigma = 0.0;          // rho / sqrt(n)
    double per_image_mean = 0.0;
    double per_image_sigma = 0.0;  // sqrt(n) / images
};

struct GqrResult {
    double gqr = 0.0;
    double sigma = 0.0;
    long n_ed = 0;
    long n_is = 0;
};

struct KsResult {
    double d = 0.0;
    double p_value = 0.0;
    double rate = 0.0;  // estimated Poisson mean
    int n = 0;
};

struct AgeParams {
    double lambda_total = 0.0;   // 1/a, mandatory
    double lambda_f = 8.5e-17;   // 1/a, spontaneous fission decay constant
    double c238 = 0.0;           // isotopic concentration of 238U, mandatory
    double r_u = 3.2e-8;         // induced fissions per uranium atom
    double gqr = 0.0;
    double rho_s = 0.0;          // tracks/cm^2, may be zero
    double rho_i = 0.0;          // tracks/cm^2
};

TrackDensity track_density(std::span<const long> per_image_counts, double area_per_image);
TrackDensity track_density(long total, int images, double area_per_image);

// GQR = rho_ed / rho_is with sigma = GQR * sqrt(1/N_ed + 1/N_is). Both
// densities must share the same per-image area.
GqrResult compute_gqr(const TrackDensity& ed, const TrackDensity& is_);

// One-sample two-sided KS test of the counts against Poisson(sample mean),
// with the asymptotic Kolmogorov p-value.
KsResult poisson_ks(std::span<const long> per_image_counts);

// Standardless fission-track age, in Ma.
double ft_age_ma(const AgeParams& params);

// Exposed numerical helpers.
double poisson_cdf(long k, double rate);
double kolmogorov_sf(double x);  // P(K > x), asymptotic

}  // namespace ftc
