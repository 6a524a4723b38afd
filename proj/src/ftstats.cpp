#include "ftcount/ftstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftc {

TrackDensity track_density(long total, int images, double area_per_image) {
    if (images < 1) throw std::invalid_argument("track_density: need at least one image");
    if (!(area_per_image > 0.0)) throw std::invalid_argument("track_density: area must be > 0");
    if (total < 0) throw std::invalid_argument("track_density: negative track count");
    TrackDensity d;
    d.n = total;
    d.images = images;
    d.area_per_image = area_per_image;
    d.rho = double(total) / (double(images) * area_per_image);
    d.sigma = total > 0 ? d.rho / std::sqrt(double(total)) : 0.0;
    d.per_image_mean = double(total) / images;
    d.per_image_sigma = std::sqrt(double(total)) / images;
    return d;
}

TrackDensity track_density(std::span<const long> per_image_counts, double area_per_image) {
    if (per_image_counts.empty())
        throw std::invalid_argument("track_density: need at least one image");
    long total = 0;
    for (long c : per_image_counts) {
        if (c < 0) throw std::invalid_argument("track_density: negative track count");
        total += c;
    }
    return track_density(total, int(per_image_counts.size()), area_per_image);
}

GqrResult compute_gqr(const TrackDensity& ed, const TrackDensity& is_) {
    if (ed.area_per_image != is_.area_per_image)
        throw std::invalid_argument("compute_gqr: densities use different per-image areas");
    if (ed.n == 0 || is_.n == 0)
        throw std::domain_error("compute_gqr: undefined ratio, zero track count");
    GqrResult g;
    g.n_ed = ed.n;
    g.n_is = is_.n;
    g.gqr = ed.rho / is_.rho;
    g.sigma = g.gqr * std::sqrt(1.0 / double(ed.n) + 1.0 / double(is_.n));
    return g;
}

double poisson_cdf(long k, double rate) {
    if (k < 0) return 0.0;
    double term = std::exp(-rate);  // P(X = 0)
    double cdf = term;
    for (long i = 1; i <= k; ++i) {
        term *= rate / double(i);
        cdf += term;
    }
    return std::min(cdf, 1.0);
}

double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    constexpr double rel_tol = 1e-8;
    if (x < 1.18) {
        // Theta-function form converges fast for small arguments.
        const double t = std::exp(-M_PI * M_PI / (8.0 * x * x));
        double series = 0.0;
        for (int k = 1; k < 40; k += 2) {
            const double term = std::pow(t, double(k) * k);
            series += term;
            if (term < rel_tol * series) break;
        }
        const double cdf = std::sqrt(2.0 * M_PI) / x * series;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sf = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double term = 2.0 * std::exp(-2.0 * double(k) * k * x * x);
        sf += sign * term;
        if (term < rel_tol * std::max(sf, rel_tol)) break;
        sign = -sign;
    }
    return std::clamp(sf, 0.0, 1.0);
}

KsResult poisson_ks(std::span<const long> per_image_counts) {
    const int n = int(per_image_counts.size());
    if (n < 5) throw std::invalid_argument("poisson_ks: need at least 5 samples, got " +
                                           std::to_string(n));
    long total = 0, kmax = 0;
    for (long c : per_image_counts) {
        if (c < 0) throw std::invalid_argument("poisson_ks: negative count");
        total += c;
        kmax = std::max(kmax, c);
    }
    if (total == 0) throw std::domain_error("poisson_ks: all-zero sample, degenerate rate");

    KsResult res;
    res.n = n;
    res.rate = double(total) / n;

    // Both CDFs are right-continuous steps on the integers, so the sup over
    // the real line is attained on 0..max(sample).
    std::vector<long> below(std::size_t(kmax) + 1, 0);
    for (long c : per_image_counts) ++below[c];
    std::partial_sum(below.begin(), below.end(), below.begin());

    double term = std::exp(-res.rate);
    double model_cdf = term;
    double d = 0.0;
    for (long k = 0; k <= kmax; ++k) {
        if (k > 0) {
            term *= res.rate / double(k);
            model_cdf += term;
        }
        const double empirical = double(below[k]) / n;
        d = std::max(d, std::abs(empirical - std::min(model_cdf, 1.0)));
    }
    res.d = d;
    res.p_value = kolmogorov_sf(std::sqrt(double(n)) * d);
    return res;
}

double ft_age_ma(const AgeParams& p) {
    if (!(p.lambda_total > 0.0)) throw std::invalid_argument("ft_age: lambda must be > 0");
    if (!(p.lambda_f > 0.0)) throw std::invalid_argument("ft_age: lambda_f must be > 0");
    if (!(p.c238 > 0.0)) throw std::invalid_argument("ft_age: c238 must be > 0");
    if (!(p.r_u > 0.0)) throw std::invalid_argument("ft_age: r_u must be > 0");
    if (!(p.gqr > 0.0)) throw std::invalid_argument("ft_age: gqr must be > 0");
    if (!(p.rho_s >= 0.0)) throw std::invalid_argument("ft_age: rho_s must be >= 0");
    if (!(p.rho_i > 0.0)) throw std::invalid_argument("ft_age: rho_i must be > 0");

    const double arg =
        p.gqr * (p.rho_s / p.rho_i) * (p.lambda_total * p.r_u) / (p.lambda_f * p.c238);
    if (!(arg > -1.0)) throw std::domain_error("ft_age: log argument out of range");
    const double t_years = std::log1p(arg) / p.lambda_total;
    return t_years / 1e6;
}

}  // namespace ftc
