#include "ftcount/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ftc {

namespace {

struct Vec2 {
    double r = 0, c = 0;
};

struct Capsule {
    Vec2 center;
    Vec2 dir;  // unit axis direction
    double half_len = 0;
    double half_width = 0;
    double angle = 0;

    Vec2 p0() const { return {center.r - dir.r * half_len, center.c - dir.c * half_len}; }
    Vec2 p1() const { return {center.r + dir.r * half_len, center.c + dir.c * half_len}; }
};

double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
    const double dr = b.r - a.r, dc = b.c - a.c;
    const double len2 = dr * dr + dc * dc;
    double t = len2 > 0 ? ((p.r - a.r) * dr + (p.c - a.c) * dc) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.r - (a.r + t * dr), p.c - (a.c + t * dc));
}

double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.r - o.r) * (b.c - o.c) - (a.c - o.c) * (b.r - o.r);
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(c, d, a), d2 = cross(c, d, b);
    const double d3 = cross(a, b, c), d4 = cross(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double segment_segment_dist(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min(std::min(point_segment_dist(a, c, d), point_segment_dist(b, c, d)),
                    std::min(point_segment_dist(c, a, b), point_segment_dist(d, a, b)));
}

// Clearance so that tracks stay distinct regions even after median smoothing.
constexpr double kSeparation = 6.0;

}  // namespace

SynthResult generate(const SynthSpec& spec) {
    if (spec.width < 32 || spec.height < 32)
        throw std::invalid_argument("synth: image must be at least 32x32");
    if (spec.n_tracks < 0) throw std::invalid_argument("synth: n_tracks must be >= 0");
    if (!(spec.track_intensity < spec.background))
        throw std::invalid_argument("synth: track intensity must be darker than background");
    if (spec.min_length > spec.max_length || spec.min_width > spec.max_width)
        throw std::invalid_argument("synth: empty length or width range");
    if (spec.forced_crossings < 0 || 2 * spec.forced_crossings > spec.n_tracks)
        throw std::invalid_argument("synth: forced_crossings needs two tracks per crossing");

    std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    std::vector<Capsule> placed;
    std::vector<int> crossed_with;

    auto sample_shape = [&](double angle) {
        Capsule c;
        c.angle = angle;
        c.dir = {std::sin(angle), std::cos(angle)};
        c.half_len = uniform(rng, spec.min_length, spec.max_length) / 2.0;
        c.half_width = uniform(rng, spec.min_width, spec.max_width) / 2.0;
        return c;
    };

    auto in_bounds = [&](const Capsule& c) {
        const double support = c.half_len + c.half_width + 2.0;
        return c.center.r - support >= 3.0 && c.center.c - support >= 3.0 &&
               c.center.r + support <= spec.height - 9.0 &&
               c.center.c + support <= spec.width - 9.0;
    };

    auto clear_of_others = [&](const Capsule& c, int skip) {
        for (std::size_t k = 0; k < placed.size(); ++k) {
            if (int(k) == skip) continue;
            const Capsule& o = placed[k];
            const double need = c.half_width + o.half_width + kSeparation;
            if (segment_segment_dist(c.p0(), c.p1(), o.p0(), o.p1()) < need) return false;
        }
        return true;
    };

    constexpr int kRetries = 400;
    for (int i = 0; i < spec.n_tracks; ++i) {
        const bool in_forced_prefix = i < 2 * spec.forced_crossings;
        bool cross_mode = in_forced_prefix ? (i % 2 == 1) : false;
        int partner = cross_mode ? i - 1 : -1;
        if (!in_forced_prefix && !placed.empty() && spec.overlap_prob > 0.0 &&
            uniform01(rng) < spec.overlap_prob) {
            // Cross a previous track that is not already part of a cluster.
            std::vector<int> eligible;
            for (std::size_t k = 0; k < placed.size(); ++k)
                if (crossed_with[k] < 0) eligible.push_back(int(k));
            if (!eligible.empty()) {
                cross_mode = true;
                partner = eligible[std::size_t(uniform01(rng) * double(eligible.size()))];
            }
        }

        bool done = false;
        for (int attempt = 0; attempt < kRetries && !done; ++attempt) {
            Capsule c;
            if (cross_mode) {
                const Capsule& host = placed[std::size_t(partner)];
                const double delta = uniform(rng, M_PI / 6.0, M_PI / 2.0);
                const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
                c = sample_shape(host.angle + sign * delta);
                // Axis passes through an interior point of the host axis.
                const double s = uniform(rng, 0.3, 0.7);
                const Vec2 q{host.center.r + (2.0 * s - 1.0) * host.half_len * host.dir.r,
                             host.center.c + (2.0 * s - 1.0) * host.half_len * host.dir.c};
                const double u = uniform(rng, 0.35, 0.65);
                c.center = {q.r - (2.0 * u - 1.0) * c.half_len * c.dir.r,
                            q.c - (2.0 * u - 1.0) * c.half_len * c.dir.c};
                if (!in_bounds(c) || !clear_of_others(c, partner)) continue;
            } else {
                c = sample_shape(uniform(rng, 0.0, M_PI));
                const double support = c.half_len + c.half_width + 2.0;
                c.center = {uniform(rng, support + 3.0, spec.height - 9.0 - support),
                            uniform(rng, support + 3.0, spec.width - 9.0 - support)};
                if (!in_bounds(c) || !clear_of_others(c, -1)) continue;
            }
            placed.push_back(c);
            crossed_with.push_back(partner);
            if (partner >= 0) crossed_with[std::size_t(partner)] = i;
            done = true;
        }
        if (!done)
            throw std::runtime_error("synth: could not place track " + std::to_string(i) +
                                     " after " + std::to_string(kRetries) +
                                     " retries; image too crowded");
    }

    SynthResult result;
    result.image = GrayImage(spec.width, spec.height, std::uint8_t(spec.background));
    result.n_tracks = spec.n_tracks;
    for (const Capsule& c : placed) {
        const Vec2 a = c.p0(), b = c.p1();
        result.endpoints.push_back({PixelCoord{int(std::lround(a.r)), int(std::lround(a.c))},
                                    PixelCoord{int(std::lround(b.r)), int(std::lround(b.c))}});
        const double support = c.half_len + c.half_width + 1.0;
        const int r0 = std::max(0, int(std::floor(c.center.r - support)));
        const int r1 = std::min(spec.height - 1, int(std::ceil(c.center.r + support)));
        const int c0 = std::max(0, int(std::floor(c.center.c - support)));
        const int c1 = std::min(spec.width - 1, int(std::ceil(c.center.c + support)));
        for (int r = r0; r <= r1; ++r)
            for (int cc = c0; cc <= c1; ++cc)
                if (point_segment_dist({double(r), double(cc)}, a, b) <= c.half_width)
                    result.image.at(r, cc) = std::uint8_t(spec.track_intensity);
    }

    if (spec.noise_amp > 0) {
        const int span = 2 * spec.noise_amp + 1;
        for (std::uint8_t& v : result.image.pixels) {
            const int delta = int(uniform01(rng) * span) - spec.noise_amp;
            v = std::uint8_t(std::clamp(int(v) + delta, 0, 255));
        }
    }
    return result;
}

}  // namespace ftc
