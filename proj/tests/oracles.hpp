#pragma once

// Independent reference implementations. Everything here recomputes its
// answer from first principles (fresh per-candidate loops, exhaustive
// enumeration, a different library) so it cannot share a bug with the
// library code it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <boost/math/distributions/poisson.hpp>

#include "ftcount/binarize.hpp"
#include "ftcount/raster.hpp"

namespace oracle {

// ---- threshold criteria, per-cut recomputation ----------------------------

inline double otsu_bcv(const ftc::Histogram& h, int t) {
    double w0 = 0, w1 = 0, s0 = 0, s1 = 0;
    for (int i = 0; i <= t; ++i) {
        w0 += double(h.bins[i]);
        s0 += double(h.bins[i]) * i;
    }
    for (int i = t + 1; i < 256; ++i) {
        w1 += double(h.bins[i]);
        s1 += double(h.bins[i]) * i;
    }
    if (w0 == 0 || w1 == 0) return -std::numeric_limits<double>::infinity();
    const double mu0 = s0 / w0, mu1 = s1 / w1;
    return w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
}

inline int otsu_scan(const ftc::Histogram& h) {
    int best_t = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 255; ++t) {
        const double v = otsu_bcv(h, t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

inline double yen_criterion(const ftc::Histogram& h, int t) {
    const double n = double(h.total);
    double p = 0, gb = 0, gf = 0;
    for (int i = 0; i <= t; ++i) {
        const double pi = double(h.bins[i]) / n;
        p += pi;
        gb += pi * pi;
    }
    for (int i = t + 1; i < 256; ++i) {
        const double pi = double(h.bins[i]) / n;
        gf += pi * pi;
    }
    if (p <= 0 || p >= 1) return -std::numeric_limits<double>::infinity();
    return -std::log(gb * gf) + 2.0 * std::log(p * (1.0 - p));
}

inline int yen_scan(const ftc::Histogram& h) {
    int best_t = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 255; ++t) {
        const double v = yen_criterion(h, t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

// Cross entropy of the two-class split at t, on +1-offset intensities.
inline double cross_entropy(const ftc::Histogram& h, int t) {
    double wb = 0, mb = 0, wf = 0, mf = 0;
    for (int i = 0; i <= t; ++i) {
        wb += double(h.bins[i]);
        mb += double(h.bins[i]) * (i + 1.0);
    }
    for (int i = t + 1; i < 256; ++i) {
        wf += double(h.bins[i]);
        mf += double(h.bins[i]) * (i + 1.0);
    }
    if (wb == 0 || wf == 0) return std::numeric_limits<double>::infinity();
    return -(mb * std::log(mb / wb) + mf * std::log(mf / wf));
}

inline int cross_entropy_argmin(const ftc::Histogram& h) {
    int best_t = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 255; ++t) {
        const double v = cross_entropy(h, t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

// One Li-Tam update from integer cut t, recomputed from scratch.
inline double li_update(const ftc::Histogram& h, int t) {
    double wb = 0, mb = 0, wf = 0, mf = 0;
    for (int i = 0; i <= t; ++i) {
        wb += double(h.bins[i]);
        mb += double(h.bins[i]) * (i + 1.0);
    }
    for (int i = t + 1; i < 256; ++i) {
        wf += double(h.bins[i]);
        mf += double(h.bins[i]) * (i + 1.0);
    }
    mb /= wb;
    mf /= wf;
    return (mb - mf) / (std::log(mb) - std::log(mf)) - 1.0;
}

// Exhaustive fixed-point scan: the integer cut that the Li update moves least.
inline int li_fixed_point_scan(const ftc::Histogram& h) {
    int first = -1, last = -1;
    for (int i = 0; i < 256; ++i)
        if (h.bins[i] > 0) {
            if (first < 0) first = i;
            last = i;
        }
    int best_t = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int t = first; t < last; ++t) {
        const double v = std::abs(li_update(h, t) - t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

// Exhaustive ISODATA self-consistency scan.
inline int isodata_scan(const ftc::Histogram& h) {
    int first = -1, last = -1;
    for (int i = 0; i < 256; ++i)
        if (h.bins[i] > 0) {
            if (first < 0) first = i;
            last = i;
        }
    int best_t = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int t = first; t < last; ++t) {
        double wb = 0, sb = 0, wf = 0, sf = 0;
        for (int i = 0; i <= t; ++i) {
            wb += double(h.bins[i]);
            sb += double(h.bins[i]) * i;
        }
        for (int i = t + 1; i < 256; ++i) {
            wf += double(h.bins[i]);
            sf += double(h.bins[i]) * i;
        }
        const double midpoint = (sb / wb + sf / wf) / 2.0;
        const double v = std::abs(midpoint - t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

// ---- geometry --------------------------------------------------------------

// Nearest-rounding DDA along the major axis; ties round toward the step
// direction, matching the midpoint convention of the Bresenham walker.
inline std::vector<ftc::PixelCoord> dda_line(ftc::PixelCoord a, ftc::PixelCoord b) {
    std::vector<ftc::PixelCoord> out;
    const int dr = b.row - a.row, dc = b.col - a.col;
    const int adr = std::abs(dr), adc = std::abs(dc);
    const int steps = std::max(adr, adc);
    if (steps == 0) return {a};
    for (int i = 0; i <= steps; ++i) {
        // minor = a + i*delta/steps, rounded half toward the travel direction.
        auto rounded = [&](int start, int delta) {
            const long num = 2L * start * steps + 2L * i * delta + (delta >= 0 ? steps : -steps);
            // floor division by 2*steps after adding half a cell
            long q = num / (2L * steps);
            if (num < 0 && num % (2L * steps) != 0) --q;
            return int(q);
        };
        out.push_back({rounded(a.row, dr), rounded(a.col, dc)});
    }
    return out;
}

// Enclosed-pixel count via union-find over the padded complement of the curve.
inline long enclosed_area_uf(const std::vector<ftc::PixelCoord>& curve) {
    int min_row = curve.front().row, max_row = min_row;
    int min_col = curve.front().col, max_col = min_col;
    for (const auto& p : curve) {
        min_row = std::min(min_row, p.row);
        max_row = std::max(max_row, p.row);
        min_col = std::min(min_col, p.col);
        max_col = std::max(max_col, p.col);
    }
    const int h = max_row - min_row + 3, w = max_col - min_col + 3;
    std::vector<char> on(std::size_t(h) * w, 0);
    for (const auto& p : curve) on[std::size_t(p.row - min_row + 1) * w + (p.col - min_col + 1)] = 1;

    std::vector<int> parent(std::size_t(h) * w);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const int i = r * w + c;
            if (on[i]) continue;
            if (r + 1 < h && !on[i + w]) unite(i, i + w);
            if (c + 1 < w && !on[i + 1]) unite(i, i + 1);
        }
    const int outside = find(0);
    long enclosed = 0;
    for (int i = 0; i < h * w; ++i)
        if (!on[i] && find(i) != outside) ++enclosed;
    return enclosed;
}

// Exhaustive minimum-cost simple path over an explicit pixel set.
inline double min_path_bruteforce(const std::vector<ftc::PixelCoord>& pixels, ftc::PixelCoord a,
                                  ftc::PixelCoord b) {
    const int n = int(pixels.size());
    int ai = -1, bi = -1;
    for (int i = 0; i < n; ++i) {
        if (pixels[i] == a) ai = i;
        if (pixels[i] == b) bi = i;
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> used(n, 0);
    std::function<void(int, double)> dfs = [&](int cur, double cost) {
        if (cost >= best) return;
        if (cur == bi) {
            best = cost;
            return;
        }
        used[cur] = 1;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const int dr = std::abs(pixels[cur].row - pixels[j].row);
            const int dc = std::abs(pixels[cur].col - pixels[j].col);
            if (dr > 1 || dc > 1 || (dr == 0 && dc == 0)) continue;
            dfs(j, cost + ((dr && dc) ? std::sqrt(2.0) : 1.0));
        }
        used[cur] = 0;
    };
    dfs(ai, 0.0);
    return best;
}

// ---- statistics ------------------------------------------------------------

inline double poisson_cdf_boost(long k, double rate) {
    if (k < 0) return 0.0;
    return boost::math::cdf(boost::math::poisson_distribution<double>(rate), double(k));
}

// Recursive flood-fill partition of foreground, for comparing labelings.
inline std::map<ftc::PixelCoord, int> flood_partition(const ftc::BinaryImage& mask) {
    std::map<ftc::PixelCoord, int> comp;
    int next = 0;
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.at(r, c) || comp.count({r, c})) continue;
            const int id = next++;
            std::vector<ftc::PixelCoord> stack{{r, c}};
            comp[{r, c}] = id;
            while (!stack.empty()) {
                const auto [pr, pc] = stack.back();
                stack.pop_back();
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const ftc::PixelCoord q{pr + dr, pc + dc};
                        if ((dr == 0 && dc == 0) || !mask.contains(q) || !mask.at(q.row, q.col))
                            continue;
                        if (!comp.count(q)) {
                            comp[q] = id;
                            stack.push_back(q);
                        }
                    }
            }
        }
    }
    return comp;
}

}  // namespace oracle
