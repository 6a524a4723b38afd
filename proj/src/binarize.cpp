#include "ftcount/binarize.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "ftcount/topo.hpp"

namespace ftc {

std::string to_string(ThresholdMethod m) {
    switch (m) {
        case ThresholdMethod::Otsu: return "otsu";
        case ThresholdMethod::Yen: return "yen";
        case ThresholdMethod::Li: return "li";
        case ThresholdMethod::Isodata: return "isodata";
        case ThresholdMethod::Manual: return "manual";
    }
    return "?";
}

ThresholdMethod threshold_method_from_string(const std::string& name) {
    if (name == "otsu") return ThresholdMethod::Otsu;
    if (name == "yen") return ThresholdMethod::Yen;
    if (name == "li") return ThresholdMethod::Li;
    if (name == "isodata") return ThresholdMethod::Isodata;
    if (name == "manual") return ThresholdMethod::Manual;
    throw std::invalid_argument("unknown threshold method: " + name);
}

Histogram compute_histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels) ++h.bins[v];
    h.total = long(img.pixels.size());
    return h;
}

namespace {

struct BinRange {
    int first = -1;  // first populated bin
    int last = -1;   // last populated bin
};

// Throws unless at least two distinct bins are populated.
BinRange populated_range(const Histogram& h) {
    BinRange r;
    for (int i = 0; i < 256; ++i) {
        if (h.bins[i] > 0) {
            if (r.first < 0) r.first = i;
            r.last = i;
        }
    }
    if (r.first < 0 || r.first == r.last)
        throw std::domain_error("degenerate histogram: fewer than two populated bins");
    return r;
}

double mean_below(const Histogram& h, int t, double offset = 0.0) {
    double w = 0, s = 0;
    for (int i = 0; i <= t; ++i) {
        w += double(h.bins[i]);
        s += double(h.bins[i]) * (i + offset);
    }
    return s / w;
}

double mean_above(const Histogram& h, int t, double offset = 0.0) {
    double w = 0, s = 0;
    for (int i = t + 1; i < 256; ++i) {
        w += double(h.bins[i]);
        s += double(h.bins[i]) * (i + offset);
    }
    return s / w;
}

double global_mean(const Histogram& h) {
    double s = 0;
    for (int i = 0; i < 256; ++i) s += double(h.bins[i]) * i;
    return s / double(h.total);
}

}  // namespace

ThresholdResult threshold_otsu(const Histogram& h) {
    const BinRange pr = populated_range(h);
    const double n = double(h.total);
    double s_all = 0;
    for (int i = 0; i < 256; ++i) s_all += double(h.bins[i]) * i;

    double w0 = 0, s0 = 0;
    double best = -1.0;
    int best_t = pr.first;
    for (int t = pr.first; t < pr.last; ++t) {
        w0 += double(h.bins[t]);
        s0 += double(h.bins[t]) * t;
        const double w1 = n - w0;
        const double mu0 = s0 / w0, mu1 = (s_all - s0) / w1;
        const double bcv = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (bcv > best) {
            best = bcv;
            best_t = t;
        }
    }
    return {ThresholdMethod::Otsu, best_t, 0, Polarity::DarkForeground};
}

ThresholdResult threshold_yen(const Histogram& h) {
    const BinRange pr = populated_range(h);
    const double n = double(h.total);

    double p_cum = 0, psq_cum = 0, qsq_total = 0;
    for (int i = 0; i < 256; ++i) {
        const double p = double(h.bins[i]) / n;
        qsq_total += p * p;
    }
    double best = 0;
    int best_t = -1;
    for (int t = pr.first; t < pr.last; ++t) {
        const double p = double(h.bins[t]) / n;
        p_cum += p;
        psq_cum += p * p;
        const double qsq = qsq_total - psq_cum;
        const double crit = -std::log(psq_cum * qsq) + 2.0 * std::log(p_cum * (1.0 - p_cum));
        if (best_t < 0 || crit > best) {
            best = crit;
            best_t = t;
        }
    }
    return {ThresholdMethod::Yen, best_t, 0, Polarity::DarkForeground};
}

double li_step(const Histogram& h, double t) {
    const BinRange pr = populated_range(h);
    int s = int(std::floor(t));
    s = std::max(pr.first, std::min(pr.last - 1, s));
    // Means are taken on intensities offset by +1 so that log() stays finite.
    const double mb = mean_below(h, s, 1.0);
    const double mf = mean_above(h, s, 1.0);
    return (mb - mf) / (std::log(mb) - std::log(mf)) - 1.0;
}

ThresholdResult threshold_li(const Histogram& h) {
    populated_range(h);
    constexpr int kMaxIter = 100;
    double t = global_mean(h);
    int iter = 0;
    for (;;) {
        const double next = li_step(h, t);
        ++iter;
        if (std::abs(next - t) < 0.5) {
            t = next;
            break;
        }
        if (iter == kMaxIter)
            throw std::runtime_error("threshold_li: no convergence after " +
                                     std::to_string(kMaxIter) + " iterations (last iterates " +
                                     std::to_string(t) + ", " + std::to_string(next) + ")");
        t = next;
    }
    int result = int(std::lround(t));
    result = std::max(0, std::min(255, result));
    return {ThresholdMethod::Li, result, iter, Polarity::DarkForeground};
}

ThresholdResult threshold_isodata(const Histogram& h) {
    const BinRange pr = populated_range(h);
    auto clamp_split = [&](long v) { return int(std::max(long(pr.first), std::min(long(pr.last - 1), v))); };

    int t = clamp_split(std::lround(global_mean(h)));
    int iter = 0;
    // The midpoint map is nondecreasing in t, so the integer iteration is
    // monotone after the first step and must reach a fixed point.
    for (;;) {
        const int next = clamp_split(std::lround((mean_below(h, t) + mean_above(h, t)) / 2.0));
        ++iter;
        if (next == t) break;
        t = next;
        if (iter > 256)
            throw std::runtime_error("threshold_isodata: no fixed point after 256 iterations");
    }
    return {ThresholdMethod::Isodata, t, iter, Polarity::DarkForeground};
}

BinaryImage apply_threshold(const GrayImage& img, const ThresholdResult& t) {
    BinaryImage out(img.width, img.height);
    const bool dark = t.polarity == Polarity::DarkForeground;
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.mask[i] = (dark ? img.pixels[i] <= t.threshold : img.pixels[i] > t.threshold) ? 1 : 0;
    return out;
}

BinaryImage remove_small_objects(const BinaryImage& bin, long min_size) {
    if (min_size < 0) throw std::invalid_argument("remove_small_objects: min_size must be >= 0");
    if (min_size <= 1) return bin;
    const LabeledImage labeled = label_regions(bin);
    std::vector<long> sizes(std::size_t(labeled.count) + 1, 0);
    for (std::int32_t l : labeled.labels) ++sizes[l];
    BinaryImage out(bin.width, bin.height);
    for (std::size_t i = 0; i < bin.mask.size(); ++i) {
        const std::int32_t l = labeled.labels[i];
        out.mask[i] = (l > 0 && sizes[l] >= min_size) ? 1 : 0;
    }
    return out;
}

BinaryImage fill_holes(const BinaryImage& bin) {
    const int w = bin.width, h = bin.height;
    std::vector<std::uint8_t> outside(std::size_t(w) * h, 0);
    std::deque<PixelCoord> queue;
    auto push = [&](int r, int c) {
        const std::size_t i = std::size_t(r) * w + c;
        if (!bin.mask[i] && !outside[i]) {
            outside[i] = 1;
            queue.push_back({r, c});
        }
    };
    for (int c = 0; c < w; ++c) {
        push(0, c);
        push(h - 1, c);
    }
    for (int r = 0; r < h; ++r) {
        push(r, 0);
        push(r, w - 1);
    }
    // Background holes use 4-connectivity (dual of the 8-connected foreground).
    while (!queue.empty()) {
        const auto [r, c] = queue.front();
        queue.pop_front();
        if (r > 0) push(r - 1, c);
        if (r + 1 < h) push(r + 1, c);
        if (c > 0) push(r, c - 1);
        if (c + 1 < w) push(r, c + 1);
    }
    BinaryImage out(w, h);
    for (std::size_t i = 0; i < out.mask.size(); ++i)
        out.mask[i] = (bin.mask[i] || !outside[i]) ? 1 : 0;
    return out;
}

BinaryImage clear_lower_right(const BinaryImage& bin) {
    const LabeledImage labeled = label_regions(bin);
    std::vector<std::uint8_t> doomed(std::size_t(labeled.count) + 1, 0);
    const int w = bin.width, h = bin.height;
    for (int c = 0; c < w; ++c)
        if (std::int32_t l = labeled.at(h - 1, c); l > 0) doomed[l] = 1;
    for (int r = 0; r < h; ++r)
        if (std::int32_t l = labeled.at(r, w - 1); l > 0) doomed[l] = 1;
    BinaryImage out(w, h);
    for (std::size_t i = 0; i < out.mask.size(); ++i) {
        const std::int32_t l = labeled.labels[i];
        out.mask[i] = (l > 0 && !doomed[l]) ? 1 : 0;
    }
    return out;
}

}  // namespace ftc
