#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "ftcount/binarize.hpp"
#include "ftcount/raster.hpp"
#include "ftcount/topo.hpp"

namespace testutil {

inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + int(uniform01(rng) * double(hi - lo + 1));
}

inline double normal(std::mt19937_64& rng, double mean, double sd) {
    const double u1 = std::max(uniform01(rng), 1e-12), u2 = uniform01(rng);
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Two Gaussian humps plus a small noise floor: the shape global thresholding
// is meant for.
inline ftc::Histogram bimodal_histogram(std::mt19937_64& rng) {
    ftc::Histogram h;
    const double m1 = 30 + uniform01(rng) * 70, m2 = 150 + uniform01(rng) * 75;
    const double s1 = 4 + uniform01(rng) * 14, s2 = 4 + uniform01(rng) * 14;
    const double w1 = 0.25 + uniform01(rng) * 0.5;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const bool first = uniform01(rng) < w1;
        const double x = normal(rng, first ? m1 : m2, first ? s1 : s2);
        const int v = std::clamp(int(std::lround(x)), 0, 255);
        ++h.bins[v];
        ++h.total;
    }
    for (int v = 0; v < 256; ++v) {
        const long extra = uniform_int(rng, 0, 2);
        h.bins[v] += extra;
        h.total += extra;
    }
    return h;
}

inline ftc::Histogram uniform_histogram(std::mt19937_64& rng) {
    ftc::Histogram h;
    for (int v = 0; v < 256; ++v) {
        h.bins[v] = uniform_int(rng, 0, 100);
        h.total += h.bins[v];
    }
    return h;
}

// Connected blob built from a chain of overlapping disks.
inline ftc::BinaryImage random_blob(std::mt19937_64& rng, int size = 48) {
    ftc::BinaryImage img(size, size);
    double cr = size / 2.0, cc = size / 2.0;
    const int disks = uniform_int(rng, 2, 7);
    for (int d = 0; d < disks; ++d) {
        const double radius = 2.0 + uniform01(rng) * 4.0;
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c)
                if (std::hypot(r - cr, c - cc) <= radius) img.set(r, c, true);
        // Next disk center stays inside the current disk to keep the blob connected.
        const double step = radius * 0.9, angle = uniform01(rng) * 2.0 * M_PI;
        cr = std::clamp(cr + step * std::sin(angle), 6.0, size - 7.0);
        cc = std::clamp(cc + step * std::cos(angle), 6.0, size - 7.0);
    }
    return img;
}

inline ftc::Region make_region(std::vector<ftc::PixelCoord> pixels, int label = 1) {
    ftc::Region region;
    region.label = label;
    std::sort(pixels.begin(), pixels.end());
    pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
    region.pixels = std::move(pixels);
    region.min_row = region.max_row = region.pixels.front().row;
    region.min_col = region.max_col = region.pixels.front().col;
    for (const auto& p : region.pixels) {
        region.min_row = std::min(region.min_row, p.row);
        region.max_row = std::max(region.max_row, p.row);
        region.min_col = std::min(region.min_col, p.col);
        region.max_col = std::max(region.max_col, p.col);
    }
    return region;
}

inline ftc::Skeleton make_skeleton(std::vector<ftc::PixelCoord> pixels, int label = 1) {
    std::sort(pixels.begin(), pixels.end());
    pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
    return {std::move(pixels), label};
}

class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("ftcount_test_" + tag + "_" + std::to_string(counter++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

}  // namespace testutil
