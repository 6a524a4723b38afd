#pragma once

#include <array>
#include <string>

#include "ftcount/raster.hpp"

namespace ftc {

struct Histogram {
    std::array<long, 256> bins{};
    long total = 0;
};

enum class ThresholdMethod { Otsu, Yen, Li, Isodata, Manual };
enum class Polarity { DarkForeground, BrightForeground };

std::string to_string(ThresholdMethod m);
ThresholdMethod threshold_method_from_string(const std::string& name);

struct ThresholdResult {
    ThresholdMethod method = ThresholdMethod::Manual;
    int threshold = 0;  // in [0,255]; "below" class is [0, threshold]
    int iterations = 0; // 0 for the non-iterative criteria
    Polarity polarity = Polarity::DarkForeground;
};

Histogram compute_histogram(const GrayImage& img);

// Global threshold criteria. All throw std::domain_error on a histogram with
// fewer than two populated bins, and break optimum ties toward the smallest T.
ThresholdResult threshold_otsu(const Histogram& h);
ThresholdResult threshold_yen(const Histogram& h);
ThresholdResult threshold_li(const Histogram& h);
ThresholdResult threshold_isodata(const Histogram& h);

// One step of the Li minimum-cross-entropy iteration from a real-valued
// threshold, exposed so convergence behaviour can be checked from outside.
double li_step(const Histogram& h, double t);

// DarkForeground: mask = intensity <= T. BrightForeground: mask = intensity > T.
BinaryImage apply_threshold(const GrayImage& img, const ThresholdResult& t);

// Binary enhancement tools. All are idempotent.
BinaryImage remove_small_objects(const BinaryImage& bin, long min_size);
BinaryImage fill_holes(const BinaryImage& bin);
BinaryImage clear_lower_right(const BinaryImage& bin);

}  // namespace ftc
