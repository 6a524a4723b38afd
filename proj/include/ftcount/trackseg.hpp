#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftcount/binarize.hpp"
#include "ftcount/raster.hpp"
#include "ftcount/topo.hpp"

namespace ftc {

// Minimum-cost walk along skeleton pixels; orthogonal steps cost 1 and
// diagonal steps sqrt(2).
struct Route {
    std::vector<PixelCoord> path;
    double cost = 0.0;
};

// Straight segment between two pixels: the Bresenham raster plus the exact
// Euclidean length.
struct Chord {
    PixelCoord a;
    PixelCoord b;
    std::vector<PixelCoord> raster;
    double euclid = 0.0;
};

struct TrackCandidate {
    PixelCoord e0;
    PixelCoord e1;
    Route route;
    Chord chord;
    long inner_area = 0;
    bool closes_on_intersection = false;  // odd-extremity closure onto an intersection pixel
    bool route_via_intersection = false;  // audit flag: route touched an intersection pixel
};

enum class Degenerate { None, SinglePixel, NoIntersections, ClosedLoop };

struct RegionCount {
    int label = 0;
    int n_tracks = 0;
    std::vector<TrackCandidate> candidates;
    Degenerate degenerate = Degenerate::None;
};

struct PipelineConfig {
    ThresholdMethod method = ThresholdMethod::Isodata;
    std::optional<int> manual_threshold;  // forces ThresholdMethod::Manual
    Polarity polarity = Polarity::DarkForeground;
    int window_rows = 7;
    int window_cols = 7;
    long min_size = 25;
    double area_cm2 = 0.0;      // per-image physical area, needed by density commands
    std::string output_dir = ".";
};

struct ConfigSnapshot {
    ThresholdMethod method = ThresholdMethod::Manual;
    int threshold = 0;
    int window_rows = 0;
    int window_cols = 0;
    long min_size = 0;
    Polarity polarity = Polarity::DarkForeground;
};

struct CountReport {
    std::string image_id;
    long total_tracks = 0;
    std::vector<RegionCount> regions;
    ConfigSnapshot config;
    double elapsed_s = 0.0;
};

// Intermediate pipeline products, kept around for overlay rendering.
struct PipelineResult {
    BinaryImage mask;
    LabeledImage labeled;
    std::vector<Region> regions;
    CountReport report;
};

Route shortest_route(const Skeleton& skel, PixelCoord a, PixelCoord b);
Chord rasterize_chord(PixelCoord a, PixelCoord b);

// Pixels strictly enclosed by the closed curve route + chord raster. The two
// curves must share their endpoints.
long inner_area(const Route& route, const Chord& chord);

// Greedy candidate selection: repeatedly take the remaining extremity pair
// with the smallest inner area; a lone leftover extremity closes on the
// nearest intersection pixel.
RegionCount pair_extremities(const Skeleton& skel,
                             const std::map<PixelCoord, PixelClass>& classes);

RegionCount count_region(const Region& region);

PipelineResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg,
                            const std::string& image_id = "");
CountReport count_image(const GrayImage& img, const PipelineConfig& cfg,
                        const std::string& image_id = "");

}  // namespace ftc
