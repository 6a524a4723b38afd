#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ftcount/raster.hpp"

namespace ftc {

// 0 = background, 1..count = 8-connected foreground components, numbered by
// raster order of their first pixel.
struct LabeledImage {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    int count = 0;

    std::int32_t at(int r, int c) const { return labels[std::size_t(r) * width + c]; }
};

// One connected foreground component. Pixels are kept in raster order and the
// bounding box is tight.
struct Region {
    int label = 0;
    std::vector<PixelCoord> pixels;
    int min_row = 0, min_col = 0, max_row = 0, max_col = 0;
};

// Unit-width thinning of a region; pixel set is sorted in raster order.
struct Skeleton {
    std::vector<PixelCoord> pixels;
    int source_label = 0;
};

enum class PixelClass { Extremity, Intersection, Common, Isolated };

LabeledImage label_regions(const BinaryImage& bin);
std::vector<Region> extract_regions(const LabeledImage& labeled);
std::vector<Region> extract_regions(const BinaryImage& bin);

// Topology-preserving thinning: the result is a subset of the region with the
// same single 8-connected component and no full 2x2 block.
Skeleton skeletonize(const Region& region);

// Classes by 8-neighbor count on the skeleton: 0 Isolated, 1 Extremity,
// 2 Common, >2 Intersection.
std::map<PixelCoord, PixelClass> classify_pixels(const Skeleton& skel);

}  // namespace ftc
