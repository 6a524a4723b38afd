#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace ftc {

struct PixelCoord {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

// Row-major 8-bit grayscale raster, 0 = black.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int r, int c) const { return pixels[std::size_t(r) * width + c]; }
    std::uint8_t& at(int r, int c) { return pixels[std::size_t(r) * width + c]; }
    bool contains(PixelCoord p) const {
        return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width;
    }
    bool same_shape(const GrayImage& o) const { return width == o.width && height == o.height; }
};

// Foreground mask over the same grid contract as GrayImage. 1 = foreground.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    BinaryImage() = default;
    BinaryImage(int w, int h, bool fill = false);

    bool at(int r, int c) const { return mask[std::size_t(r) * width + c] != 0; }
    void set(int r, int c, bool v) { mask[std::size_t(r) * width + c] = v ? 1 : 0; }
    bool contains(PixelCoord p) const {
        return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width;
    }
    long foreground_count() const;

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

// Interleaved 8-bit RGB, used for overlay rendering only.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    RgbImage() = default;
    RgbImage(int w, int h);
    explicit RgbImage(const GrayImage& gray);

    void put(int r, int c, std::uint8_t red, std::uint8_t green, std::uint8_t blue) {
        std::size_t i = (std::size_t(r) * width + c) * 3;
        data[i] = red;
        data[i + 1] = green;
        data[i + 2] = blue;
    }
};

// Decodes a PNG/TIFF (or any raster OpenCV can read) to 8-bit grayscale.
// Color inputs collapse by round(0.299 R + 0.587 G + 0.114 B); 16-bit inputs
// are stretched to [0,255] by linear min-max. Anything deeper is rejected.
GrayImage load_gray(const std::filesystem::path& path);

void save_gray(const GrayImage& img, const std::filesystem::path& path);
void save_rgb(const RgbImage& img, const std::filesystem::path& path);

// k x l running median (window_rows x window_cols, both odd), mirror padding
// without edge repetition. Window sides may not exceed 2*dim - 1.
GrayImage median_filter(const GrayImage& img, int window_rows = 7, int window_cols = 7);

}  // namespace ftc
