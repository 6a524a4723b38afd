#include "ftcount/raster.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace ftc {

GrayImage::GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw std::invalid_argument("GrayImage: dimensions must be >= 1, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
    pixels.assign(std::size_t(w) * h, fill);
}

BinaryImage::BinaryImage(int w, int h, bool fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw std::invalid_argument("BinaryImage: dimensions must be >= 1, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
    mask.assign(std::size_t(w) * h, fill ? 1 : 0);
}

long BinaryImage::foreground_count() const {
    long n = 0;
    for (std::uint8_t v : mask) n += v != 0;
    return n;
}

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
    data.assign(std::size_t(w) * h * 3, 0);
}

RgbImage::RgbImage(const GrayImage& gray) : RgbImage(gray.width, gray.height) {
    for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
        data[i * 3] = data[i * 3 + 1] = data[i * 3 + 2] = gray.pixels[i];
    }
}

namespace {

std::uint8_t luminance8(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return std::uint8_t(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
}

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
    cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (m.empty())
        throw std::runtime_error("cannot read image file: " + path.string());
    const int depth = m.depth();
    if (depth != CV_8U && depth != CV_16U)
        throw std::runtime_error("unsupported bit depth (" + std::to_string(8 * (int)m.elemSize1()) +
                                 " bits per channel) in " + path.string() +
                                 "; only 8-bit and 16-bit rasters are supported");
    const int ch = m.channels();
    if (ch != 1 && ch != 2 && ch != 3 && ch != 4)
        throw std::runtime_error("unsupported channel count (" + std::to_string(ch) + ") in " +
                                 path.string());

    GrayImage out(m.cols, m.rows);
    if (depth == CV_8U) {
        for (int r = 0; r < m.rows; ++r) {
            const std::uint8_t* row = m.ptr<std::uint8_t>(r);
            for (int c = 0; c < m.cols; ++c) {
                const std::uint8_t* px = row + std::size_t(c) * ch;
                // OpenCV stores color as BGR(A); 2-channel is gray+alpha.
                out.at(r, c) = (ch >= 3) ? luminance8(px[2], px[1], px[0]) : px[0];
            }
        }
        return out;
    }

    // 16-bit: collapse channels first, then min-max stretch to [0,255].
    std::vector<double> lum(std::size_t(m.rows) * m.cols);
    double lo = 65535.0, hi = 0.0;
    for (int r = 0; r < m.rows; ++r) {
        const std::uint16_t* row = m.ptr<std::uint16_t>(r);
        for (int c = 0; c < m.cols; ++c) {
            const std::uint16_t* px = row + std::size_t(c) * ch;
            double v = (ch >= 3) ? 0.299 * px[2] + 0.587 * px[1] + 0.114 * px[0] : double(px[0]);
            lum[std::size_t(r) * m.cols + c] = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    for (std::size_t i = 0; i < lum.size(); ++i)
        out.pixels[i] = std::uint8_t(std::lround((lum[i] - lo) * scale));
    return out;
}

void save_gray(const GrayImage& img, const std::filesystem::path& path) {
    cv::Mat m(img.height, img.width, CV_8UC1, const_cast<std::uint8_t*>(img.pixels.data()));
    if (!cv::imwrite(path.string(), m))
        throw std::runtime_error("cannot write image file: " + path.string());
}

void save_rgb(const RgbImage& img, const std::filesystem::path& path) {
    cv::Mat bgr(img.height, img.width, CV_8UC3);
    for (int r = 0; r < img.height; ++r) {
        std::uint8_t* row = bgr.ptr<std::uint8_t>(r);
        for (int c = 0; c < img.width; ++c) {
            std::size_t i = (std::size_t(r) * img.width + c) * 3;
            row[c * 3] = img.data[i + 2];
            row[c * 3 + 1] = img.data[i + 1];
            row[c * 3 + 2] = img.data[i];
        }
    }
    if (!cv::imwrite(path.string(), bgr))
        throw std::runtime_error("cannot write image file: " + path.string());
}

namespace {

// Smallest intensity whose cumulative count exceeds `rank`, located through a
// 16-bucket coarse histogram first.
std::uint8_t histogram_median(const std::array<int, 256>& fine, const std::array<int, 16>& coarse,
                              int rank) {
    int cum = 0;
    int bucket = 0;
    while (cum + coarse[bucket] <= rank) cum += coarse[bucket++];
    int v = bucket << 4;
    while (cum + fine[v] <= rank) cum += fine[v++];
    return std::uint8_t(v);
}

}  // namespace

GrayImage median_filter(const GrayImage& img, int window_rows, int window_cols) {
    if (window_rows < 1 || window_cols < 1 || window_rows % 2 == 0 || window_cols % 2 == 0)
        throw std::invalid_argument("median_filter: window sides must be odd and >= 1, got " +
                                    std::to_string(window_rows) + "x" + std::to_string(window_cols));
    if (window_rows > 2 * img.height - 1 || window_cols > 2 * img.width - 1)
        throw std::invalid_argument("median_filter: window exceeds the mirror-padded image extent");
    if (window_rows == 1 && window_cols == 1) return img;

    const int h = img.height, w = img.width;
    const int rr = window_rows / 2, rc = window_cols / 2;
    const int rank = (window_rows * window_cols) / 2;
    GrayImage out(w, h);

    // Mirror indexing without repeating the edge sample: -1 -> 1, n -> n-2.
    auto mrow = [h](int r) { return r < 0 ? -r : (r >= h ? 2 * h - 2 - r : r); };
    auto mcol = [w](int c) { return c < 0 ? -c : (c >= w ? 2 * w - 2 - c : c); };

    std::array<int, 256> fine{};
    std::array<int, 16> coarse{};
    for (int r = 0; r < h; ++r) {
        fine.fill(0);
        coarse.fill(0);
        for (int dr = -rr; dr <= rr; ++dr) {
            const std::uint8_t* src = &img.pixels[std::size_t(mrow(r + dr)) * w];
            for (int dc = -rc; dc <= rc; ++dc) {
                std::uint8_t v = src[mcol(dc)];
                ++fine[v];
                ++coarse[v >> 4];
            }
        }
        out.at(r, 0) = histogram_median(fine, coarse, rank);
        for (int c = 1; c < w; ++c) {
            const int cout = mcol(c - 1 - rc), cin = mcol(c + rc);
            for (int dr = -rr; dr <= rr; ++dr) {
                const std::uint8_t* src = &img.pixels[std::size_t(mrow(r + dr)) * w];
                std::uint8_t vo = src[cout], vi = src[cin];
                --fine[vo];
                --coarse[vo >> 4];
                ++fine[vi];
                ++coarse[vi >> 4];
            }
            out.at(r, c) = histogram_median(fine, coarse, rank);
        }
    }
    return out;
}

}  // namespace ftc
