#include "ftcount/overlay.hpp"

#include <string>

namespace ftc {

namespace {

// 3x5 digit glyphs, one row per byte (3 low bits).
constexpr std::uint8_t kDigits[10][5] = {
    {0b111, 0b101, 0b101, 0b101, 0b111},  // 0
    {0b010, 0b110, 0b010, 0b010, 0b111},  // 1
    {0b111, 0b001, 0b111, 0b100, 0b111},  // 2
    {0b111, 0b001, 0b111, 0b001, 0b111},  // 3
    {0b101, 0b101, 0b111, 0b001, 0b001},  // 4
    {0b111, 0b100, 0b111, 0b001, 0b111},  // 5
    {0b111, 0b100, 0b111, 0b101, 0b111},  // 6
    {0b111, 0b001, 0b010, 0b010, 0b010},  // 7
    {0b111, 0b101, 0b111, 0b101, 0b111},  // 8
    {0b111, 0b101, 0b111, 0b001, 0b111},  // 9
};

struct Color {
    std::uint8_t r, g, b;
};
constexpr Color kMagenta{255, 0, 255};
constexpr Color kGreen{0, 255, 0};
constexpr Color kBlue{40, 90, 255};
constexpr Color kWhite{255, 255, 255};

void put(RgbImage& img, int r, int c, Color col) {
    if (r >= 0 && r < img.height && c >= 0 && c < img.width) img.put(r, c, col.r, col.g, col.b);
}

void dot(RgbImage& img, PixelCoord p, Color col) {
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) put(img, p.row + dr, p.col + dc, col);
}

void draw_number(RgbImage& img, int row, int col, long value, Color col_rgb, int scale = 2) {
    const std::string text = std::to_string(value);
    int x = col;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            const std::uint8_t* glyph = kDigits[ch - '0'];
            for (int gr = 0; gr < 5; ++gr)
                for (int gc = 0; gc < 3; ++gc)
                    if ((glyph[gr] >> (2 - gc)) & 1)
                        for (int sr = 0; sr < scale; ++sr)
                            for (int sc = 0; sc < scale; ++sc)
                                put(img, row + gr * scale + sr, x + gc * scale + sc, col_rgb);
        }
        x += 4 * scale;
    }
}

}  // namespace

RgbImage render_overlay(const GrayImage& base, const PipelineResult& result) {
    RgbImage img(base);

    for (std::size_t i = 0; i < result.report.regions.size(); ++i) {
        const RegionCount& rc = result.report.regions[i];
        const Region& region = result.regions[i];

        if (rc.degenerate == Degenerate::NoIntersections) {
            // Single-track regions get their boundary traced in magenta.
            for (const PixelCoord& p : region.pixels) {
                bool boundary = false;
                constexpr int fdr[4] = {-1, 1, 0, 0};
                constexpr int fdc[4] = {0, 0, -1, 1};
                for (int k = 0; k < 4 && !boundary; ++k) {
                    const int nr = p.row + fdr[k], nc = p.col + fdc[k];
                    boundary = nr < 0 || nr >= result.labeled.height || nc < 0 ||
                               nc >= result.labeled.width ||
                               result.labeled.at(nr, nc) != region.label;
                }
                if (boundary) put(img, p.row, p.col, kMagenta);
            }
        }

        for (const TrackCandidate& cand : rc.candidates) {
            for (const PixelCoord& p : cand.route.path) put(img, p.row, p.col, kBlue);
            for (const PixelCoord& p : cand.chord.raster) put(img, p.row, p.col, kGreen);
            dot(img, cand.e0, kGreen);
            dot(img, cand.e1, kGreen);
        }

        draw_number(img, std::max(0, region.min_row - 12), std::max(0, region.min_col - 2),
                    rc.n_tracks, kWhite);
    }
    return img;
}

}  // namespace ftc
