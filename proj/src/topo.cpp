#include "ftcount/topo.hpp"

#include <array>
#include <bit>
#include <deque>
#include <stdexcept>

namespace ftc {

namespace {

// 8-neighborhood offsets; the bit order is shared by the thinning LUT.
constexpr int kDr[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kDc[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

}  // namespace

LabeledImage label_regions(const BinaryImage& bin) {
    const int w = bin.width, h = bin.height;
    LabeledImage out{w, h, std::vector<std::int32_t>(std::size_t(w) * h, 0), 0};
    std::deque<PixelCoord> queue;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!bin.at(r, c) || out.at(r, c) != 0) continue;
            const std::int32_t label = ++out.count;
            out.labels[std::size_t(r) * w + c] = label;
            queue.push_back({r, c});
            while (!queue.empty()) {
                const auto [pr, pc] = queue.front();
                queue.pop_front();
                for (int k = 0; k < 8; ++k) {
                    const int nr = pr + kDr[k], nc = pc + kDc[k];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    std::int32_t& l = out.labels[std::size_t(nr) * w + nc];
                    if (bin.at(nr, nc) && l == 0) {
                        l = label;
                        queue.push_back({nr, nc});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Region> extract_regions(const LabeledImage& labeled) {
    std::vector<Region> regions(std::size_t(labeled.count));
    for (int i = 0; i < labeled.count; ++i) regions[i].label = i + 1;
    for (int r = 0; r < labeled.height; ++r) {
        for (int c = 0; c < labeled.width; ++c) {
            const std::int32_t l = labeled.at(r, c);
            if (l == 0) continue;
            Region& reg = regions[std::size_t(l) - 1];
            if (reg.pixels.empty()) {
                reg.min_row = reg.max_row = r;
                reg.min_col = reg.max_col = c;
            } else {
                reg.min_row = std::min(reg.min_row, r);
                reg.max_row = std::max(reg.max_row, r);
                reg.min_col = std::min(reg.min_col, c);
                reg.max_col = std::max(reg.max_col, c);
            }
            reg.pixels.push_back({r, c});
        }
    }
    return regions;
}

std::vector<Region> extract_regions(const BinaryImage& bin) {
    return extract_regions(label_regions(bin));
}

namespace {

// A foreground pixel is (8,4)-simple iff its foreground neighbors form one
// 8-connected set and its background neighbors form one 4-connected set that
// touches an edge neighbor. Deleting a simple pixel cannot change the
// component structure of either phase.
std::array<bool, 256> build_simple_lut() {
    std::array<bool, 256> lut{};
    // Ring positions in 4-adjacency cycle order around the center.
    constexpr int ring[8] = {0, 1, 2, 4, 7, 6, 5, 3};  // NW N NE E SE S SW W
    for (unsigned config = 0; config < 256; ++config) {
        const auto fg = [&](int k) { return (config >> k) & 1u; };

        // 8-connected components of the foreground neighbors.
        int fg_components = 0;
        unsigned seen = 0;
        for (int k = 0; k < 8; ++k) {
            if (!fg(k) || (seen >> k) & 1u) continue;
            ++fg_components;
            unsigned stack = 1u << k;
            while (stack) {
                const int i = std::countr_zero(stack);
                stack &= stack - 1;
                seen |= 1u << i;
                for (int j = 0; j < 8; ++j) {
                    if (!fg(j) || (seen >> j) & 1u || (stack >> j) & 1u) continue;
                    if (std::abs(kDr[i] - kDr[j]) <= 1 && std::abs(kDc[i] - kDc[j]) <= 1)
                        stack |= 1u << j;
                }
            }
        }

        // 4-connected background runs around the ring cycle, counting only
        // runs containing an edge neighbor (N, W, E, S = bits 1,3,4,6).
        int bg_components = 0;
        for (int s = 0; s < 8; ++s) {
            if (fg(ring[s])) continue;
            if (!fg(ring[(s + 7) % 8])) continue;  // not the start of a run
            bool touches_edge = false;
            for (int q = s; !fg(ring[q % 8]); ++q) {
                const int k = ring[q % 8];
                if (k == 1 || k == 3 || k == 4 || k == 6) touches_edge = true;
                if (q == s + 7) break;
            }
            if (touches_edge) ++bg_components;
        }
        // config 0 finds no run start (no foreground predecessor exists) and
        // config 0xFF has no background at all; both end up non-simple.
        lut[config] = fg_components == 1 && bg_components == 1;
    }
    return lut;
}

const std::array<bool, 256>& simple_lut() {
    static const std::array<bool, 256> lut = build_simple_lut();
    return lut;
}

}  // namespace

Skeleton skeletonize(const Region& region) {
    if (region.pixels.empty()) throw std::invalid_argument("skeletonize: empty region");

    const int bw = region.max_col - region.min_col + 1;
    const int bh = region.max_row - region.min_row + 1;
    const int gw = bw + 2, gh = bh + 2;  // 1-pixel background apron
    std::vector<std::uint8_t> grid(std::size_t(gw) * gh, 0);
    for (const PixelCoord& p : region.pixels)
        grid[std::size_t(p.row - region.min_row + 1) * gw + (p.col - region.min_col + 1)] = 1;

    const auto& lut = simple_lut();
    auto config_at = [&](int r, int c) {
        unsigned config = 0;
        for (int k = 0; k < 8; ++k)
            config |= unsigned(grid[std::size_t(r + kDr[k]) * gw + (c + kDc[k])]) << k;
        return config;
    };

    // Directional sub-passes peel one boundary layer per cycle; deleting
    // sequentially with a live neighborhood keeps every deletion simple.
    constexpr int kFaceDr[4] = {-1, 1, 0, 0};
    constexpr int kFaceDc[4] = {0, 0, -1, 1};
    bool changed = true;
    while (changed) {
        changed = false;
        for (int face = 0; face < 4; ++face) {
            for (int r = 1; r <= bh; ++r) {
                for (int c = 1; c <= bw; ++c) {
                    if (!grid[std::size_t(r) * gw + c]) continue;
                    if (grid[std::size_t(r + kFaceDr[face]) * gw + (c + kFaceDc[face])]) continue;
                    const unsigned config = config_at(r, c);
                    if (std::popcount(config) < 2) continue;  // endpoints stay
                    if (lut[config]) {
                        grid[std::size_t(r) * gw + c] = 0;
                        changed = true;
                    }
                }
            }
        }
    }

    Skeleton skel;
    skel.source_label = region.label;
    for (int r = 1; r <= bh; ++r)
        for (int c = 1; c <= bw; ++c)
            if (grid[std::size_t(r) * gw + c])
                skel.pixels.push_back({r - 1 + region.min_row, c - 1 + region.min_col});
    return skel;
}

std::map<PixelCoord, PixelClass> classify_pixels(const Skeleton& skel) {
    if (skel.pixels.empty()) throw std::invalid_argument("classify_pixels: empty skeleton");
    std::map<PixelCoord, PixelClass> out;
    for (const PixelCoord& p : skel.pixels) out[p] = PixelClass::Isolated;
    for (auto& [p, cls] : out) {
        int n = 0;
        for (int k = 0; k < 8; ++k)
            n += out.count({p.row + kDr[k], p.col + kDc[k]});
        cls = n == 0   ? PixelClass::Isolated
              : n == 1 ? PixelClass::Extremity
              : n == 2 ? PixelClass::Common
                       : PixelClass::Intersection;
    }
    return out;
}

}  // namespace ftc
