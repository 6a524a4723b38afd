#include "ftcount/trackseg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace ftc {

namespace {

constexpr int kDr[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kDc[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
const double kSqrt2 = std::sqrt(2.0);

// Dense occupancy grid over the skeleton bounding box.
struct SkelGrid {
    int min_row = 0, min_col = 0, h = 0, w = 0;
    std::vector<std::uint8_t> on;

    explicit SkelGrid(const Skeleton& skel) {
        if (skel.pixels.empty()) throw std::invalid_argument("empty skeleton");
        int max_row = skel.pixels.front().row, max_col = skel.pixels.front().col;
        min_row = max_row;
        min_col = max_col;
        for (const PixelCoord& p : skel.pixels) {
            min_row = std::min(min_row, p.row);
            max_row = std::max(max_row, p.row);
            min_col = std::min(min_col, p.col);
            max_col = std::max(max_col, p.col);
        }
        h = max_row - min_row + 1;
        w = max_col - min_col + 1;
        on.assign(std::size_t(h) * w, 0);
        for (const PixelCoord& p : skel.pixels) on[index(p)] = 1;
    }

    std::size_t index(PixelCoord p) const {
        return std::size_t(p.row - min_row) * w + (p.col - min_col);
    }
    bool inside(PixelCoord p) const {
        return p.row >= min_row && p.row < min_row + h && p.col >= min_col && p.col < min_col + w;
    }
    bool has(PixelCoord p) const { return inside(p) && on[index(p)] != 0; }
};

Route dijkstra(const SkelGrid& grid, PixelCoord a, PixelCoord b) {
    if (!grid.has(a) || !grid.has(b))
        throw std::invalid_argument("shortest_route: endpoint is not a skeleton pixel");
    if (a == b) return {{a}, 0.0};

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(grid.on.size(), inf);
    std::vector<std::int32_t> parent(grid.on.size(), -1);
    std::vector<std::uint8_t> settled(grid.on.size(), 0);

    using Node = std::tuple<double, int, int>;  // cost, row, col: ties settle lexicographically
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> pq;
    dist[grid.index(a)] = 0.0;
    pq.emplace(0.0, a.row, a.col);

    while (!pq.empty()) {
        const auto [d, r, c] = pq.top();
        pq.pop();
        const PixelCoord cur{r, c};
        const std::size_t ci = grid.index(cur);
        if (settled[ci]) continue;
        settled[ci] = 1;
        if (cur == b) break;
        for (int k = 0; k < 8; ++k) {
            const PixelCoord nb{r + kDr[k], c + kDc[k]};
            if (!grid.has(nb)) continue;
            const std::size_t ni = grid.index(nb);
            if (settled[ni]) continue;
            const double nd = d + ((kDr[k] != 0 && kDc[k] != 0) ? kSqrt2 : 1.0);
            if (nd < dist[ni]) {
                dist[ni] = nd;
                parent[ni] = std::int32_t(ci);
                pq.emplace(nd, nb.row, nb.col);
            }
        }
    }

    const std::size_t bi = grid.index(b);
    if (dist[bi] == inf)
        throw std::runtime_error("shortest_route: endpoints lie in disconnected skeleton parts");

    Route route;
    route.cost = dist[bi];
    for (std::int32_t i = std::int32_t(bi); i >= 0; i = parent[i])
        route.path.push_back({grid.min_row + i / grid.w, grid.min_col + i % grid.w});
    std::reverse(route.path.begin(), route.path.end());
    return route;
}

}  // namespace

Route shortest_route(const Skeleton& skel, PixelCoord a, PixelCoord b) {
    return dijkstra(SkelGrid(skel), a, b);
}

Chord rasterize_chord(PixelCoord a, PixelCoord b) {
    Chord chord;
    chord.a = a;
    chord.b = b;
    chord.euclid = std::hypot(double(a.row - b.row), double(a.col - b.col));

    int r = a.row, c = a.col;
    const int dc = std::abs(b.col - c), sc = c < b.col ? 1 : -1;
    const int dr = -std::abs(b.row - r), sr = r < b.row ? 1 : -1;
    int err = dc + dr;
    for (;;) {
        chord.raster.push_back({r, c});
        if (r == b.row && c == b.col) break;
        const int e2 = 2 * err;
        if (e2 >= dr) {
            err += dr;
            c += sc;
        }
        if (e2 <= dc) {
            err += dc;
            r += sr;
        }
    }
    return chord;
}

long inner_area(const Route& route, const Chord& chord) {
    if (route.path.empty()) throw std::invalid_argument("inner_area: empty route");
    const PixelCoord rf = route.path.front(), rb = route.path.back();
    const bool match = (rf == chord.a && rb == chord.b) || (rf == chord.b && rb == chord.a);
    if (!match) throw std::invalid_argument("inner_area: route and chord endpoints differ");

    int min_row = rf.row, max_row = rf.row, min_col = rf.col, max_col = rf.col;
    auto extend = [&](const std::vector<PixelCoord>& pts) {
        for (const PixelCoord& p : pts) {
            min_row = std::min(min_row, p.row);
            max_row = std::max(max_row, p.row);
            min_col = std::min(min_col, p.col);
            max_col = std::max(max_col, p.col);
        }
    };
    extend(route.path);
    extend(chord.raster);

    const int w = max_col - min_col + 3, h = max_row - min_row + 3;  // 1-pixel outside ring
    std::vector<std::uint8_t> grid(std::size_t(w) * h, 0);  // 1 = curve, 2 = outside
    auto cell = [&](int r, int c) -> std::uint8_t& {
        return grid[std::size_t(r - min_row + 1) * w + (c - min_col + 1)];
    };
    for (const PixelCoord& p : route.path) cell(p.row, p.col) = 1;
    for (const PixelCoord& p : chord.raster) cell(p.row, p.col) = 1;

    // Outside flood fill, 4-connected so it cannot leak across the 8-connected curve.
    std::deque<std::pair<int, int>> queue;
    grid[0] = 2;
    queue.emplace_back(0, 0);
    while (!queue.empty()) {
        const auto [gr, gc] = queue.front();
        queue.pop_front();
        constexpr int fdr[4] = {-1, 1, 0, 0};
        constexpr int fdc[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            const int nr = gr + fdr[k], nc = gc + fdc[k];
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
            std::uint8_t& g = grid[std::size_t(nr) * w + nc];
            if (g == 0) {
                g = 2;
                queue.emplace_back(nr, nc);
            }
        }
    }

    long enclosed = 0;
    for (std::uint8_t g : grid) enclosed += g == 0;
    return enclosed;
}

RegionCount pair_extremities(const Skeleton& skel,
                             const std::map<PixelCoord, PixelClass>& classes) {
    std::vector<PixelCoord> ext, inter;
    for (const auto& [p, cls] : classes) {
        if (cls == PixelClass::Extremity) ext.push_back(p);
        else if (cls == PixelClass::Intersection) inter.push_back(p);
    }
    if (inter.empty())
        throw std::invalid_argument("pair_extremities: skeleton has no intersection pixels");
    if (ext.empty()) return {skel.source_label, 0, {}, Degenerate::ClosedLoop};

    const SkelGrid grid(skel);
    auto touches_intersection = [&](const Route& r) {
        for (const PixelCoord& p : r.path)
            if (std::binary_search(inter.begin(), inter.end(), p)) return true;
        return false;
    };

    struct Pair {
        std::size_t i, j;
        Route route;
        Chord chord;
        long area;
        bool via;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < ext.size(); ++i) {
        for (std::size_t j = i + 1; j < ext.size(); ++j) {
            Route r = dijkstra(grid, ext[i], ext[j]);
            Chord ch = rasterize_chord(ext[i], ext[j]);
            const long area = inner_area(r, ch);
            const bool via = touches_intersection(r);
            pairs.push_back({i, j, std::move(r), std::move(ch), area, via});
        }
    }

    RegionCount out{skel.source_label, 0, {}, Degenerate::None};
    std::vector<std::uint8_t> used(ext.size(), 0);
    std::size_t remaining = ext.size();
    while (remaining >= 2) {
        // Enumeration order is lexicographic in (e0, e1), which settles area ties.
        const Pair* best = nullptr;
        for (const Pair& p : pairs) {
            if (used[p.i] || used[p.j]) continue;
            if (!best || p.area < best->area) best = &p;
        }
        used[best->i] = used[best->j] = 1;
        remaining -= 2;
        out.candidates.push_back({ext[best->i], ext[best->j], best->route, best->chord,
                                  best->area, false, best->via});
    }
    if (remaining == 1) {
        std::size_t lone = 0;
        while (used[lone]) ++lone;
        const PixelCoord e = ext[lone];
        // Nearest intersection; sorted scan keeps equal-distance ties lexicographic.
        PixelCoord target = inter.front();
        double best_d = std::numeric_limits<double>::infinity();
        for (const PixelCoord& q : inter) {
            const double d = std::hypot(double(q.row - e.row), double(q.col - e.col));
            if (d < best_d) {
                best_d = d;
                target = q;
            }
        }
        Route r = dijkstra(grid, e, target);
        Chord ch = rasterize_chord(e, target);
        const long area = inner_area(r, ch);
        const bool via = touches_intersection(r);
        out.candidates.push_back({e, target, std::move(r), std::move(ch), area, true, via});
    }
    out.n_tracks = int(out.candidates.size());
    return out;
}

RegionCount count_region(const Region& region) {
    const Skeleton skel = skeletonize(region);
    if (skel.pixels.size() == 1)
        return {region.label, 0, {}, Degenerate::SinglePixel};

    const auto classes = classify_pixels(skel);
    std::vector<PixelCoord> ext;
    bool any_intersection = false;
    for (const auto& [p, cls] : classes) {
        if (cls == PixelClass::Extremity) ext.push_back(p);
        else if (cls == PixelClass::Intersection) any_intersection = true;
    }

    if (!any_intersection) {
        if (ext.size() == 2) {
            Route r = shortest_route(skel, ext[0], ext[1]);
            Chord ch = rasterize_chord(ext[0], ext[1]);
            const long area = inner_area(r, ch);
            TrackCandidate cand{ext[0], ext[1], std::move(r), std::move(ch), area, false, false};
            RegionCount out{region.label, 1, {}, Degenerate::NoIntersections};
            out.candidates.push_back(std::move(cand));
            return out;
        }
        // Pure cycle (or nothing to anchor a candidate on): no external points.
        return {region.label, 0, {}, Degenerate::ClosedLoop};
    }
    return pair_extremities(skel, classes);
}

PipelineResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg,
                            const std::string& image_id) {
    const auto t0 = std::chrono::steady_clock::now();

    const GrayImage filtered = median_filter(img, cfg.window_rows, cfg.window_cols);

    ThresholdResult thr;
    bool empty_foreground = false;
    if (cfg.manual_threshold) {
        thr = {ThresholdMethod::Manual, *cfg.manual_threshold, 0, cfg.polarity};
    } else {
        const Histogram hist = compute_histogram(filtered);
        try {
            switch (cfg.method) {
                case ThresholdMethod::Otsu: thr = threshold_otsu(hist); break;
                case ThresholdMethod::Yen: thr = threshold_yen(hist); break;
                case ThresholdMethod::Li: thr = threshold_li(hist); break;
                case ThresholdMethod::Isodata: thr = threshold_isodata(hist); break;
                case ThresholdMethod::Manual:
                    throw std::invalid_argument("manual method requires a threshold value");
            }
            thr.polarity = cfg.polarity;
        } catch (const std::domain_error&) {
            // Nothing to separate in a single-level image.
            empty_foreground = true;
            thr = {cfg.method, 0, 0, cfg.polarity};
        }
    }

    PipelineResult result;
    result.mask = empty_foreground ? BinaryImage(img.width, img.height, false)
                                   : apply_threshold(filtered, thr);
    result.mask = remove_small_objects(result.mask, cfg.min_size);
    result.mask = fill_holes(result.mask);
    result.mask = clear_lower_right(result.mask);
    result.labeled = label_regions(result.mask);
    result.regions = extract_regions(result.labeled);

    CountReport& report = result.report;
    report.image_id = image_id;
    report.config = {cfg.manual_threshold ? ThresholdMethod::Manual : cfg.method, thr.threshold,
                     cfg.window_rows, cfg.window_cols, cfg.min_size, cfg.polarity};
    for (const Region& region : result.regions) {
        report.regions.push_back(count_region(region));
        report.total_tracks += report.regions.back().n_tracks;
    }
    report.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

CountReport count_image(const GrayImage& img, const PipelineConfig& cfg,
                        const std::string& image_id) {
    return run_pipeline(img, cfg, image_id).report;
}

}  // namespace ftc
