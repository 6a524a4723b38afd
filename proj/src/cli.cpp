#include "ftcount/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ftcount/csv.hpp"
#include "ftcount/overlay.hpp"

namespace fs = std::filesystem;

namespace ftc::cli {

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    write_file(path, j.dump(2) + "\n");
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(p);
    return p;
}

std::string describe(const CountReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld tracks in %zu regions (method=%s threshold=%d, %.3f s)",
                  r.total_tracks, r.regions.size(), to_string(r.config.method).c_str(),
                  r.config.threshold, r.elapsed_s);
    return buf;
}

bool supported_image(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return ext == ".png" || ext == ".tif" || ext == ".tiff";
}

}  // namespace

int cmd_count(const std::string& image_path, const PipelineConfig& cfg, bool overlay) {
    try {
        const GrayImage img = load_gray(image_path);
        const PipelineResult result = run_pipeline(img, cfg, fs::path(image_path).filename());
        const fs::path out = ensure_out_dir(cfg.output_dir);

        write_file(out / "counts.csv", counts_to_csv({to_count_row(result.report)}));
        if (overlay) {
            const fs::path name = fs::path(image_path).stem().string() + "_overlay.png";
            save_rgb(render_overlay(img, result), out / name);
        }
        std::cout << image_path << ": " << describe(result.report) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "count: " << e.what() << "\n";
        return 1;
    }
}

int cmd_batch(const std::string& input_dir, const PipelineConfig& cfg) {
    try {
        if (!fs::is_directory(input_dir)) {
            std::cerr << "batch: not a directory: " << input_dir << "\n";
            return 2;
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(input_dir))
            if (entry.is_regular_file() && supported_image(entry.path()))
                files.push_back(entry.path());
        if (files.empty()) {
            std::cerr << "batch: no supported images (png/tif/tiff) in " << input_dir << "\n";
            return 2;
        }
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

        // Images are independent; rows are still emitted in filename order.
        std::vector<CountRow> rows(files.size());
        std::vector<std::string> errors(files.size());
        std::atomic<std::size_t> next{0};
        const unsigned n_workers =
            std::max(1u, std::min(std::thread::hardware_concurrency(), unsigned(files.size())));
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= files.size()) return;
                try {
                    const GrayImage img = load_gray(files[i]);
                    rows[i] = to_count_row(count_image(img, cfg, files[i].filename()));
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < n_workers; ++t) pool.emplace_back(worker);
        worker();
        for (std::thread& t : pool) t.join();

        std::vector<CountRow> good;
        int failures = 0;
        for (std::size_t i = 0; i < files.size(); ++i) {
            if (errors[i].empty()) {
                good.push_back(rows[i]);
            } else {
                ++failures;
                std::cerr << "batch: " << files[i].filename().string() << ": " << errors[i] << "\n";
            }
        }

        std::string csv = counts_to_csv(good);
        if (!good.empty()) {
            long total = 0;
            for (const CountRow& r : good) total += r.n_tracks;
            const double mean = double(total) / double(good.size());
            const double sigma = std::sqrt(double(total)) / double(good.size());
            csv += "# images=" + std::to_string(good.size()) + " total=" + std::to_string(total) +
                   " mean=" + format_double(mean) + " sigma=" + format_double(sigma) + "\n";
            std::cout << "batch: " << good.size() << " images, " << total
                      << " tracks (mean/image " << mean << " +- " << sigma << ")\n";
        }
        const fs::path out = ensure_out_dir(cfg.output_dir);
        write_file(out / "counts.csv", csv);
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "batch: " << e.what() << "\n";
        return 1;
    }
}

int cmd_gqr(const std::string& ed_csv, const std::string& is_csv, double area_cm2,
            const std::string& out_dir) {
    try {
        auto counts_of = [](const std::string& path) {
            std::vector<long> counts;
            for (const CountRow& r : parse_counts_csv(read_file(path)))
                counts.push_back(r.n_tracks);
            return counts;
        };
        const std::vector<long> ed_counts = counts_of(ed_csv);
        const std::vector<long> is_counts = counts_of(is_csv);
        const TrackDensity ed = track_density(ed_counts, area_cm2);
        const TrackDensity is_ = track_density(is_counts, area_cm2);
        const GqrResult g = compute_gqr(ed, is_);

        std::printf("GQR = %.2f +- %.2f  (N_ed=%ld over %d images, N_is=%ld over %d images)\n",
                    g.gqr, g.sigma, g.n_ed, ed.images, g.n_is, is_.images);
        write_json(ensure_out_dir(out_dir) / "gqr.json",
                   {{"gqr", g.gqr},
                    {"sigma", g.sigma},
                    {"n_ed", g.n_ed},
                    {"n_is", g.n_is},
                    {"images_ed", ed.images},
                    {"images_is", is_.images},
                    {"rho_ed", ed.rho},
                    {"rho_is", is_.rho},
                    {"area_cm2", area_cm2}});
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "gqr: " << e.what() << "\n";
        return 1;
    }
}

int cmd_kstest(const std::string& counts_csv, const std::string& out_dir) {
    try {
        std::vector<long> counts;
        for (const CountRow& r : parse_counts_csv(read_file(counts_csv)))
            counts.push_back(r.n_tracks);
        const KsResult ks = poisson_ks(counts);
        std::printf("D = %.4f  p = %.4f  (Poisson rate %.3f, n=%d)\n", ks.d, ks.p_value, ks.rate,
                    ks.n);
        write_json(ensure_out_dir(out_dir) / "kstest.json",
                   {{"d", ks.d}, {"p_value", ks.p_value}, {"rate", ks.rate}, {"n", ks.n}});
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "kstest: " << e.what() << "\n";
        return 1;
    }
}

int cmd_age(const AgeParams& params, const std::string& out_dir) {
    try {
        const double age = ft_age_ma(params);
        std::printf("t = %.4f Ma\n", age);
        write_json(ensure_out_dir(out_dir) / "age.json",
                   {{"age_ma", age},
                    {"lambda", params.lambda_total},
                    {"lambda_f", params.lambda_f},
                    {"c238", params.c238},
                    {"r_u", params.r_u},
                    {"gqr", params.gqr},
                    {"rho_s", params.rho_s},
                    {"rho_i", params.rho_i}});
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "age: " << e.what() << "\n";
        return 1;
    }
}

int cmd_synth(const SynthSpec& spec, const std::string& out_dir) {
    try {
        const SynthResult result = generate(spec);
        const fs::path out = ensure_out_dir(out_dir);
        const std::string stem = "synth_" + std::to_string(spec.seed);
        save_gray(result.image, out / (stem + ".png"));

        nlohmann::json endpoints = nlohmann::json::array();
        for (const auto& [a, b] : result.endpoints)
            endpoints.push_back({{a.row, a.col}, {b.row, b.col}});
        write_json(out / (stem + ".json"), {{"seed", spec.seed},
                                            {"n_tracks", result.n_tracks},
                                            {"width", spec.width},
                                            {"height", spec.height},
                                            {"endpoints", endpoints}});
        std::cout << "wrote " << (out / (stem + ".png")).string() << " (" << result.n_tracks
                  << " tracks)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "synth: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ftc::cli
