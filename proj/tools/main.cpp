#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "ftcount/cli.hpp"

namespace {

// Shared pipeline flags for count/batch.
void add_pipeline_options(CLI::App* cmd, ftc::PipelineConfig& cfg, std::string& method,
                          std::string& window, std::string& polarity, int& manual_threshold) {
    cmd->add_option("--method", method, "Binarization method: otsu|yen|li|isodata")
        ->check(CLI::IsMember({"otsu", "yen", "li", "isodata"}))
        ->capture_default_str();
    cmd->add_option("--threshold", manual_threshold, "Manual threshold override (0..255)")
        ->check(CLI::Range(0, 255));
    cmd->add_option("--window", window, "Median window KxL, both odd")->capture_default_str();
    cmd->add_option("--min-size", cfg.min_size, "Smallest surviving region, px")
        ->capture_default_str();
    cmd->add_option("--polarity", polarity, "Foreground polarity: dark|bright")
        ->check(CLI::IsMember({"dark", "bright"}))
        ->capture_default_str();
    cmd->add_option("--area", cfg.area_cm2, "Physical area per image, cm^2");
    cmd->add_option("--out", cfg.output_dir, "Output directory")->capture_default_str();
}

void finish_pipeline_config(ftc::PipelineConfig& cfg, const std::string& method,
                            const std::string& window, const std::string& polarity,
                            int manual_threshold) {
    cfg.method = ftc::threshold_method_from_string(method);
    cfg.polarity = polarity == "bright" ? ftc::Polarity::BrightForeground
                                        : ftc::Polarity::DarkForeground;
    if (manual_threshold >= 0) cfg.manual_threshold = manual_threshold;
    const std::size_t x = window.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--window", "expected KxL, e.g. 7x7");
    try {
        cfg.window_rows = std::stoi(window.substr(0, x));
        cfg.window_cols = std::stoi(window.substr(x + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--window", "expected KxL, e.g. 7x7");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ftcount: fission-track counting in mineral photomicrographs"};
    app.require_subcommand(1);

    // Optional key=value config file; explicit flags always win.
    std::string default_config;
    if (const char* env = std::getenv("FTCOUNT_CONFIG")) default_config = env;
    app.set_config("--config", default_config, "Configuration file (key=value)", false);

    ftc::PipelineConfig cfg;
    std::string method = "isodata", window = "7x7", polarity = "dark";
    int manual_threshold = -1;
    bool overlay = false;

    std::string count_image_path;
    CLI::App* count = app.add_subcommand("count", "Count tracks in one photomicrograph");
    count->add_option("image", count_image_path, "Input image (png/tif)")->required();
    add_pipeline_options(count, cfg, method, window, polarity, manual_threshold);
    count->add_flag("--overlay", overlay, "Also write an annotated overlay image");

    std::string batch_dir;
    CLI::App* batch = app.add_subcommand("batch", "Count tracks in every image of a directory");
    batch->add_option("dir", batch_dir, "Directory of images")->required();
    add_pipeline_options(batch, cfg, method, window, polarity, manual_threshold);

    std::string ed_csv, is_csv, gqr_out = ".";
    double gqr_area = 0.0;
    CLI::App* gqr = app.add_subcommand("gqr", "GQR efficiency factor from two counts CSVs");
    gqr->add_option("--ed", ed_csv, "Counts CSV for the external detector (mica)")->required();
    gqr->add_option("--is", is_csv, "Counts CSV for the internal surface (apatite)")->required();
    gqr->add_option("--area", gqr_area, "Physical area per image, cm^2")->required();
    gqr->add_option("--out", gqr_out, "Output directory")->capture_default_str();

    std::string ks_csv, ks_out = ".";
    CLI::App* kstest = app.add_subcommand("kstest", "KS test of per-image counts vs Poisson");
    kstest->add_option("counts", ks_csv, "Counts CSV")->required();
    kstest->add_option("--out", ks_out, "Output directory")->capture_default_str();

    ftc::AgeParams age_params;
    std::string age_out = ".";
    CLI::App* age = app.add_subcommand("age", "Standardless fission-track age");
    age->add_option("--lambda", age_params.lambda_total, "Total decay constant, 1/a")->required();
    age->add_option("--c238", age_params.c238, "Isotopic concentration of 238U")->required();
    age->add_option("--lambda-f", age_params.lambda_f, "Spontaneous fission decay constant, 1/a")
        ->capture_default_str();
    age->add_option("--r-u", age_params.r_u, "Induced fissions per uranium atom")
        ->capture_default_str();
    age->add_option("--gqr", age_params.gqr, "GQR efficiency factor")->required();
    age->add_option("--rho-s", age_params.rho_s, "Spontaneous track density, tracks/cm^2")
        ->required();
    age->add_option("--rho-i", age_params.rho_i, "Induced track density, tracks/cm^2")->required();
    age->add_option("--out", age_out, "Output directory")->capture_default_str();

    ftc::SynthSpec synth_spec;
    std::string synth_out = ".", synth_size = "512x512";
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic test photomicrograph");
    synth->add_option("--seed", synth_spec.seed, "RNG seed")->capture_default_str();
    synth->add_option("--n-tracks", synth_spec.n_tracks, "Number of tracks")
        ->capture_default_str();
    synth->add_option("--size", synth_size, "Image size WxH")->capture_default_str();
    synth->add_option("--overlap", synth_spec.overlap_prob, "Crossing probability per track")
        ->capture_default_str();
    synth->add_option("--crossings", synth_spec.forced_crossings, "Forced crossing pairs")
        ->capture_default_str();
    synth->add_option("--noise", synth_spec.noise_amp, "Uniform noise amplitude")
        ->capture_default_str();
    synth->add_option("--out", synth_out, "Output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed() || batch->parsed())
            finish_pipeline_config(cfg, method, window, polarity, manual_threshold);
        if (count->parsed()) return ftc::cli::cmd_count(count_image_path, cfg, overlay);
        if (batch->parsed()) return ftc::cli::cmd_batch(batch_dir, cfg);
        if (gqr->parsed()) return ftc::cli::cmd_gqr(ed_csv, is_csv, gqr_area, gqr_out);
        if (kstest->parsed()) return ftc::cli::cmd_kstest(ks_csv, ks_out);
        if (age->parsed()) return ftc::cli::cmd_age(age_params, age_out);
        if (synth->parsed()) {
            const std::size_t x = synth_size.find('x');
            if (x == std::string::npos)
                throw CLI::ValidationError("--size", "expected WxH, e.g. 512x512");
            synth_spec.width = std::stoi(synth_size.substr(0, x));
            synth_spec.height = std::stoi(synth_size.substr(x + 1));
            return ftc::cli::cmd_synth(synth_spec, synth_out);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
    return 0;
}
