#pragma once

#include <string>

#include "ftcount/ftstats.hpp"
#include "ftcount/synth.hpp"
#include "ftcount/trackseg.hpp"

namespace ftc::cli {

// Subcommand bodies. Each returns a process exit code: 0 when every requested
// output was written, 1 on runtime/I-O failure, 2 on usage errors.
int cmd_count(const std::string& image_path, const PipelineConfig& cfg, bool overlay);
int cmd_batch(const std::string& input_dir, const PipelineConfig& cfg);
int cmd_gqr(const std::string& ed_csv, const std::string& is_csv, double area_cm2,
            const std::string& out_dir);
int cmd_kstest(const std::string& counts_csv, const std::string& out_dir);
int cmd_age(const AgeParams& params, const std::string& out_dir);
int cmd_synth(const SynthSpec& spec, const std::string& out_dir);

}  // namespace ftc::cli
