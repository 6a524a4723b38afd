#pragma once

#include "ftcount/trackseg.hpp"

namespace ftc {

// Annotated view of a pipeline run: magenta outlines for single-track
// regions, green extremity dots and chords, blue routes, and a per-region
// track count label. Never mutates the report.
RgbImage render_overlay(const GrayImage& base, const PipelineResult& result);

}  // namespace ftc
