#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ftcount/trackseg.hpp"

namespace ftc {

// One row of the counts table: header `image,n_tracks,n_regions,elapsed_s`.
struct CountRow {
    std::string image;
    long n_tracks = 0;
    int n_regions = 0;
    double elapsed_s = 0.0;

    friend bool operator==(const CountRow&, const CountRow&) = default;
};

inline constexpr const char* kCountsHeader = "image,n_tracks,n_regions,elapsed_s";

// Shortest representation that round-trips the exact double.
std::string format_double(double v);

CountRow to_count_row(const CountReport& report);

std::string counts_to_csv(const std::vector<CountRow>& rows);
// Accepts '#'-prefixed comment lines and blank lines; throws std::runtime_error
// naming the offending 1-based line on malformed input.
std::vector<CountRow> parse_counts_csv(const std::string& text);

nlohmann::json counts_to_json(const std::vector<CountRow>& rows);
std::vector<CountRow> counts_from_json(const nlohmann::json& j);

}  // namespace ftc
