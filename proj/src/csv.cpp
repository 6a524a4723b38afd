#include "ftcount/csv.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ftc {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CountRow to_count_row(const CountReport& report) {
    return {report.image_id, report.total_tracks, int(report.regions.size()), report.elapsed_s};
}

std::string counts_to_csv(const std::vector<CountRow>& rows) {
    std::string out = kCountsHeader;
    out += '\n';
    for (const CountRow& r : rows) {
        out += r.image;
        out += ',';
        out += std::to_string(r.n_tracks);
        out += ',';
        out += std::to_string(r.n_regions);
        out += ',';
        out += format_double(r.elapsed_s);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::runtime_error("counts csv line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T parse_number(const std::string& s, int line_no, const char* field) {
    T value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        fail(line_no, std::string("cannot parse ") + field + " from '" + s + "'");
    return value;
}

}  // namespace

std::vector<CountRow> parse_counts_csv(const std::string& text) {
    std::istringstream in(text);
    std::vector<CountRow> rows;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kCountsHeader)
                fail(line_no, "expected header '" + std::string(kCountsHeader) + "', got '" +
                                  line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 4)
            fail(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        CountRow row;
        row.image = fields[0];
        row.n_tracks = parse_number<long>(fields[1], line_no, "n_tracks");
        row.n_regions = parse_number<int>(fields[2], line_no, "n_regions");
        row.elapsed_s = parse_number<double>(fields[3], line_no, "elapsed_s");
        if (row.n_tracks < 0) fail(line_no, "n_tracks must be >= 0");
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::runtime_error("counts csv: missing header");
    return rows;
}

nlohmann::json counts_to_json(const std::vector<CountRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CountRow& r : rows)
        arr.push_back({{"image", r.image},
                       {"n_tracks", r.n_tracks},
                       {"n_regions", r.n_regions},
                       {"elapsed_s", r.elapsed_s}});
    return arr;
}

std::vector<CountRow> counts_from_json(const nlohmann::json& j) {
    std::vector<CountRow> rows;
    for (const auto& item : j) {
        rows.push_back({item.at("image").get<std::string>(), item.at("n_tracks").get<long>(),
                        item.at("n_regions").get<int>(), item.at("elapsed_s").get<double>()});
    }
    return rows;
}

}  // namespace ftc
