#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace uqo {

/// Mean cumulative_excess over runs, per algorithm, indexed by t.
struct ChartSeries {
    std::string algorithm;
    std::vector<std::int64_t> t;
    std::vector<double> mean_excess;
};

/// Parses a records CSV. Throws ConfigError naming the row on malformed
/// content, IoError if unreadable.
std::vector<ChartSeries> load_chart_series(const std::string& csv_path);

std::string render_chart_svg(const std::vector<ChartSeries>& series);

/// Renders the CSV to an SVG file; nothing is written on error.
void emit_chart(const std::string& csv_path, const std::string& out_path);

}  // namespace uqo
