#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sputnik/harness.hpp"

namespace sputnik::bench {

/// One long-format plot row.
struct PlotPoint {
    std::string algorithm;
    std::string strategy;
    std::uint64_t seed = 0;
    std::size_t generation = 0;
    double hypervolume = 0.0;
};

/// Throws UsageError when there are no traces or a trace has no generations.
std::vector<PlotPoint> plot_points(std::span<const RunTrace> traces);

std::string plot_data_csv(std::span<const PlotPoint> points);
std::vector<PlotPoint> parse_plot_data_csv(std::string_view text);

/// Per-series ("algorithm/strategy") median and mean hypervolume per generation.
struct SeriesSummary {
    std::string label;
    std::vector<double> median;
    std::vector<double> mean;
};

std::vector<SeriesSummary> summarize_series(std::span<const PlotPoint> points);
std::string series_summary_csv(std::span<const SeriesSummary> series);

/// Line chart of the median hypervolume per generation of every series.
std::string render_svg(std::span<const SeriesSummary> series, std::string_view title);

/// Writes plot_data.csv, plot_summary.csv and hypervolume.svg into `dir`.
void emit_plot_data(std::span<const RunTrace> traces, const std::filesystem::path& dir);

} // namespace sputnik::bench
