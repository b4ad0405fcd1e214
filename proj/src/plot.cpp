#include "sputnik/plot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "sputnik/csv.hpp"
#include "sputnik/errors.hpp"

namespace sputnik::bench {

std::vector<PlotPoint> plot_points(std::span<const RunTrace> traces) {
    if (traces.empty()) throw UsageError("no traces to plot");
    std::vector<PlotPoint> out;
    for (const auto& t : traces) {
        if (t.rows.empty()) throw UsageError("trace has an empty generation range");
        for (const auto& row : t.rows) {
            out.push_back({std::string(to_string(t.algorithm)), std::string(to_string(t.strategy)), t.seed,
                           row.generation, row.hypervolume});
        }
    }
    return out;
}

std::string plot_data_csv(std::span<const PlotPoint> points) {
    std::string out = "algorithm,strategy,seed,generation,hypervolume\n";
    for (const auto& p : points) {
        out += p.algorithm + ',' + p.strategy + ',' + std::to_string(p.seed) + ',' + std::to_string(p.generation) +
               ',' + format_number(p.hypervolume) + '\n';
    }
    return out;
}

namespace {

template <class T>
T parse_field(const std::string& s, std::size_t line) {
    T value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("plot data line " + std::to_string(line) + ": cannot parse '" + s + "'");
    }
    return value;
}

} // namespace

std::vector<PlotPoint> parse_plot_data_csv(std::string_view text) {
    std::vector<PlotPoint> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (n == 1) {
            if (line.rfind("algorithm,strategy,seed,generation,hypervolume", 0) != 0) {
                throw ConfigError("plot data has an unexpected header");
            }
            continue;
        }
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw ConfigError("plot data line " + std::to_string(n) + ": expected 5 fields");
        out.push_back({f[0], f[1], parse_field<std::uint64_t>(f[2], n), parse_field<std::size_t>(f[3], n),
                       parse_field<double>(f[4], n)});
    }
    if (out.empty()) throw UsageError("plot data has no rows");
    return out;
}

std::vector<SeriesSummary> summarize_series(std::span<const PlotPoint> points) {
    std::map<std::string, std::map<std::size_t, std::vector<double>>> grouped;
    std::vector<std::string> order;
    for (const auto& p : points) {
        const std::string label = p.algorithm + "/" + p.strategy;
        if (!grouped.contains(label)) order.push_back(label);
        grouped[label][p.generation].push_back(p.hypervolume);
    }
    std::vector<SeriesSummary> out;
    for (const auto& label : order) {
        SeriesSummary s{label, {}, {}};
        for (auto& [gen, values] : grouped[label]) {
            std::sort(values.begin(), values.end());
            const std::size_t n = values.size();
            s.median.push_back(n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]));
            double sum = 0.0;
            for (double v : values) sum += v;
            s.mean.push_back(sum / static_cast<double>(n));
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string series_summary_csv(std::span<const SeriesSummary> series) {
    std::string out = "series,generation,median_hypervolume,mean_hypervolume\n";
    for (const auto& s : series) {
        for (std::size_t g = 0; g < s.median.size(); ++g) {
            out += s.label + ',' + std::to_string(g) + ',' + format_number(s.median[g]) + ',' +
                   format_number(s.mean[g]) + '\n';
        }
    }
    return out;
}

std::string render_svg(std::span<const SeriesSummary> series, std::string_view title) {
    if (series.empty()) throw UsageError("nothing to plot");
    constexpr double width = 720, height = 440, left = 70, right = 170, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    std::size_t max_gen = 1;
    double lo = 1e300, hi = -1e300;
    for (const auto& s : series) {
        max_gen = std::max(max_gen, s.median.size());
        for (double v : s.median) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto x = [&](std::size_t g) {
        return left + plot_w * (max_gen > 1 ? static_cast<double>(g) / static_cast<double>(max_gen - 1) : 0.0);
    };
    auto y = [&](double v) { return top + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << title << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
       << top + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
       << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = lo + (hi - lo) * k / 4.0;
        const auto g = static_cast<std::size_t>(static_cast<double>(max_gen - 1) * k / 4.0);
        os << "<text x=\"" << left - 8 << "\" y=\"" << y(v) + 4 << "\" text-anchor=\"end\">" << v << "</text>\n";
        os << "<text x=\"" << x(g) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">" << g
           << "</text>\n";
    }
    os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
       << "\" text-anchor=\"middle\">Generation</text>\n";
    os << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 18 " << top + plot_h / 2
       << ")\" text-anchor=\"middle\">Median hypervolume</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % std::size(palette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t g = 0; g < series[i].median.size(); ++g) {
            os << (g ? " " : "") << x(g) << ',' << y(series[i].median[g]);
        }
        os << "\"/>\n";
        const double ly = top + 16.0 * static_cast<double>(i) + 8;
        os << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 32
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly + 4 << "\">" << series[i].label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_plot_data(std::span<const RunTrace> traces, const std::filesystem::path& dir) {
    const auto points = plot_points(traces);
    const auto series = summarize_series(points);
    std::filesystem::create_directories(dir);
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw RuntimeFailure(p.string() + ": cannot write");
        out << text;
    };
    write(dir / "plot_data.csv", plot_data_csv(points));
    write(dir / "plot_summary.csv", series_summary_csv(series));
    write(dir / "hypervolume.svg", render_svg(series, "Hypervolume per generation"));
}

} // namespace sputnik::bench
