// Command-line front end for the Sputnik benchmark harness.
//
//   sputnik run --config run.json [--seed N] [--out DIR]
//   sputnik compare --config cmp.json --repeats N --out DIR [--jobs J]
//   sputnik plot --in DIR --out FILE.svg
//   sputnik gen-instance --vms N --components M --public-fraction F --seed S --out FILE
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sputnik/csv.hpp"
#include "sputnik/errors.hpp"
#include "sputnik/harness.hpp"
#include "sputnik/indicators.hpp"
#include "sputnik/plot.hpp"

namespace fs = std::filesystem;
using namespace sputnik;

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeFailure = 3;

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure(path.string() + ": cannot write");
    out << text;
}

std::string front_csv(const bench::RunTrace& trace) {
    std::string out;
    for (std::size_t i = 0; i < trace.objective_names.size(); ++i) out += (i ? "," : "") + trace.objective_names[i];
    out += '\n';
    auto points = trace.rows.back().front;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + format_number(p[i]);
        out += '\n';
    }
    return out;
}

int cmd_run(const fs::path& config_path, std::optional<std::uint64_t> seed, const fs::path& out) {
    auto config = bench::load_run_config(config_path);
    if (seed) config.seed = *seed;
    const auto trace = bench::run_experiment(config);
    write_file(out / "trace.csv", bench::trace_to_csv(trace));
    write_file(out / "front.csv", front_csv(trace));
    write_file(out / "config.json", bench::run_config_to_json(config));
    std::cout << to_string(config.algorithm) << '/' << to_string(config.strategy) << " seed " << config.seed
              << ": " << trace.rows.size() << " generations, final hypervolume "
              << format_number(trace.rows.back().hypervolume) << " (" << trace.rows.back().front.size()
              << " front points)\n";
    return 0;
}

int cmd_compare(const fs::path& config_path, std::optional<std::size_t> repeats, std::optional<std::size_t> jobs,
                const fs::path& out) {
    const auto base = bench::load_run_config(config_path);
    auto options = bench::load_compare_options(config_path);
    if (repeats) options.repeats = *repeats;
    if (jobs) options.jobs = *jobs;
    const auto configs = bench::expand_configs(base, options);
    const auto cmp = bench::compare_strategies(configs, options);
    bench::write_comparison(cmp, out);
    std::cout << bench::summary_to_text(cmp);
    return 0;
}

int cmd_plot(const fs::path& in, const fs::path& out) {
    const fs::path data = fs::is_directory(in) ? in / "plot_data.csv" : in;
    std::ifstream file(data);
    if (!file) throw ConfigError(data.string() + ": cannot open plot data");
    std::stringstream buffer;
    buffer << file.rdbuf();
    const auto points = bench::parse_plot_data_csv(buffer.str());
    const auto series = bench::summarize_series(points);
    write_file(out, bench::render_svg(series, "Hypervolume per generation"));
    return 0;
}

int cmd_gen_instance(std::size_t vms, std::size_t components, double public_fraction, std::uint64_t seed,
                     const fs::path& out) {
    const auto inst = cloud::random_instance(vms, components, public_fraction, seed);
    write_file(out, cloud::instance_to_json(inst));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sputnik: adaptive mutation-operator selection for multi-objective evolutionary algorithms"};
    app.require_subcommand(1);

    fs::path config_path;
    fs::path out_dir = "sputnik_out";
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "Run one optimization and write its trace");
    run->add_option("--config", config_path, "JSON run configuration")->required();
    run->add_option("--seed", seed, "Override the configured seed");
    run->add_option("--out", out_dir, "Output directory");

    std::optional<std::size_t> repeats;
    std::optional<std::size_t> jobs;
    fs::path compare_out;
    auto* compare = app.add_subcommand("compare", "Compare operator-selection strategies over seeded repeats");
    compare->add_option("--config", config_path, "JSON run configuration plus comparison options")->required();
    compare->add_option("--repeats", repeats, "Seeds per configuration");
    compare->add_option("--out", compare_out, "Output directory")->required();
    compare->add_option("--jobs", jobs, "Parallel runs (0 = all cores)");

    fs::path plot_in;
    fs::path plot_out;
    auto* plot = app.add_subcommand("plot", "Render plot data of a comparison as SVG");
    plot->add_option("--in", plot_in, "Comparison directory or plot_data.csv")->required();
    plot->add_option("--out", plot_out, "SVG file to write")->required();

    std::size_t vms = 30;
    std::size_t components = 60;
    double public_fraction = 0.5;
    std::uint64_t instance_seed = 7;
    fs::path instance_out;
    auto* gen = app.add_subcommand("gen-instance", "Generate a cloud placement instance file");
    gen->add_option("--vms", vms, "Number of VMs")->required();
    gen->add_option("--components", components, "Number of components")->required();
    gen->add_option("--public-fraction", public_fraction, "Fraction of public VMs")->required();
    gen->add_option("--seed", instance_seed, "Generator seed")->required();
    gen->add_option("--out", instance_out, "Instance file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run) return cmd_run(config_path, seed, out_dir);
        if (*compare) return cmd_compare(config_path, repeats, jobs, compare_out);
        if (*plot) return cmd_plot(plot_in, plot_out);
        if (*gen) return cmd_gen_instance(vms, components, public_fraction, instance_seed, instance_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return 0;
}
