#include "hsseg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include "hsseg/eta_regions.hpp"
#include "hsseg/flatzones.hpp"
#include "hsseg/io.hpp"
#include "hsseg/mu_balls.hpp"
#include "hsseg/synth.hpp"

namespace hsseg::cli {

namespace fs = std::filesystem;

double parse_param(std::string_view text, std::string_view name) {
    if (text == "inf" || text == "+inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw UsageError(std::string(name) + ": '" + std::string(text) + "' is not a number");
    }
    if (v < 0.0) throw UsageError(std::string(name) + " must be non-negative");
    return v;
}

std::vector<double> parse_grid(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw UsageError("parameter grid must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parse_param(text.substr(0, c1), "grid start");
    const double stop = parse_param(text.substr(c1 + 1, c2 - c1 - 1), "grid stop");
    const double step = parse_param(text.substr(c2 + 1), "grid step");
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw UsageError("parameter grid bounds must be finite");
    }
    if (step <= 0.0) throw UsageError("grid step must be positive");
    if (stop < start) throw UsageError("grid stop is below its start");

    const double tol = 1e-9 * step;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double v = start + static_cast<double>(i) * step;
        out.push_back(std::abs(v - stop) <= tol ? stop : v);
    }
    return out;
}

namespace {

struct RunOptions {
    std::vector<std::string> inputs;
    std::string metric = "euclidean";
    std::string lambda = "inf";
    std::string param;
    std::string grid;
    std::string algo = "mu";
    int connectivity = 4;
    std::string seed_order = "median";
    std::string seed_policy = "zone";
    std::string ball_domain = "residual";
    std::size_t region_cap = kDefaultRegionCap;
    bool edge_cache = false;
    std::string out_dir = ".";
    std::string csv;
};

struct SynthOptions {
    ToothSawSpec spec;
    std::string out;
};

struct StatsOptions {
    std::string labels;
    int connectivity = 4;
};

SpectralCube load_input(const std::vector<std::string>& inputs) {
    if (inputs.size() == 1) {
        std::ifstream in(inputs[0], std::ios::binary);
        char magic[4] = {};
        if (in.read(magic, 4) && std::string_view(magic, 4) == "HSC1") return read_cube(inputs[0]);
    }
    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    return read_graymap_stack(paths);
}

Connectivity to_connectivity(int c) {
    if (c == 4) return Connectivity::four;
    if (c == 8) return Connectivity::eight;
    throw UsageError("connectivity must be 4 or 8");
}

SeedPolicy to_policy(const std::string& s) {
    if (s == "zone") return SeedPolicy::zone_order;
    if (s == "residual") return SeedPolicy::residual_median;
    throw UsageError("seed policy must be 'zone' or 'residual'");
}

BallDomain to_domain(const std::string& s) {
    if (s == "residual") return BallDomain::residual;
    if (s == "class") return BallDomain::whole_class;
    throw UsageError("ball domain must be 'residual' or 'class'");
}

/// One pipeline instance: cube, metric and lambda-flat zones computed once and
/// refined with any number of parameter values.
class Pipeline {
public:
    explicit Pipeline(const RunOptions& o)
        : opts_(o), cube_(load_input(o.inputs)), metric_(cube_, parse_metric_kind(o.metric)),
          conn_(to_connectivity(o.connectivity)), order_(parse_seed_order(o.seed_order)),
          policy_(to_policy(o.seed_policy)), domain_(to_domain(o.ball_domain)),
          lambda_(parse_param(o.lambda, "lambda")) {
        if (o.edge_cache) edges_.emplace(cube_, metric_, conn_);
    }

    double lambda() const noexcept { return lambda_; }

    const LabelMap& flat() {
        if (!flat_) {
            flat_ = lambda_flat_zones(cube_, metric_, {lambda_, conn_}, edge_ptr());
        }
        return *flat_;
    }

    /// Runs one pass; for Algorithm::flat `param` is the lambda to use.
    std::pair<LabelMap, SegmentationReport> segment(Algorithm algo, double param) {
        const auto t0 = std::chrono::steady_clock::now();
        LabelMap labels;
        double lambda = lambda_;
        switch (algo) {
            case Algorithm::flat:
                lambda = param;
                labels = lambda_flat_zones(cube_, metric_, {param, conn_}, edge_ptr());
                break;
            case Algorithm::eta: {
                EtaParams p;
                p.eta = param;
                p.order = order_;
                p.connectivity = conn_;
                p.policy = policy_;
                p.region_cap = opts_.region_cap;
                labels = eta_bounded_regions(cube_, metric_, flat(), p);
                break;
            }
            case Algorithm::mu: {
                MuParams p;
                p.mu = param;
                p.order = order_;
                p.connectivity = conn_;
                p.policy = policy_;
                p.domain = domain_;
                p.region_cap = opts_.region_cap;
                labels = mu_geodesic_balls(cube_, metric_, flat(), p, edge_ptr());
                break;
            }
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        auto report = make_report(algo, std::string(to_string(metric_.kind())), lambda, param,
                                  conn_, std::string(to_string(order_)), labels, ms);
        return {std::move(labels), std::move(report)};
    }

private:
    const EdgeWeights* edge_ptr() const { return edges_ ? &*edges_ : nullptr; }

    RunOptions opts_;
    SpectralCube cube_;
    Metric metric_;
    Connectivity conn_;
    SeedOrder order_;
    SeedPolicy policy_;
    BallDomain domain_;
    double lambda_;
    std::optional<EdgeWeights> edges_;
    std::optional<LabelMap> flat_;
};

void add_input_options(CLI::App& cmd, RunOptions& o) {
    cmd.add_option("-i,--input", o.inputs,
                   "HSC1 cube, or one P5/P2 graymap per band in band order")
        ->required();
    cmd.add_option("--metric", o.metric, "euclidean | chi2")->capture_default_str();
    cmd.add_option("--connectivity", o.connectivity, "4 | 8")->capture_default_str();
    cmd.add_flag("--edge-cache", o.edge_cache, "precompute all adjacent-pixel distances");
}

void add_refine_options(CLI::App& cmd, RunOptions& o) {
    cmd.add_option("--lambda", o.lambda, "flat-zone threshold, or 'inf' for the whole image")
        ->capture_default_str();
    cmd.add_option("--seed-order", o.seed_order, "median | antimedian")->capture_default_str();
    cmd.add_option("--seed-policy", o.seed_policy,
                   "zone: walk the zone-wide ordering; residual: re-median the remainder")
        ->capture_default_str();
    cmd.add_option("--region-cap", o.region_cap,
                   "largest zone for exact cumulative distances")
        ->capture_default_str();
}

void add_output_options(CLI::App& cmd, RunOptions& o) {
    cmd.add_option("-o,--out-dir", o.out_dir, "directory for labels and report")
        ->capture_default_str();
    cmd.add_option("--csv", o.csv, "append a CSV row to this sweep file");
}

void emit_single(Pipeline& pipe, Algorithm algo, double param, const RunOptions& o,
                 std::ostream& out) {
    auto [labels, report] = pipe.segment(algo, param);
    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const bool fits = labels.count() <= 65536;
    write_labels(labels, dir / (fits ? "labels.pgm" : "labels.hsc"));
    write_report(report, dir / "report.txt");
    if (!o.csv.empty()) append_csv_row(report, o.csv);
    out << format_report(report);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperspectral segmentation by lambda-flat zones, eta-bounded regions and "
                 "mu-geodesic balls"};
    app.name("hsseg");
    app.require_subcommand(1);
    app.footer(
        "Exit codes:\n"
        "  0  success\n"
        "  1  internal error\n"
        "  2  usage error (bad flag, missing or invalid parameter)\n"
        "  3  I/O failure\n"
        "  4  malformed cube, graymap or label file\n"
        "  5  graymap stack dimension mismatch\n"
        "  6  chi-squared with a zero pixel or band sum\n"
        "  7  flat zone larger than --region-cap");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic test cube");
    synth_cmd->require_subcommand(1);
    auto* saw = synth_cmd->add_subcommand("tooth-saw", "triangle-wave cube on band 0");
    saw->add_option("-o,--out", synth.out, "output HSC1 path")->required();
    saw->add_option("--width", synth.spec.width)->capture_default_str();
    saw->add_option("--height", synth.spec.height)->capture_default_str();
    saw->add_option("--bands", synth.spec.bands)->capture_default_str();
    saw->add_option("--step", synth.spec.step)->capture_default_str();
    saw->add_option("--teeth", synth.spec.teeth)->capture_default_str();
    saw->add_option("--constant", synth.spec.constant_value, "value of bands 1..L-1")
        ->capture_default_str();

    RunOptions flat_o;
    auto* flat_cmd = app.add_subcommand("flat", "lambda-flat zones");
    add_input_options(*flat_cmd, flat_o);
    flat_cmd->add_option("--lambda", flat_o.lambda, "inclusive step threshold, or 'inf'")
        ->required();
    add_output_options(*flat_cmd, flat_o);

    RunOptions eta_o;
    auto* eta_cmd = app.add_subcommand("eta", "eta-bounded regions inside lambda-flat zones");
    add_input_options(*eta_cmd, eta_o);
    add_refine_options(*eta_cmd, eta_o);
    eta_cmd->add_option("--eta", eta_o.param, "bound on distance to the seed")->required();
    add_output_options(*eta_cmd, eta_o);

    RunOptions mu_o;
    auto* mu_cmd = app.add_subcommand("mu", "mu-geodesic balls inside lambda-flat zones");
    add_input_options(*mu_cmd, mu_o);
    add_refine_options(*mu_cmd, mu_o);
    mu_cmd->add_option("--mu", mu_o.param, "bound on geodesic distance to the seed")->required();
    mu_cmd->add_option("--ball-domain", mu_o.ball_domain,
                       "residual: paths avoid assigned pixels; class: whole flat zone")
        ->capture_default_str();
    add_output_options(*mu_cmd, mu_o);

    RunOptions sweep_o;
    auto* sweep_cmd = app.add_subcommand("sweep", "run one pass over a parameter grid");
    add_input_options(*sweep_cmd, sweep_o);
    add_refine_options(*sweep_cmd, sweep_o);
    sweep_cmd->add_option("--algo", sweep_o.algo, "flat | eta | mu (flat sweeps lambda)")
        ->capture_default_str();
    sweep_cmd->add_option("--param", sweep_o.grid, "start:stop:step, stop inclusive")
        ->required();
    sweep_cmd->add_option("--ball-domain", sweep_o.ball_domain, "residual | class")
        ->capture_default_str();
    sweep_cmd->add_option("--csv", sweep_o.csv, "CSV file the rows are appended to")
        ->required();

    StatsOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "region count and sizes of a label file");
    stats_cmd->add_option("-l,--labels", stats.labels, "P5/P2 or HSC1 label file")->required();
    stats_cmd->add_option("--connectivity", stats.connectivity, "4 | 8")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    if (*saw) {
        write_cube(tooth_saw_cube(synth.spec), synth.out);
        out << "wrote " << synth.out << '\n';
        return ok;
    }
    if (*flat_cmd) {
        Pipeline pipe(flat_o);
        emit_single(pipe, Algorithm::flat, pipe.lambda(), flat_o, out);
        return ok;
    }
    if (*eta_cmd) {
        Pipeline pipe(eta_o);
        emit_single(pipe, Algorithm::eta, parse_param(eta_o.param, "eta"), eta_o, out);
        return ok;
    }
    if (*mu_cmd) {
        Pipeline pipe(mu_o);
        emit_single(pipe, Algorithm::mu, parse_param(mu_o.param, "mu"), mu_o, out);
        return ok;
    }
    if (*sweep_cmd) {
        const auto algo = parse_algorithm(sweep_o.algo);
        const auto grid = parse_grid(sweep_o.grid);
        Pipeline pipe(sweep_o);
        out << kSweepCsvHeader << '\n';
        for (double v : grid) {
            const auto report = pipe.segment(algo, v).second;
            append_csv_row(report, sweep_o.csv);
            out << format_csv_row(report) << '\n';
        }
        return ok;
    }
    if (*stats_cmd) {
        const auto labels = read_labels(stats.labels);
        const auto comps = class_component_counts(labels, to_connectivity(stats.connectivity));
        const bool connected =
            std::all_of(comps.begin(), comps.end(), [](std::size_t c) { return c == 1; });
        out << "width: " << labels.width() << '\n'
            << "height: " << labels.height() << '\n'
            << "regions: " << labels.count() << '\n'
            << "region_sizes:";
        for (auto s : labels.sizes()) out << ' ' << s;
        out << '\n' << "classes_connected: " << (connected ? "yes" : "no") << '\n';
        return ok;
    }
    return usage_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return internal_error;
    }
}

}  // namespace hsseg::cli
