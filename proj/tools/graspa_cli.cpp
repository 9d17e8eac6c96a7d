// graspa: command-line front end for node inspection, mapped interpolation, Lebesgue
// analysis and figure regeneration.
//
// Exit codes: 0 ok, 2 invalid arguments or configuration, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graspa/config.hpp"
#include "graspa/figures.hpp"
#include "graspa/graspa.hpp"

namespace fs = std::filesystem;
using namespace graspa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::size_t n = 0;
    std::string kind = "equispaced";
    double beta = 0.0;
    double gamma = 0.0;
    double a = -1.0;
    double b = 1.0;
    std::vector<double> cuts;
    double kappa = 1e4;
    double alpha = 1.0;
    std::string map = "identity";
    std::string function = "f1";
    std::size_t grid = 0;
    std::vector<double> points;
    std::optional<std::size_t> lebesgue_grid;
    bool predict = false;
    std::string samples_path;
    std::string target;
    bool svg = false;
    bool strict = false;
    std::string out_dir;
    std::string output;
};

/// Resolves -o against the output directory; empty means stdout.
std::optional<fs::path> output_path(const Options& o) {
    if (o.output.empty()) return std::nullopt;
    fs::path p(o.output);
    return p.is_absolute() ? p : fs::path(o.out_dir) / p;
}

void emit(const Options& o, const Table& t) {
    if (auto p = output_path(o)) {
        write_csv(*p, t);
    } else {
        write_csv(std::cout, t);
    }
}

Interval interval_of(const Options& o) { return {o.a, o.b}; }

PiecewiseDomain domain_of(const Options& o) { return PiecewiseDomain(interval_of(o), o.cuts); }

NodeSet nodes_of(const Options& o) {
    if (o.kind == "equispaced") return equispaced_nodes(o.n, interval_of(o));
    if (o.kind == "bgcheb") {
        if (interval_of(o) != Interval::reference()) {
            throw InvalidArgument("bgcheb nodes are defined on [-1, 1] only");
        }
        return bg_chebyshev_nodes(o.n, o.beta, o.gamma);
    }
    throw InvalidArgument("unknown node kind '" + o.kind + "'");
}

/// Named maps: identity (= classical), sgibbs, mkte, kte, graspa, graspa+vn.
MapChain map_of(const Options& o) {
    const std::string& m = o.map;
    if (m == "identity" || m == "classical") return MapChain::identity();
    if (m == "kte") return MapChain({KteMap{o.alpha}});
    if (m == "mkte") return MapChain::mkte(o.alpha, domain_of(o));
    if (m == "sgibbs" || m == "graspa" || m == "graspa+vn" || m == "graspa_vn") {
        return make_map(parse_method(m), o.kappa, domain_of(o), o.n);
    }
    throw InvalidArgument("unknown map '" + m + "'");
}

/// Reports an unbalanced node partition; returns false when --strict turns it into an error.
bool check_balance(const Options& o, const NodeSet& nodes) {
    if (o.cuts.empty()) return true;
    const auto part = partition_nodes(nodes, domain_of(o));
    if (part.balanced) return true;
    std::cerr << "warning: unbalanced piece sizes {";
    const auto cards = part.cardinalities();
    for (std::size_t i = 0; i < cards.size(); ++i) std::cerr << (i ? "," : "") << cards[i];
    std::cerr << "}; the limit Lebesgue constant is not bounded for this partition\n";
    return !o.strict;
}

double truth_of(const Options& o, double x) {
    return parse_test_function(o.function) == TestFunction::f1 ? f1(x) : f2(x);
}

int cmd_nodes(const Options& o) {
    const NodeSet nodes = nodes_of(o);
    if (!check_balance(o, nodes)) return kExitInvalid;
    Table t;
    t.header = {"x"};
    const bool mapped = o.map != "identity";
    std::vector<double> images;
    if (mapped) {
        t.header.emplace_back("mapped");
        images = map_of(o).apply(nodes.values());
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (mapped) {
            t.rows.push_back({nodes[i], images[i]});
        } else {
            t.rows.push_back({nodes[i]});
        }
    }
    emit(o, t);
    return kExitOk;
}

int cmd_map(const Options& o) {
    const MapChain map = map_of(o);
    std::vector<double> xs = o.points;
    if (xs.empty()) xs = uniform_grid(interval_of(o), o.grid ? o.grid : 101);
    Table t;
    t.header = {"x", "s"};
    for (double x : xs) t.rows.push_back({x, map(x)});
    emit(o, t);
    return kExitOk;
}

int cmd_interp(const Options& o) {
    const NodeSet nodes = nodes_of(o);
    if (!check_balance(o, nodes)) return kExitInvalid;
    std::vector<double> values;
    for (double x : nodes) values.push_back(truth_of(o, x));
    const Interpolant interp(nodes, values, map_of(o));
    const auto grid = uniform_grid(interval_of(o), o.grid ? o.grid : 332);
    Table t;
    t.header = {"x", "f", "r"};
    for (double x : grid) t.rows.push_back({x, truth_of(o, x), interp(x)});
    for (const auto& r : t.rows) {
        if (!std::isfinite(r[2])) throw NumericalFailure("interpolant is not finite on the grid");
    }
    emit(o, t);
    return kExitOk;
}

int cmd_lebesgue(const Options& o) {
    const NodeSet nodes = nodes_of(o);
    if (!check_balance(o, nodes)) return kExitInvalid;
    const MapChain map = map_of(o);
    const PiecewiseDomain domain = domain_of(o);
    GridSpec spec;
    spec.points_per_piece = o.lebesgue_grid;
    const auto report = lebesgue_constant(nodes, map, domain, spec);
    if (!std::isfinite(report.lebesgue_constant)) throw NumericalFailure("Lebesgue constant is not finite");

    Table t;
    t.header = {"n", "lebesgue_constant", "argmax"};
    std::vector<double> row{static_cast<double>(o.n), report.lebesgue_constant, report.argmax};
    if (o.predict) {
        // The limit of the GRASPA basis is the S-Gibbs limit of the MKTE images.
        const MapChain pre = (o.map == "graspa") ? MapChain::mkte(1.0, domain) : MapChain::identity();
        if (o.map != "graspa" && o.map != "sgibbs") {
            throw InvalidArgument("--predict needs --map sgibbs or graspa");
        }
        const NodeSet pre_nodes(pre.apply(nodes.values()), nodes.interval(), NodeFamily::mapped);
        const auto limit = limit_lebesgue_prediction(partition_nodes(pre_nodes, domain), domain, spec);
        t.header.emplace_back("predicted_limit");
        row.push_back(limit.predicted);
    }
    t.rows.push_back(std::move(row));
    emit(o, t);

    if (!o.samples_path.empty()) {
        Table s;
        s.header = {"x", "piece", "lambda"};
        for (std::size_t i = 0; i < report.grid.size(); ++i) {
            s.rows.push_back({report.grid[i], static_cast<double>(report.pieces[i]), report.lebesgue_values[i]});
        }
        fs::path p(o.samples_path);
        write_csv(p.is_absolute() ? p : fs::path(o.out_dir) / p, s);
    }
    return kExitOk;
}

int cmd_lagmatrix(const Options& o) {
    const NodeSet nodes = nodes_of(o);
    if (!check_balance(o, nodes)) return kExitInvalid;
    const auto grid = uniform_grid(interval_of(o), o.grid ? o.grid : 100);
    emit(o, matrix_table(lagrange_matrix(nodes, map_of(o), grid), grid));
    return kExitOk;
}

int finish_experiment(const Options& o, const FigureOutput& out, const std::string& stem) {
    const fs::path dir(o.out_dir);
    write_csv(dir / (stem + ".csv"), out.table);
    for (const auto& [suffix, table] : out.extras) write_csv(dir / (stem + suffix + ".csv"), table);
    if (o.svg) write_text_file(dir / (stem + ".svg"), render_svg(out.table, out.plot));
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << stem << ": " << out.cells << " cells, " << out.overflow_cells << " overflowed\n";
    if (o.strict && !out.warnings.empty()) return kExitInvalid;
    if (2 * out.overflow_cells > out.cells) {
        std::cerr << "error: numerical failure in more than half of the cells\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_experiment(const Options& o) {
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), o.target) != ids.end()) {
        return finish_experiment(o, run_figure(o.target), o.target);
    }
    std::ifstream in(o.target);
    if (!in) throw InvalidArgument("'" + o.target + "' is neither a figure id nor a readable config file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    const ExperimentConfig config = config_from_json(j);
    ExperimentResult result;
    const FigureOutput out = run_config_experiment(config, &result);
    write_text_file(fs::path(o.out_dir) / (config.name + ".json"), result_to_json(config, result).dump(2) + "\n");
    return finish_experiment(o, out, config.name);
}

void add_node_flags(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "Polynomial degree (n + 1 nodes)")->required()->check(CLI::PositiveNumber);
    sub->add_option("--kind", o.kind, "Node family")->check(CLI::IsMember({"equispaced", "bgcheb"}));
    sub->add_option("--beta", o.beta, "bgcheb offset at the left end");
    sub->add_option("--gamma", o.gamma, "bgcheb offset at the right end");
}

void add_map_flags(CLI::App* sub, Options& o, bool method_alias) {
    sub->add_option(method_alias ? "--map,--method" : "--map", o.map,
                    "identity, classical, kte, mkte, sgibbs, graspa, graspa+vn");
    sub->add_option("--cuts", o.cuts, "Cut points, e.g. --cuts 0 or --cuts -0.5,0,0.5")->delimiter(',');
    sub->add_option("--kappa", o.kappa, "S-Gibbs shift");
    sub->add_option("--alpha", o.alpha, "KTE parameter in (0, 1]");
    sub->add_option("--a", o.a, "Left end of the interval");
    sub->add_option("--b", o.b, "Right end of the interval");
}

void add_output_flags(CLI::App* sub, Options& o) {
    sub->add_option("-o,--output", o.output, "Output file (relative to --out-dir); stdout if omitted");
    sub->add_flag("--strict", o.strict, "Treat unbalanced partitions as errors");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("GRASPA_OUT_DIR"); env != nullptr && *env != '\0') {
        o.out_dir = env;
    } else {
        o.out_dir = ".";
    }

    CLI::App app{"Mapped polynomial interpolation of functions with jumps"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out-dir", o.out_dir, "Output directory (default: $GRASPA_OUT_DIR or .)");

    auto* nodes = app.add_subcommand("nodes", "Print a node set, optionally with its mapped images");
    add_node_flags(nodes, o);
    add_map_flags(nodes, o, false);
    add_output_flags(nodes, o);

    auto* map = app.add_subcommand("map", "Evaluate a map on points or a uniform grid");
    map->add_option("--n", o.n, "Degree, for graspa+vn");
    add_map_flags(map, o, false);
    map->add_option("--x", o.points, "Points to map")->delimiter(',');
    map->add_option("--grid", o.grid, "Uniform grid size when --x is absent");
    add_output_flags(map, o);

    auto* interp = app.add_subcommand("interp", "Sample an interpolant of f1 or f2");
    add_node_flags(interp, o);
    add_map_flags(interp, o, true);
    interp->add_option("--function", o.function, "f1 or f2")->check(CLI::IsMember({"f1", "f2"}));
    interp->add_option("--grid", o.grid, "Evaluation points (default 332)");
    add_output_flags(interp, o);

    auto* leb = app.add_subcommand("lebesgue", "Lebesgue constant of a mapped basis");
    add_node_flags(leb, o);
    add_map_flags(leb, o, true);
    leb->add_option("--grid", o.lebesgue_grid, "Samples per piece (default max(2000, 100 (n+1)))");
    leb->add_flag("--predict", o.predict, "Append the kappa -> infinity prediction");
    leb->add_option("--samples", o.samples_path, "Also write the sampled Lebesgue function here");
    add_output_flags(leb, o);

    auto* lag = app.add_subcommand("lagmatrix", "Matrix of |l_i(x_j)| on a uniform grid");
    add_node_flags(lag, o);
    add_map_flags(lag, o, true);
    lag->add_option("--grid", o.grid, "Grid points (default 100)");
    add_output_flags(lag, o);

    auto* exp = app.add_subcommand("experiment", "Regenerate a figure or run a JSON config");
    exp->add_option("target", o.target, "Figure id (fig1 ... fig9, fig3bis, fig8bis) or config path")->required();
    exp->add_flag("--svg", o.svg, "Also write <id>.svg");
    exp->add_flag("--strict", o.strict, "Treat unbalanced partitions as errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*nodes) return cmd_nodes(o);
        if (*map) return cmd_map(o);
        if (*interp) return cmd_interp(o);
        if (*leb) return cmd_lebesgue(o);
        if (*lag) return cmd_lagmatrix(o);
        return cmd_experiment(o);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}
