#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "graspa/experiments.hpp"
#include "graspa/io.hpp"

namespace graspa {

/// Data behind one figure: the main table, its plot settings and any extra tables
/// (Lagrange matrices) written next to it under `<id><suffix>.csv`.
struct FigureOutput {
    std::string id;
    Table table;
    PlotOptions plot;
    std::vector<std::pair<std::string, Table>> extras;
    std::size_t cells = 0;
    std::size_t overflow_cells = 0;
    std::vector<std::string> warnings;
};

[[nodiscard]] inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig1", "fig2", "fig3", "fig3bis", "fig4", "fig5",
                                                 "fig6", "fig7", "fig8", "fig8bis", "fig9"};
    return ids;
}

inline constexpr double kDefaultKappa = 1e4;

/// Table with one row per degree: n, then lambda_<method> and/or rmae_<method> columns.
[[nodiscard]] inline Table summary_table(const ExperimentConfig& config, const ExperimentResult& result,
                                         bool with_lambda, bool with_rmae) {
    Table t;
    t.header.emplace_back("n");
    if (with_lambda) {
        for (Method m : config.methods) t.header.push_back("lambda_" + column_name(m));
    }
    if (with_rmae) {
        for (Method m : config.methods) t.header.push_back("rmae_" + column_name(m));
    }
    for (std::size_t n : config.degrees) {
        std::vector<double> row{static_cast<double>(n)};
        if (with_lambda) {
            for (Method m : config.methods) row.push_back(result.cell(m, n).lebesgue_constant);
        }
        if (with_rmae) {
            for (Method m : config.methods) row.push_back(result.cell(m, n).rmae);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace detail {

inline const std::vector<Method>& three_methods() {
    static const std::vector<Method> m = {Method::classical, Method::sgibbs, Method::graspa};
    return m;
}

inline ExperimentConfig base_config(const std::string& id, TestFunction f) {
    ExperimentConfig c;
    c.name = id;
    c.function = f;
    c.cuts = default_cuts(f);
    c.kappa = kDefaultKappa;
    c.methods = three_methods();
    return c;
}

inline void absorb(FigureOutput& out, const ExperimentResult& r) {
    out.cells += r.cells.size();
    out.overflow_cells += r.overflow_count();
    out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
}

inline FigureOutput lebesgue_functions(const std::string& id, TestFunction f, std::size_t n) {
    const auto cfg = base_config(id, f);
    const PiecewiseDomain domain(cfg.interval, cfg.cuts);
    const NodeSet nodes = equispaced_nodes(n, cfg.interval);
    const auto grid = uniform_grid(cfg.interval, 1001);

    FigureOutput out;
    out.id = id;
    out.plot = {"Lebesgue functions, " + to_string(f) + ", n = " + std::to_string(n), "x", "lambda(x)", true};
    out.table.header.emplace_back("x");
    std::vector<std::vector<double>> cols;
    for (Method m : cfg.methods) {
        out.table.header.push_back("lambda_" + column_name(m));
        const MapChain map = make_map(m, cfg.kappa, domain, n);
        std::vector<double> col;
        ++out.cells;
        try {
            const BarycentricBasis basis(map.apply(nodes.values()));
            for (double x : grid) col.push_back(basis.lebesgue(map(x)));
        } catch (const NumericalFailure&) {
            ++out.overflow_cells;
            col.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
        }
        cols.push_back(std::move(col));
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::vector<double> row{grid[j]};
        for (const auto& c : cols) row.push_back(c[j]);
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

inline FigureOutput interpolants(const std::string& id, TestFunction f, std::size_t n) {
    auto cfg = base_config(id, f);
    cfg.degrees = {n};
    cfg.compute_lebesgue = false;
    cfg.keep_samples = true;
    const auto r = run_comparison(cfg);

    FigureOutput out;
    out.id = id;
    out.plot = {to_string(f) + " and its interpolants, n = " + std::to_string(n), "x", "value", false};
    out.table.header = {"x", "f"};
    for (Method m : cfg.methods) out.table.header.push_back("r_" + column_name(m));
    for (std::size_t j = 0; j < r.grid.size(); ++j) {
        std::vector<double> row{r.grid[j], r.truth[j]};
        for (Method m : cfg.methods) {
            const auto& c = r.cell(m, n);
            row.push_back(c.samples.empty() ? std::numeric_limits<double>::quiet_NaN() : c.samples[j]);
        }
        out.table.rows.push_back(std::move(row));
    }
    absorb(out, r);
    return out;
}

inline FigureOutput sweep(const std::string& id, ExperimentConfig cfg, bool with_lambda, bool with_rmae,
                          const std::string& title, const std::string& y_label) {
    cfg.compute_lebesgue = with_lambda;
    cfg.compute_rmae = with_rmae;
    const auto r = run_comparison(cfg);
    FigureOutput out;
    out.id = id;
    out.plot = {title, "n", y_label, true};
    out.table = summary_table(cfg, r, with_lambda, with_rmae);
    for (const auto& c : r.cells) {
        if (c.lagrange) {
            out.extras.emplace_back("_L", matrix_table(*c.lagrange, lagrange_matrix_grid(cfg.lagrange_grid)));
        }
    }
    absorb(out, r);
    return out;
}

inline FigureOutput lagrange_pair(const std::string& id, std::size_t n) {
    auto cfg = base_config(id, TestFunction::f1);
    cfg.methods = {Method::graspa, Method::graspa_vn};
    cfg.degrees = {n};
    cfg.compute_rmae = false;
    cfg.compute_lebesgue = false;
    cfg.lagrange_degrees = {n};
    const auto r = run_comparison(cfg);
    const auto grid = lagrange_matrix_grid(cfg.lagrange_grid);

    FigureOutput out;
    out.id = id;
    out.plot = {"Lebesgue function on the matrix grid, n = " + std::to_string(n), "x", "column sum of L", true};
    out.table.header = {"x"};
    for (Method m : cfg.methods) out.table.header.push_back("lambda_" + column_name(m));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::vector<double> row{grid[j]};
        for (Method m : cfg.methods) {
            const auto& c = r.cell(m, n);
            row.push_back(c.lagrange ? c.lagrange->col(static_cast<Eigen::Index>(j)).sum()
                                     : std::numeric_limits<double>::quiet_NaN());
        }
        out.table.rows.push_back(std::move(row));
    }
    for (Method m : cfg.methods) {
        const auto& c = r.cell(m, n);
        if (c.lagrange) out.extras.emplace_back("_L_" + column_name(m), matrix_table(*c.lagrange, grid));
    }
    absorb(out, r);
    return out;
}

}  // namespace detail

/// Regenerates the data behind one of the reference figures (ids from figure_ids()).
///
/// All runs sample on equispaced nodes of [-1, 1] with kappa = 1e4. f1 uses odd degrees
/// 3..51 (even degrees 4..50 for fig5), f2 uses n = 4j + 1.
[[nodiscard]] inline FigureOutput run_figure(const std::string& id) {
    using detail::base_config;
    if (id == "fig1") return detail::lebesgue_functions(id, TestFunction::f1, 23);
    if (id == "fig6") return detail::lebesgue_functions(id, TestFunction::f2, 29);
    if (id == "fig3") return detail::interpolants(id, TestFunction::f1, 23);
    if (id == "fig7") return detail::interpolants(id, TestFunction::f2, 29);
    if (id == "fig2") {
        auto c = base_config(id, TestFunction::f1);
        c.degrees = degree_range(3, 51, 2);
        c.lagrange_degrees = {51};
        c.lagrange_methods = {Method::graspa};
        return detail::sweep(id, c, true, false, "Lebesgue constant, f1 (odd n)", "Lambda");
    }
    if (id == "fig3bis") {
        auto c = base_config(id, TestFunction::f1);
        c.degrees = degree_range(3, 51, 2);
        return detail::sweep(id, c, false, true, "RMAE, f1 (odd n)", "RMAE");
    }
    if (id == "fig4") return detail::lagrange_pair(id, 50);
    if (id == "fig5") {
        auto c = base_config(id, TestFunction::f1);
        c.degrees = degree_range(4, 50, 2);
        c.methods = {Method::classical, Method::sgibbs, Method::graspa_vn};
        return detail::sweep(id, c, true, true, "Lebesgue constant and RMAE, f1 (even n)", "value");
    }
    if (id == "fig8" || id == "fig8bis") {
        auto c = base_config(id, TestFunction::f2);
        c.degrees = four_j_plus_one(1, 12);
        const bool lambda = id == "fig8";
        auto out = detail::sweep(id, c, lambda, !lambda, lambda ? "Lebesgue constant, f2" : "RMAE, f2",
                                 lambda ? "Lambda" : "RMAE");
        if (lambda) {
            auto lc = base_config(id, TestFunction::f2);
            lc.methods = {Method::graspa};
            lc.degrees = {50};
            lc.compute_rmae = false;
            lc.compute_lebesgue = false;
            lc.lagrange_degrees = {50};
            const auto r = run_comparison(lc);
            const auto& cell = r.cell(Method::graspa, 50);
            if (cell.lagrange) {
                out.extras.emplace_back("_L", matrix_table(*cell.lagrange, lagrange_matrix_grid(lc.lagrange_grid)));
            }
            detail::absorb(out, r);
        }
        return out;
    }
    if (id == "fig9") {
        auto c = base_config(id, TestFunction::f2);
        c.methods = {Method::graspa};
        c.degrees = four_j_plus_one(1, 22);
        c.lagrange_degrees = {89};
        return detail::sweep(id, c, true, false, "GRASPA Lebesgue constant, f2, kappa = 1e4", "Lambda");
    }
    throw InvalidArgument("unknown figure '" + id + "'");
}

/// Output for a user-supplied configuration: summary table plus one matrix per stored
/// (method, degree) pair under `_L_<method>_n<degree>`.
[[nodiscard]] inline FigureOutput run_config_experiment(const ExperimentConfig& config, ExperimentResult* keep = nullptr) {
    auto r = run_comparison(config);
    FigureOutput out;
    out.id = config.name;
    out.plot = {config.name, "n", "value", true};
    out.table = summary_table(config, r, config.compute_lebesgue, config.compute_rmae);
    const auto grid = lagrange_matrix_grid(config.lagrange_grid);
    for (const auto& c : r.cells) {
        if (c.lagrange) {
            out.extras.emplace_back("_L_" + column_name(c.method) + "_n" + std::to_string(c.n),
                                    matrix_table(*c.lagrange, grid));
        }
    }
    detail::absorb(out, r);
    if (keep != nullptr) *keep = std::move(r);
    return out;
}

}  // namespace graspa
