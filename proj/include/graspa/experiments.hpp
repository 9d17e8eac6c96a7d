#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graspa/domain.hpp"
#include "graspa/error.hpp"
#include "graspa/interpolation.hpp"
#include "graspa/maps.hpp"
#include "graspa/stability.hpp"

namespace graspa {

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

/// Runge-type bump for x <= 0 and sin(2x)cos(3x) + 1/2 for x > 0; one jump at 0.
[[nodiscard]] inline double f1(double x) {
    if (x <= 0.0) {
        const double t = 2.0 * x + 1.0;
        return 1.0 / (25.0 * t * t + 1.0) - 0.5;
    }
    return std::sin(2.0 * x) * std::cos(3.0 * x) + 0.5;
}

/// Three jumps, at -1/2, 0 and 1/2.
[[nodiscard]] inline double f2(double x) {
    if (x <= -0.5) {
        const double t = 4.0 * x + 3.0;
        return 1.0 / (25.0 * t * t + 1.0) - 0.5;
    }
    if (x > 0.0 && x <= 0.5) return std::abs(4.0 * x - 1.0);
    return std::sin(2.0 * x) * std::cos(3.0 * x) + 0.5;
}

enum class TestFunction { f1, f2, custom };

[[nodiscard]] inline std::string to_string(TestFunction f) {
    switch (f) {
        case TestFunction::f1: return "f1";
        case TestFunction::f2: return "f2";
        case TestFunction::custom: return "custom";
    }
    return "custom";
}

[[nodiscard]] inline TestFunction parse_test_function(const std::string& s) {
    if (s == "f1") return TestFunction::f1;
    if (s == "f2") return TestFunction::f2;
    throw InvalidArgument("unknown function '" + s + "' (expected f1 or f2)");
}

/// Jump locations of the built-in functions.
[[nodiscard]] inline std::vector<double> default_cuts(TestFunction f) {
    switch (f) {
        case TestFunction::f1: return {0.0};
        case TestFunction::f2: return {-0.5, 0.0, 0.5};
        case TestFunction::custom: return {};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Methods
// ---------------------------------------------------------------------------

enum class Method { classical, sgibbs, graspa, graspa_vn };

[[nodiscard]] inline std::string to_string(Method m) {
    switch (m) {
        case Method::classical: return "classical";
        case Method::sgibbs: return "sgibbs";
        case Method::graspa: return "graspa";
        case Method::graspa_vn: return "graspa+vn";
    }
    return "classical";
}

/// Name safe for CSV column suffixes ("graspa+vn" -> "graspa_vn").
[[nodiscard]] inline std::string column_name(Method m) {
    return m == Method::graspa_vn ? "graspa_vn" : to_string(m);
}

[[nodiscard]] inline Method parse_method(const std::string& s) {
    if (s == "classical") return Method::classical;
    if (s == "sgibbs") return Method::sgibbs;
    if (s == "graspa") return Method::graspa;
    if (s == "graspa+vn" || s == "graspa_vn") return Method::graspa_vn;
    throw InvalidArgument("unknown method '" + s + "'");
}

/// Map used by a method at degree n: identity, S-Gibbs on the raw nodes, or the GRASPA
/// chain (with V_n in front for graspa+vn).
[[nodiscard]] inline MapChain make_map(Method m, double kappa, const PiecewiseDomain& domain, std::size_t n) {
    switch (m) {
        case Method::classical: return MapChain::identity();
        case Method::sgibbs: return MapChain::sgibbs(kappa, domain);
        case Method::graspa: return MapChain::graspa(kappa, domain);
        case Method::graspa_vn: return MapChain::graspa(kappa, domain, n);
    }
    return MapChain::identity();
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Equispaced grid of `points` points on [a, b], both ends included.
[[nodiscard]] inline std::vector<double> uniform_grid(const Interval& interval, std::size_t points) {
    if (points < 2) throw InvalidArgument("evaluation grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = interval.a() + interval.length() * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = interval.b();
    return g;
}

/// Relative maximum absolute error max_j |f_j - R(x_j)| / max_j |f_j|.
[[nodiscard]] inline double rmae(std::span<const double> truth, std::span<const double> approx) {
    if (truth.empty() || truth.size() != approx.size()) {
        throw InvalidArgument("RMAE needs equally sized, non-empty samples");
    }
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
        if (!std::isfinite(truth[j])) throw InvalidArgument("true samples must be finite");
        err = std::max(err, std::abs(truth[j] - approx[j]));
        scale = std::max(scale, std::abs(truth[j]));
    }
    if (scale == 0.0) throw InvalidArgument("RMAE undefined for identically zero data");
    return err / scale;
}

[[nodiscard]] inline double rmae(const Interpolant& interp, std::span<const double> truth,
                                 std::span<const double> grid) {
    if (grid.empty() || truth.size() != grid.size()) throw InvalidArgument("RMAE grid/truth size mismatch");
    return rmae(truth, interp(grid));
}

// ---------------------------------------------------------------------------
// Comparison runs
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string name = "experiment";
    TestFunction function = TestFunction::f1;
    /// Ground truth when function == custom.
    std::function<double(double)> custom;
    Interval interval = Interval::reference();
    std::vector<double> cuts = {0.0};
    std::vector<std::size_t> degrees = {11, 23, 51};
    double kappa = 1e4;
    std::vector<Method> methods = {Method::classical, Method::sgibbs, Method::graspa};
    std::size_t rmae_grid = 332;
    GridSpec lebesgue_grid;
    bool compute_rmae = true;
    bool compute_lebesgue = true;
    /// Degrees for which the Lagrange matrix is stored, on `lagrange_grid` points.
    std::vector<std::size_t> lagrange_degrees;
    std::size_t lagrange_grid = 100;
    /// Methods whose Lagrange matrix is stored; empty means all.
    std::vector<Method> lagrange_methods;
    bool keep_samples = false;

    [[nodiscard]] double truth(double x) const {
        switch (function) {
            case TestFunction::f1: return f1(x);
            case TestFunction::f2: return f2(x);
            case TestFunction::custom:
                if (!custom) throw InvalidArgument("custom function not provided");
                return custom(x);
        }
        return 0.0;
    }

    void validate() const {
        if (degrees.empty()) throw InvalidArgument("experiment needs at least one degree");
        if (methods.empty()) throw InvalidArgument("experiment needs at least one method");
        check_kappa(kappa);
        if (rmae_grid < 2) throw InvalidArgument("RMAE grid needs at least two points");
        const PiecewiseDomain domain(interval, cuts);
        for (std::size_t n : degrees) {
            if (n == 0) throw InvalidArgument("degree must be >= 1");
        }
        for (Method m : methods) {
            if (m != Method::graspa_vn) continue;
            for (std::size_t n : degrees) check_vn(n, domain);
        }
    }
};

struct ExperimentCell {
    Method method = Method::classical;
    std::size_t n = 0;
    std::string map;
    double rmae = std::numeric_limits<double>::quiet_NaN();
    double lebesgue_constant = std::numeric_limits<double>::quiet_NaN();
    /// Set when a numerical failure or a non-finite result was caught for this cell.
    bool overflow = false;
    std::string message;
    std::optional<Eigen::MatrixXd> lagrange;
    std::vector<double> samples;
};

struct ExperimentResult {
    std::vector<double> grid;
    std::vector<double> truth;
    std::vector<ExperimentCell> cells;
    std::vector<std::string> warnings;

    [[nodiscard]] const ExperimentCell& cell(Method m, std::size_t n) const {
        for (const auto& c : cells) {
            if (c.method == m && c.n == n) return c;
        }
        throw InvalidArgument("no cell for " + to_string(m) + " at n = " + std::to_string(n));
    }

    [[nodiscard]] std::size_t overflow_count() const {
        return static_cast<std::size_t>(
            std::count_if(cells.begin(), cells.end(), [](const ExperimentCell& c) { return c.overflow; }));
    }
};

/// Runs every (method, degree) pair on equispaced samples of the configured function.
/// Numerical failures are recorded on their cell; configuration errors throw.
[[nodiscard]] inline ExperimentResult run_comparison(const ExperimentConfig& config) {
    config.validate();
    const PiecewiseDomain domain(config.interval, config.cuts);

    ExperimentResult result;
    result.grid = uniform_grid(config.interval, config.rmae_grid);
    result.truth.reserve(result.grid.size());
    for (double x : result.grid) result.truth.push_back(config.truth(x));

    for (std::size_t n : config.degrees) {
        const NodeSet nodes = equispaced_nodes(n, config.interval);
        const auto partition = partition_nodes(nodes, domain);
        if (!partition.balanced) {
            std::string cards;
            for (std::size_t c : partition.cardinalities()) cards += (cards.empty() ? "" : ",") + std::to_string(c);
            result.warnings.push_back("n = " + std::to_string(n) + ": unbalanced piece sizes {" + cards + "}");
        }
        std::vector<double> values;
        values.reserve(nodes.size());
        for (double x : nodes) values.push_back(config.truth(x));

        const bool matrix_degree = std::find(config.lagrange_degrees.begin(), config.lagrange_degrees.end(), n) !=
                                   config.lagrange_degrees.end();

        for (Method m : config.methods) {
            ExperimentCell cell;
            cell.method = m;
            cell.n = n;
            const MapChain map = make_map(m, config.kappa, domain, n);
            cell.map = map.describe();
            const bool want_matrix =
                matrix_degree && (config.lagrange_methods.empty() ||
                                  std::find(config.lagrange_methods.begin(), config.lagrange_methods.end(), m) !=
                                      config.lagrange_methods.end());
            try {
                const Interpolant interp(nodes, values, map);
                if (config.compute_rmae || config.keep_samples) {
                    auto approx = interp(result.grid);
                    if (config.compute_rmae) cell.rmae = rmae(result.truth, approx);
                    if (config.keep_samples) cell.samples = std::move(approx);
                }
                if (config.compute_lebesgue) {
                    cell.lebesgue_constant = lebesgue_constant(nodes, map, domain, config.lebesgue_grid).lebesgue_constant;
                }
                if (want_matrix) {
                    cell.lagrange = lagrange_matrix(nodes, map, lagrange_matrix_grid(config.lagrange_grid));
                }
                if ((config.compute_rmae && !std::isfinite(cell.rmae)) ||
                    (config.compute_lebesgue && !std::isfinite(cell.lebesgue_constant))) {
                    cell.overflow = true;
                    cell.message = "non-finite result";
                }
            } catch (const NumericalFailure& e) {
                cell.overflow = true;
                cell.message = e.what();
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

/// Degrees n = 4j + 1 for j in [first, last], the schedule used with three cuts.
[[nodiscard]] inline std::vector<std::size_t> four_j_plus_one(std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t j = first; j <= last; ++j) out.push_back(4 * j + 1);
    return out;
}

[[nodiscard]] inline std::vector<std::size_t> degree_range(std::size_t from, std::size_t to, std::size_t step) {
    std::vector<std::size_t> out;
    for (std::size_t n = from; n <= to; n += step) out.push_back(n);
    return out;
}

}  // namespace graspa
