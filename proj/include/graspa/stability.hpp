#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graspa/domain.hpp"
#include "graspa/error.hpp"
#include "graspa/interpolation.hpp"
#include "graspa/maps.hpp"

namespace graspa {

/// How the Lebesgue function is sampled before taking its maximum.
struct GridSpec {
    /// Equispaced samples per piece; defaults to max(2000, 100 (n+1)).
    std::optional<std::size_t> points_per_piece;
    /// Add, for every pair of adjacent nodes in one piece, the point whose image is the
    /// midpoint of their images. The local maxima of the Lebesgue function sit near there.
    bool node_midpoints = true;
    /// Refine the best sample of each piece with a golden-section search.
    bool polish = true;

    [[nodiscard]] std::size_t resolve(std::size_t num_nodes) const {
        return points_per_piece.value_or(std::max<std::size_t>(2000, 100 * num_nodes));
    }
};

inline constexpr std::size_t kMinLebesgueSamples = 1000;

struct StabilityReport {
    std::vector<double> grid;
    /// Piece each grid point was evaluated on. A cut appears once per adjacent piece: the
    /// right-hand piece sees it as the limit from the right.
    std::vector<std::size_t> pieces;
    std::vector<double> lebesgue_values;
    double lebesgue_constant = 0.0;
    double argmax = 0.0;
    std::optional<double> predicted_limit;
    std::string method;
};

namespace detail {

/// Maximises `f` over [lo, hi] by golden-section search. Assumes unimodality on the bracket.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double f_lo_hint) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if (fc >= fd && fc >= f_lo_hint) return {c, fc};
    if (fd >= f_lo_hint) return {d, fd};
    return {lo, f_lo_hint};
}

/// Point in [lo, hi] where the increasing-or-decreasing `g` reaches `target`.
template <class G>
double bisect_level(G&& g, double lo, double hi, double target) {
    double g_lo = g(lo);
    const bool increasing = g(hi) >= g_lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if ((gm < target) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + (hi - lo) / 2.0;
}

/// Samples `lambda` over the closure [lo, hi], plus `extra` points, then polishes the best
/// sample. Appends to the output vectors.
template <class L>
void sample_piece(L&& lambda, double lo, double hi, std::size_t m, std::span<const double> extra, bool polish,
                  std::vector<double>& xs, std::vector<double>& vals) {
    std::vector<double> px;
    px.reserve(m + 1 + extra.size());
    for (std::size_t k = 0; k <= m; ++k) {
        px.push_back(k == m ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m));
    }
    px.insert(px.end(), extra.begin(), extra.end());
    std::sort(px.begin(), px.end());
    px.erase(std::unique(px.begin(), px.end()), px.end());

    std::vector<double> pv(px.size());
    for (std::size_t k = 0; k < px.size(); ++k) pv[k] = lambda(px[k]);

    if (polish && px.size() >= 3) {
        const auto best = static_cast<std::size_t>(std::max_element(pv.begin(), pv.end()) - pv.begin());
        const double blo = px[best == 0 ? 0 : best - 1];
        const double bhi = px[std::min(best + 1, px.size() - 1)];
        if (bhi > blo) {
            const auto [x, v] = golden_max(lambda, blo, bhi, pv[best]);
            if (v > pv[best]) {
                px.push_back(x);
                pv.push_back(v);
            }
        }
    }
    xs.insert(xs.end(), px.begin(), px.end());
    vals.insert(vals.end(), pv.begin(), pv.end());
}

inline double max_of(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace detail

/// lambda^S(x) = sum_i |l^S_i(x)| for the basis mapped by `map`.
[[nodiscard]] inline double lebesgue_function(const NodeSet& nodes, const MapChain& map, double x) {
    const BarycentricBasis basis(map.apply(nodes.values()));
    return basis.lebesgue(map(x));
}

/// Classical Lebesgue function of arbitrary increasing points.
[[nodiscard]] inline double lebesgue_function(std::span<const double> points, double x) {
    return BarycentricBasis(std::vector<double>(points.begin(), points.end())).lebesgue(x);
}

/// Dense-grid estimate of the Lebesgue constant of the mapped basis over the domain.
///
/// Each piece is sampled on its closure. On a piece whose left end is a cut, the map is
/// evaluated on that piece's branch, so the left end stands for the limit from the right and
/// the supremum over the half-open piece is captured.
[[nodiscard]] inline StabilityReport lebesgue_constant(const NodeSet& nodes, const MapChain& map,
                                                       const PiecewiseDomain& domain,
                                                       const GridSpec& spec = {}) {
    const std::size_t m = spec.resolve(nodes.size());
    if (m * domain.num_pieces() < kMinLebesgueSamples) {
        throw InvalidArgument("Lebesgue grid must resolve to at least " +
                              std::to_string(kMinLebesgueSamples) + " points");
    }
    for (double x : nodes) {
        if (!domain.contains(x)) throw InvalidArgument("node outside the domain");
    }
    const BarycentricBasis basis(map.apply(nodes.values()));

    StabilityReport report;
    report.method = map.describe();
    for (std::size_t p = 0; p < domain.num_pieces(); ++p) {
        const auto on_piece = [&](double x) { return map.apply(x, p); };
        const auto lambda = [&](double x) { return basis.lebesgue(on_piece(x)); };

        std::vector<double> extra;
        if (spec.node_midpoints) {
            for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
                if (domain.locate(nodes[i]) != p || domain.locate(nodes[i + 1]) != p) continue;
                const double target = (basis.points()[i] + basis.points()[i + 1]) / 2.0;
                extra.push_back(detail::bisect_level(on_piece, nodes[i], nodes[i + 1], target));
            }
        }
        detail::sample_piece(lambda, domain.left(p), domain.right(p), m, extra, spec.polish, report.grid,
                             report.lebesgue_values);
        report.pieces.resize(report.grid.size(), p);
    }
    const auto best = std::max_element(report.lebesgue_values.begin(), report.lebesgue_values.end());
    report.lebesgue_constant = *best;
    report.argmax = report.grid[static_cast<std::size_t>(best - report.lebesgue_values.begin())];
    return report;
}

/// Classical Lebesgue constant of `points` over [lo, hi], sampled with m+1 equispaced points
/// plus the node midpoints.
[[nodiscard]] inline double classical_lebesgue_constant(std::span<const double> points, double lo, double hi,
                                                        std::size_t m, bool polish = true) {
    const BarycentricBasis basis(std::vector<double>(points.begin(), points.end()));
    std::vector<double> extra;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) extra.push_back((points[i] + points[i + 1]) / 2.0);
    std::vector<double> xs;
    std::vector<double> vals;
    detail::sample_piece([&](double x) { return basis.lebesgue(x); }, lo, hi, m, extra, polish, xs, vals);
    return detail::max_of(vals);
}

/// L(i, j) = |l^S_i(grid_j)|; column sums are the Lebesgue function on the grid.
[[nodiscard]] inline Eigen::MatrixXd lagrange_matrix(const NodeSet& nodes, const MapChain& map,
                                                     std::span<const double> grid) {
    if (grid.empty()) throw InvalidArgument("Lagrange matrix needs a non-empty grid");
    const BarycentricBasis basis(map.apply(nodes.values()));
    Eigen::MatrixXd out(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(grid.size()));
    std::vector<double> col(nodes.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        basis.basis(map(grid[j]), col);
        for (std::size_t i = 0; i < col.size(); ++i) {
            const double v = std::abs(col[i]);
            if (!std::isfinite(v)) throw NumericalFailure("Lagrange basis overflowed");
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    return out;
}

/// The 100-point grid -1 + 2i/99 used for the Lagrange matrix figures.
[[nodiscard]] inline std::vector<double> lagrange_matrix_grid(std::size_t points = 100) {
    if (points < 2) throw InvalidArgument("grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = 1.0;
    return g;
}

namespace detail {
inline double ipow(double base, std::size_t e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

inline double c_factor_unchecked(std::size_t mu, std::size_t tau, std::span<const std::size_t> cards) {
    double c = 1.0;
    for (std::size_t nu = 0; nu < cards.size(); ++nu) {
        if (nu == mu || nu == tau) continue;
        const double ratio = std::abs((static_cast<double>(tau) - static_cast<double>(nu)) /
                                      (static_cast<double>(mu) - static_cast<double>(nu)));
        c *= ipow(ratio, cards[nu]);
    }
    return c;
}
}  // namespace detail

/// C_{mu,tau} = prod_{nu != mu,tau} |(tau - nu) / (mu - nu)|^{|X^nu|}, pieces indexed from 0.
/// The factor multiplying the off-piece residual of a basis function as kappa grows.
[[nodiscard]] inline double c_factor(std::size_t mu, std::size_t tau, std::span<const std::size_t> cardinalities) {
    if (mu == tau) throw InvalidArgument("C factor needs mu != tau");
    if (cardinalities.size() < 3) throw InvalidArgument("C factor needs at least two cuts");
    if (mu >= cardinalities.size() || tau >= cardinalities.size()) {
        throw InvalidArgument("C factor piece index out of range");
    }
    return detail::c_factor_unchecked(mu, tau, cardinalities);
}

/// Threshold 4 / (pi N^2 (2 + pi log(N+1))) on max(beta_i, gamma_j) under which the limit
/// Lebesgue constant of the GRASPA basis grows like log N.
[[nodiscard]] inline double delta_bound(std::size_t n) {
    if (n == 0) throw InvalidArgument("delta_bound requires N >= 1");
    constexpr double pi = std::numbers::pi;
    const double nd = static_cast<double>(n);
    return 4.0 / (pi * nd * nd * (2.0 + pi * std::log(nd + 1.0)));
}

/// r_i(x) = prod_{x_j in right}(x - x_j) / prod_{x_j in left, j != i}(x_i - x_j) for every
/// x_i in `left`. Requires |left| = |right| + 1 so the scale factors cancel.
[[nodiscard]] inline std::vector<double> even_case_residuals(std::span<const double> left,
                                                             std::span<const double> right, double x) {
    if (left.size() != right.size() + 1) {
        throw UnsupportedCase("residuals need exactly one more node on the left than on the right");
    }
    double lo = left.front();
    double hi = right.empty() ? left.back() : right.back();
    const double cap = hi > lo ? (hi - lo) / 4.0 : 1.0;
    double nodal = 1.0;
    for (double xr : right) nodal *= (x - xr) / cap;
    std::vector<double> r(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        double denom = 1.0;
        for (std::size_t j = 0; j < left.size(); ++j) {
            if (j != i) denom *= (left[i] - left[j]) / cap;
        }
        r[i] = nodal / denom;
    }
    return r;
}

enum class LimitCase { odd, even, equal_multi };

[[nodiscard]] inline std::string to_string(LimitCase c) {
    switch (c) {
        case LimitCase::odd: return "odd";
        case LimitCase::even: return "even";
        case LimitCase::equal_multi: return "equal-multi";
    }
    return "odd";
}

/// Closed-form kappa -> infinity predictions for the S-Gibbs basis.
struct LimitQuantities {
    LimitCase limit_case = LimitCase::odd;
    /// Lambda(X^p, closure of piece p) for every piece.
    std::vector<double> piece_constants;
    /// Even case only: samples x over the closure of the right piece, sum_i |r_i(x)| there,
    /// and their max R(X^2, Omega^2) of sum |r_i| + lambda(X^2, .).
    std::vector<double> residual_grid;
    std::vector<double> residual_sums;
    std::optional<double> residual_max;
    /// C_{mu,tau} for every pair when there are at least two cuts; diagonal set to 1.
    std::vector<std::vector<double>> c_factors;
    double predicted = 0.0;
};

/// Predicts lim_{kappa->inf} Lambda^kappa for nodes split by the partition.
///
/// Supported: one cut with |X^1| = |X^2| (odd) or |X^1| = |X^2| + 1 (even), and any number
/// of cuts with equal piece sizes. Everything else is refused, since the bounded limit
/// depends on the balance assumption and the mirrored even case is not modelled.
[[nodiscard]] inline LimitQuantities limit_lebesgue_prediction(const NodePartition& partition,
                                                               const PiecewiseDomain& domain,
                                                               const GridSpec& spec = {}) {
    if (partition.num_pieces() != domain.num_pieces()) {
        throw InvalidArgument("partition and domain disagree on the number of pieces");
    }
    if (domain.num_cuts() == 0) throw UnsupportedCase("limit prediction needs at least one cut");
    const auto cards = partition.cardinalities();
    for (std::size_t c : cards) {
        if (c == 0) throw UnsupportedCase("every piece needs at least one node");
    }
    const std::size_t total = std::accumulate(cards.begin(), cards.end(), std::size_t{0});
    const std::size_t m = spec.resolve(total);

    LimitQuantities out;
    if (domain.num_cuts() == 1) {
        if (cards[0] == cards[1]) {
            out.limit_case = LimitCase::odd;
        } else if (cards[0] == cards[1] + 1) {
            out.limit_case = LimitCase::even;
        } else {
            throw UnsupportedCase("single-cut limit needs |X^1| - |X^2| in {0, 1}; got " +
                                  std::to_string(cards[0]) + " and " + std::to_string(cards[1]) +
                                  " (mirror the domain for the swapped even case)");
        }
    } else {
        if (std::adjacent_find(cards.begin(), cards.end(), std::not_equal_to<>()) != cards.end()) {
            throw UnsupportedCase("multi-cut limit is only available for equal piece sizes");
        }
        out.limit_case = LimitCase::equal_multi;
        out.c_factors.assign(cards.size(), std::vector<double>(cards.size(), 1.0));
        for (std::size_t mu = 0; mu < cards.size(); ++mu) {
            for (std::size_t tau = 0; tau < cards.size(); ++tau) {
                if (mu != tau) out.c_factors[mu][tau] = c_factor(mu, tau, cards);
            }
        }
    }

    for (std::size_t p = 0; p < domain.num_pieces(); ++p) {
        out.piece_constants.push_back(
            classical_lebesgue_constant(partition.parts[p], domain.left(p), domain.right(p), m, spec.polish));
    }
    out.predicted = detail::max_of(out.piece_constants);

    if (out.limit_case == LimitCase::even) {
        const auto& left = partition.parts[0];
        const auto& right = partition.parts[1];
        const BarycentricBasis right_basis(right);
        const auto residual_sum = [&](double x) {
            double s = 0.0;
            for (double r : even_case_residuals(left, right, x)) s += std::abs(r);
            return s;
        };
        const auto total_fn = [&](double x) { return residual_sum(x) + right_basis.lebesgue(x); };
        std::vector<double> extra;
        for (std::size_t i = 0; i + 1 < right.size(); ++i) extra.push_back((right[i] + right[i + 1]) / 2.0);
        std::vector<double> vals;
        detail::sample_piece(total_fn, domain.left(1), domain.right(1), m, extra, spec.polish, out.residual_grid,
                             vals);
        out.residual_sums.reserve(out.residual_grid.size());
        for (double x : out.residual_grid) out.residual_sums.push_back(residual_sum(x));
        out.residual_max = detail::max_of(vals);
        out.predicted = std::max(out.piece_constants[0], *out.residual_max);
    }
    return out;
}

}  // namespace graspa
