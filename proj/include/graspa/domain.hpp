#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graspa/error.hpp"

namespace graspa {

/// Closed interval [a, b] with a < b.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
            throw InvalidArgument("interval requires finite a < b");
        }
    }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double length() const noexcept { return b_ - a_; }
    [[nodiscard]] bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

    [[nodiscard]] static Interval reference() { return {-1.0, 1.0}; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

/// An interval split by interior cut points xi_1 < ... < xi_d into d+1 pieces.
///
/// Pieces are indexed from 0. Piece 0 is [a, xi_1]; piece p > 0 is the
/// half-open (xi_p, xi_{p+1}] with xi_{d+1} = b. A point sitting exactly on a
/// cut therefore belongs to the piece on its left.
class PiecewiseDomain {
public:
    explicit PiecewiseDomain(Interval interval, std::vector<double> cuts = {})
        : interval_(interval), cuts_(std::move(cuts)) {
        for (std::size_t i = 0; i < cuts_.size(); ++i) {
            const double c = cuts_[i];
            if (!std::isfinite(c) || !(interval_.a() < c && c < interval_.b())) {
                throw InvalidArgument("cut points must lie strictly inside (a, b)");
            }
            if (i > 0 && !(cuts_[i - 1] < c)) {
                throw InvalidArgument("cut points must be strictly increasing");
            }
        }
    }

    [[nodiscard]] const Interval& interval() const noexcept { return interval_; }
    [[nodiscard]] std::span<const double> cuts() const noexcept { return cuts_; }
    [[nodiscard]] std::size_t num_cuts() const noexcept { return cuts_.size(); }
    [[nodiscard]] std::size_t num_pieces() const noexcept { return cuts_.size() + 1; }

    /// Left end of the closure of a piece (xi_p, with xi_0 = a).
    [[nodiscard]] double left(std::size_t piece) const {
        check_piece(piece);
        return piece == 0 ? interval_.a() : cuts_[piece - 1];
    }

    /// Right end of the closure of a piece (xi_{p+1}, with xi_{d+1} = b).
    [[nodiscard]] double right(std::size_t piece) const {
        check_piece(piece);
        return piece == cuts_.size() ? interval_.b() : cuts_[piece];
    }

    [[nodiscard]] bool contains(double x) const noexcept { return interval_.contains(x); }

    /// Index of the piece owning x under the left-closed-cut membership rule.
    [[nodiscard]] std::size_t locate(double x) const {
        if (!interval_.contains(x)) {
            throw InvalidArgument("point " + std::to_string(x) + " lies outside the domain");
        }
        return static_cast<std::size_t>(std::lower_bound(cuts_.begin(), cuts_.end(), x) -
                                        cuts_.begin());
    }

    void check_piece(std::size_t piece) const {
        if (piece >= num_pieces()) {
            throw InvalidArgument("piece index " + std::to_string(piece) + " out of range");
        }
    }

    friend bool operator==(const PiecewiseDomain&, const PiecewiseDomain&) = default;

private:
    Interval interval_;
    std::vector<double> cuts_;
};

enum class NodeFamily { equispaced, bg_chebyshev, mapped, custom };

[[nodiscard]] inline std::string to_string(NodeFamily f) {
    switch (f) {
        case NodeFamily::equispaced: return "equispaced";
        case NodeFamily::bg_chebyshev: return "bg-chebyshev";
        case NodeFamily::mapped: return "mapped";
        case NodeFamily::custom: return "custom";
    }
    return "custom";
}

/// Strictly increasing abscissae inside an interval, tagged with where they came from.
class NodeSet {
public:
    NodeSet(std::vector<double> nodes, Interval interval, NodeFamily family = NodeFamily::custom,
            std::optional<std::pair<double, double>> bg = std::nullopt)
        : nodes_(std::move(nodes)), interval_(interval), family_(family), bg_(bg) {
        if (nodes_.empty()) throw InvalidArgument("node set is empty");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!std::isfinite(nodes_[i]) || !interval_.contains(nodes_[i])) {
                throw InvalidArgument("node outside its interval");
            }
            if (i > 0 && !(nodes_[i - 1] < nodes_[i])) {
                throw InvalidArgument("nodes must be strictly increasing and distinct");
            }
        }
    }

    [[nodiscard]] std::span<const double> values() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t degree() const noexcept { return nodes_.size() - 1; }
    [[nodiscard]] double operator[](std::size_t i) const { return nodes_[i]; }
    [[nodiscard]] const Interval& interval() const noexcept { return interval_; }
    [[nodiscard]] NodeFamily family() const noexcept { return family_; }

    /// (beta, gamma) the set was generated with, when it is a (beta,gamma)-Chebyshev set.
    [[nodiscard]] std::optional<std::pair<double, double>> bg_parameters() const noexcept {
        return bg_;
    }

    auto begin() const noexcept { return nodes_.begin(); }
    auto end() const noexcept { return nodes_.end(); }

private:
    std::vector<double> nodes_;
    Interval interval_;
    NodeFamily family_;
    std::optional<std::pair<double, double>> bg_;
};

/// n+1 equispaced nodes a + (b-a) j / n, j = 0..n.
[[nodiscard]] inline NodeSet equispaced_nodes(std::size_t n, Interval interval) {
    if (n == 0) throw InvalidArgument("equispaced_nodes requires n >= 1");
    std::vector<double> x(n + 1);
    const double a = interval.a();
    const double len = interval.length();
    for (std::size_t j = 0; j <= n; ++j) {
        x[j] = a + len * static_cast<double>(j) / static_cast<double>(n);
    }
    x.back() = interval.b();
    return {std::move(x), interval, NodeFamily::equispaced};
}

/// (beta,gamma)-Chebyshev points cos((2-beta-gamma) j pi / (2n) + gamma pi / 2), j = 0..n,
/// on [-1, 1], returned in increasing order. beta = gamma = 0 gives Chebyshev-Lobatto points,
/// beta = gamma = 1/(n+1) the Chebyshev (Gauss) points.
[[nodiscard]] inline NodeSet bg_chebyshev_nodes(std::size_t n, double beta, double gamma) {
    if (n == 0) throw InvalidArgument("bg_chebyshev_nodes requires n >= 1");
    if (!(beta >= 0.0) || !(gamma >= 0.0)) {
        throw InvalidArgument("beta and gamma must be non-negative");
    }
    if (!(beta + gamma < 2.0)) throw InvalidArgument("beta + gamma must be < 2");
    constexpr double pi = std::numbers::pi;
    const double step = (2.0 - beta - gamma) * pi / (2.0 * static_cast<double>(n));
    std::vector<double> x(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        x[n - j] = std::cos(step * static_cast<double>(j) + gamma * pi / 2.0);
    }
    return {std::move(x), Interval::reference(), NodeFamily::bg_chebyshev, std::pair{beta, gamma}};
}

/// Nodes grouped by the piece of a PiecewiseDomain they fall in.
struct NodePartition {
    std::vector<std::vector<double>> parts;
    /// |X^nu| - |X^tau| in {-1, 0, 1} for every pair of pieces.
    bool balanced = false;

    [[nodiscard]] std::size_t num_pieces() const noexcept { return parts.size(); }

    [[nodiscard]] std::vector<std::size_t> cardinalities() const {
        std::vector<std::size_t> c;
        c.reserve(parts.size());
        for (const auto& p : parts) c.push_back(p.size());
        return c;
    }
};

[[nodiscard]] inline bool is_balanced(std::span<const std::size_t> cards) {
    if (cards.empty()) return true;
    const auto [lo, hi] = std::minmax_element(cards.begin(), cards.end());
    return *hi - *lo <= 1;
}

[[nodiscard]] inline NodePartition partition_nodes(const NodeSet& nodes,
                                                   const PiecewiseDomain& domain) {
    NodePartition out;
    out.parts.resize(domain.num_pieces());
    for (double x : nodes) out.parts[domain.locate(x)].push_back(x);
    const auto cards = out.cardinalities();
    out.balanced = is_balanced(cards);
    return out;
}

}  // namespace graspa
