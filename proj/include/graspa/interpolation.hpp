#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graspa/domain.hpp"
#include "graspa/error.hpp"
#include "graspa/maps.hpp"

namespace graspa {

/// Lagrange basis on strictly increasing points, held in barycentric form.
///
/// Weights are 1 / prod_{j != i} ((s_i - s_j) / C) with the capacity C set to a quarter of
/// the point span. The scaling is common to every weight, so it cancels in the second
/// barycentric formula, and the nodal polynomial uses the same C so the first (modified
/// Lagrange) formula stays consistent. Without it the raw products overflow once the points
/// are spread over several S-Gibbs shifts.
class BarycentricBasis {
public:
    explicit BarycentricBasis(std::vector<double> points) : points_(std::move(points)) {
        if (points_.empty()) throw InvalidArgument("barycentric basis needs at least one point");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i])) throw NumericalFailure("non-finite mapped node");
            if (i > 0 && points_[i] == points_[i - 1]) {
                throw InjectivityViolation("map sends two nodes to the same value " +
                                           std::to_string(points_[i]));
            }
            if (i > 0 && points_[i] < points_[i - 1]) {
                throw InjectivityViolation("mapped nodes are not strictly increasing");
            }
        }
        const double span = points_.back() - points_.front();
        capacity_ = span > 0.0 ? span / 4.0 : 1.0;

        weights_.assign(points_.size(), 1.0);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            double prod = 1.0;
            for (std::size_t j = 0; j < points_.size(); ++j) {
                if (j != i) prod *= (points_[i] - points_[j]) / capacity_;
            }
            weights_[i] = 1.0 / prod;
            if (!std::isfinite(weights_[i]) || weights_[i] == 0.0) {
                throw NumericalFailure("barycentric weight " + std::to_string(i) +
                                       " is not representable");
            }
        }
    }

    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] double capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

    /// Index of the point equal to s, if any.
    [[nodiscard]] std::optional<std::size_t> find_point(double s) const {
        const auto it = std::lower_bound(points_.begin(), points_.end(), s);
        if (it != points_.end() && *it == s) return static_cast<std::size_t>(it - points_.begin());
        return std::nullopt;
    }

    /// Values of every basis polynomial at s (first barycentric form).
    void basis(double s, std::span<double> out) const {
        if (!std::isfinite(s)) throw NumericalFailure("basis evaluated at a non-finite point");
        if (const auto hit = find_point(s)) {
            std::fill(out.begin(), out.end(), 0.0);
            out[*hit] = 1.0;
            return;
        }
        double nodal = 1.0;
        for (double p : points_) nodal *= (s - p) / capacity_;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            out[i] = nodal * weights_[i] / ((s - points_[i]) / capacity_);
        }
    }

    /// sum_i |l_i(s)|.
    [[nodiscard]] double lebesgue(double s) const {
        if (!std::isfinite(s)) throw NumericalFailure("Lebesgue function evaluated at a non-finite point");
        if (find_point(s)) return 1.0;
        double nodal = 1.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double d = (s - points_[i]) / capacity_;
            nodal *= d;
            sum += std::abs(weights_[i] / d);
        }
        const double v = std::abs(nodal) * sum;
        if (!std::isfinite(v)) throw NumericalFailure("Lebesgue function overflowed");
        return v;
    }

    /// sum_i f_i l_i(s) via the second barycentric formula.
    [[nodiscard]] double interpolate(double s, std::span<const double> values) const {
        if (!std::isfinite(s)) throw NumericalFailure("interpolant evaluated at a non-finite point");
        if (const auto hit = find_point(s)) return values[*hit];
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double t = weights_[i] / (s - points_[i]);
            num += t * values[i];
            den += t;
        }
        return num / den;
    }

private:
    std::vector<double> points_;
    std::vector<double> weights_;
    double capacity_ = 1.0;
};

/// Fake-nodes interpolant R(x) = P(S(x)), where P interpolates the samples at the mapped
/// nodes S(x_i). The samples are never recomputed when the map changes.
class Interpolant {
public:
    Interpolant(const NodeSet& nodes, std::vector<double> values, MapChain map)
        : nodes_(nodes.begin(), nodes.end()),
          values_(std::move(values)),
          map_(std::move(map)),
          basis_(map_.apply(nodes_)) {
        if (values_.size() != nodes_.size()) {
            throw InvalidArgument("expected " + std::to_string(nodes_.size()) + " sample values, got " +
                                  std::to_string(values_.size()));
        }
        for (double v : values_) {
            if (!std::isfinite(v)) throw InvalidArgument("sample values must be finite");
        }
    }

    [[nodiscard]] double operator()(double x) const { return basis_.interpolate(map_(x), values_); }

    [[nodiscard]] std::vector<double> operator()(std::span<const double> xs) const {
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back((*this)(x));
        return out;
    }

    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> mapped_nodes() const noexcept { return basis_.points(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return basis_.weights(); }
    [[nodiscard]] const MapChain& map() const noexcept { return map_; }
    [[nodiscard]] const BarycentricBasis& basis() const noexcept { return basis_; }

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    MapChain map_;
    BarycentricBasis basis_;
};

[[nodiscard]] inline Interpolant build_interpolant(const NodeSet& nodes, std::span<const double> values,
                                                   MapChain map = {}) {
    return {nodes, std::vector<double>(values.begin(), values.end()), std::move(map)};
}

[[nodiscard]] inline double eval_interpolant(const Interpolant& interp, double x) { return interp(x); }

/// Monomial coefficients c_0..c_n of P in the mapped variable.
using CoefficientVector = std::vector<double>;

inline constexpr std::size_t kVandermondeMaxDegree = 12;

/// Solves V(S(x_0), ..., S(x_n)) c = f. Only meant as a small-degree cross-check; the
/// monomial basis is hopeless once the mapped nodes spread over large shifts.
[[nodiscard]] inline CoefficientVector vandermonde_coefficients(const NodeSet& nodes,
                                                                std::span<const double> values,
                                                                const MapChain& map = {}) {
    const std::size_t m = nodes.size();
    if (m - 1 > kVandermondeMaxDegree) {
        throw InvalidArgument("Vandermonde path refused for degree " + std::to_string(m - 1) +
                              " > " + std::to_string(kVandermondeMaxDegree) +
                              "; use build_interpolant (barycentric) instead");
    }
    if (values.size() != m) throw InvalidArgument("values and nodes differ in length");
    const auto s = map.apply(nodes.values());
    Eigen::MatrixXd v(m, m);
    Eigen::VectorXd f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = p;
            p *= s[i];
        }
        f(static_cast<Eigen::Index>(i)) = values[i];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
    if (!lu.isInvertible()) throw NumericalFailure("Vandermonde system is numerically singular");
    const Eigen::VectorXd c = lu.solve(f);
    return {c.data(), c.data() + c.size()};
}

/// Horner evaluation of a monomial expansion at s.
[[nodiscard]] inline double eval_monomial(std::span<const double> coeffs, double s) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
    return acc;
}

}  // namespace graspa
