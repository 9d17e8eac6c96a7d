#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "graspa/domain.hpp"
#include "graspa/error.hpp"

namespace graspa {

// ---------------------------------------------------------------------------
// Scalar maps
// ---------------------------------------------------------------------------

/// F^p: the closure of piece p onto [-1, 1].
[[nodiscard]] inline double affine_to_reference(double x, std::size_t piece,
                                                const PiecewiseDomain& domain) {
    const double lo = domain.left(piece);
    const double hi = domain.right(piece);
    return 2.0 * (x - lo) / (hi - lo) - 1.0;
}

/// G^p, the inverse of F^p. The endpoints map back to the piece ends exactly.
[[nodiscard]] inline double affine_from_reference(double u, std::size_t piece,
                                                  const PiecewiseDomain& domain) {
    const double lo = domain.left(piece);
    const double hi = domain.right(piece);
    if (u == -1.0) return lo;
    if (u == 1.0) return hi;
    return (hi - lo) * (u + 1.0) / 2.0 + lo;
}

inline void check_kte_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("KTE parameter alpha must be in (0, 1]");
}

/// Kosloff Tal-Ezer map sin(alpha pi x / 2) / sin(alpha pi / 2) on [-1, 1].
/// Odd, strictly increasing, fixes -1, 0 and 1.
[[nodiscard]] inline double kte(double alpha, double x) {
    check_kte_alpha(alpha);
    if (x == 1.0 || x == -1.0) return x;
    constexpr double half_pi = std::numbers::pi / 2.0;
    return std::sin(alpha * half_pi * x) / std::sin(alpha * half_pi);
}

inline void check_kappa(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be a positive finite number");
}

/// S-Gibbs shift: x + p * kappa on piece p. `piece` overrides the membership rule, which
/// lets callers evaluate the right-hand limit at a cut.
[[nodiscard]] inline double sgibbs(double kappa, const PiecewiseDomain& domain, double x,
                                   std::optional<std::size_t> piece = std::nullopt) {
    check_kappa(kappa);
    const std::size_t p = piece ? (domain.check_piece(*piece), *piece) : domain.locate(x);
    return x + static_cast<double>(p) * kappa;
}

/// Multiple KTE map: G^p o M_alpha o F^p on every piece p. Maps the domain onto itself,
/// is continuous and increasing, and fixes a, b and every cut.
[[nodiscard]] inline double mkte(double alpha, const PiecewiseDomain& domain, double x,
                                 std::optional<std::size_t> piece = std::nullopt) {
    const std::size_t p = piece ? (domain.check_piece(*piece), *piece) : domain.locate(x);
    return affine_from_reference(kte(alpha, affine_to_reference(x, p, domain)), p, domain);
}

/// The domains V_n is defined on: [-1, 1] cut once at 0.
[[nodiscard]] inline bool supports_vn(const PiecewiseDomain& domain) {
    return domain.interval() == Interval::reference() && domain.num_cuts() == 1 &&
           domain.cuts()[0] == 0.0;
}

inline void check_vn(std::size_t n, const PiecewiseDomain& domain) {
    if (n < 4 || n % 2 != 0) throw InvalidArgument("V_n requires an even degree n >= 4");
    if (!supports_vn(domain)) {
        throw InvalidArgument("V_n is only defined on [-1, 1] with a single cut at 0");
    }
}

/// Node correction V_n for even n on [-1, 1] cut at 0: identity on [-1, 0], then two
/// linear branches meeting at 2/n that pull the right-hand equispaced nodes towards the cut
/// so the first one sits half a spacing away from it.
[[nodiscard]] inline double vn_correction(std::size_t n, const PiecewiseDomain& domain, double x) {
    check_vn(n, domain);
    if (!domain.contains(x)) throw InvalidArgument("V_n evaluated outside [-1, 1]");
    const double nd = static_cast<double>(n);
    if (x <= 0.0) return x;
    if (x <= 2.0 / nd) return nd * x / (2.0 * (nd - 1.0));
    if (x == 1.0) return 1.0;
    return nd * x / (nd - 1.0) - 1.0 / (nd - 1.0);
}

// ---------------------------------------------------------------------------
// Map chains
// ---------------------------------------------------------------------------

struct IdentityMap {};

struct AffineToReferenceMap {
    PiecewiseDomain domain;
    std::size_t piece = 0;
};

struct AffineFromReferenceMap {
    PiecewiseDomain domain;
    std::size_t piece = 0;
};

struct KteMap {
    double alpha = 1.0;
};

struct SGibbsMap {
    double kappa = 1e4;
    PiecewiseDomain domain;
};

struct MkteMap {
    double alpha = 1.0;
    PiecewiseDomain domain;
};

struct VnMap {
    std::size_t n = 4;
    PiecewiseDomain domain;
};

using AtomicMap =
    std::variant<IdentityMap, AffineToReferenceMap, AffineFromReferenceMap, KteMap, SGibbsMap, MkteMap, VnMap>;

[[nodiscard]] inline std::string describe(const AtomicMap& m) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IdentityMap>) return "identity";
            else if constexpr (std::is_same_v<T, AffineToReferenceMap>) return "F" + std::to_string(s.piece);
            else if constexpr (std::is_same_v<T, AffineFromReferenceMap>) return "G" + std::to_string(s.piece);
            else if constexpr (std::is_same_v<T, KteMap>) return "kte(" + std::to_string(s.alpha) + ")";
            else if constexpr (std::is_same_v<T, SGibbsMap>) return "sgibbs(" + std::to_string(s.kappa) + ")";
            else if constexpr (std::is_same_v<T, MkteMap>) return "mkte(" + std::to_string(s.alpha) + ")";
            else return "vn(" + std::to_string(s.n) + ")";
        },
        m);
}

/// Composition of atomic maps, applied first to last.
///
/// Piecewise stages (S-Gibbs, MKTE, V_n) share the piece index of the input point: it is
/// resolved once, by the first piecewise stage or by the caller, and carried through every
/// piece-preserving stage on the same domain. This keeps points within rounding distance of
/// a cut on the branch they started on.
class MapChain {
public:
    MapChain() = default;

    explicit MapChain(std::vector<AtomicMap> stages) : stages_(std::move(stages)) {
        for (const auto& s : stages_) validate(s);
    }

    [[nodiscard]] static MapChain identity() { return {}; }

    [[nodiscard]] static MapChain sgibbs(double kappa, const PiecewiseDomain& domain) {
        return MapChain({SGibbsMap{kappa, domain}});
    }

    [[nodiscard]] static MapChain mkte(double alpha, const PiecewiseDomain& domain) {
        return MapChain({MkteMap{alpha, domain}});
    }

    /// S_kappa o MKTE_1, optionally preceded by V_n.
    [[nodiscard]] static MapChain graspa(double kappa, const PiecewiseDomain& domain,
                                         std::optional<std::size_t> vn_degree = std::nullopt) {
        std::vector<AtomicMap> stages;
        if (vn_degree) stages.emplace_back(VnMap{*vn_degree, domain});
        stages.emplace_back(MkteMap{1.0, domain});
        stages.emplace_back(SGibbsMap{kappa, domain});
        return MapChain(std::move(stages));
    }

    [[nodiscard]] MapChain then(AtomicMap next) const {
        auto stages = stages_;
        stages.push_back(std::move(next));
        return MapChain(std::move(stages));
    }

    [[nodiscard]] std::span<const AtomicMap> stages() const noexcept { return stages_; }
    [[nodiscard]] bool is_identity() const noexcept {
        for (const auto& s : stages_) {
            if (!std::holds_alternative<IdentityMap>(s)) return false;
        }
        return true;
    }

    [[nodiscard]] double operator()(double x) const { return apply(x, std::nullopt); }

    /// Evaluates the chain; `piece` forces the piece the input point is treated as part of.
    [[nodiscard]] double apply(double x, std::optional<std::size_t> piece) const {
        const PiecewiseDomain* carried = nullptr;
        for (const auto& stage : stages_) {
            x = std::visit(
                [&](const auto& s) -> double {
                    using T = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<T, IdentityMap>) {
                        return x;
                    } else if constexpr (std::is_same_v<T, KteMap>) {
                        piece.reset();
                        return kte(s.alpha, x);
                    } else if constexpr (std::is_same_v<T, AffineToReferenceMap>) {
                        piece.reset();
                        return affine_to_reference(x, s.piece, s.domain);
                    } else if constexpr (std::is_same_v<T, AffineFromReferenceMap>) {
                        piece.reset();
                        return affine_from_reference(x, s.piece, s.domain);
                    } else {
                        if (carried != nullptr && piece && !(*carried == s.domain)) piece.reset();
                        const std::size_t p = piece ? *piece : s.domain.locate(x);
                        double y = 0.0;
                        if constexpr (std::is_same_v<T, SGibbsMap>) {
                            y = graspa::sgibbs(s.kappa, s.domain, x, p);
                            piece.reset();
                            carried = nullptr;
                            return y;
                        } else if constexpr (std::is_same_v<T, MkteMap>) {
                            y = graspa::mkte(s.alpha, s.domain, x, p);
                        } else {
                            y = vn_correction(s.n, s.domain, x);
                        }
                        piece = p;
                        carried = &s.domain;
                        return y;
                    }
                },
                stage);
        }
        return x;
    }

    [[nodiscard]] std::vector<double> apply(std::span<const double> xs) const {
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back((*this)(x));
        return out;
    }

    [[nodiscard]] std::string describe() const {
        if (stages_.empty()) return "identity";
        std::string out;
        for (const auto& s : stages_) {
            if (!out.empty()) out += " -> ";
            out += graspa::describe(s);
        }
        return out;
    }

private:
    static void validate(const AtomicMap& m) {
        std::visit(
            [](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, AffineToReferenceMap> ||
                              std::is_same_v<T, AffineFromReferenceMap>) {
                    s.domain.check_piece(s.piece);
                } else if constexpr (std::is_same_v<T, KteMap> || std::is_same_v<T, MkteMap>) {
                    check_kte_alpha(s.alpha);
                } else if constexpr (std::is_same_v<T, SGibbsMap>) {
                    check_kappa(s.kappa);
                } else if constexpr (std::is_same_v<T, VnMap>) {
                    check_vn(s.n, s.domain);
                }
            },
            m);
    }

    std::vector<AtomicMap> stages_;
};

/// Q_kappa = S_kappa o MKTE_1, optionally after V_n (vn_degree = n).
[[nodiscard]] inline double graspa_map(double kappa, const PiecewiseDomain& domain, double x,
                                       std::optional<std::size_t> vn_degree = std::nullopt) {
    const std::size_t p = domain.locate(x);
    if (vn_degree) x = vn_correction(*vn_degree, domain, x);
    return sgibbs(kappa, domain, mkte(1.0, domain, x, p), p);
}

}  // namespace graspa
