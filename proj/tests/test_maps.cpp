#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "graspa/domain.hpp"
#include "graspa/maps.hpp"
#include "oracles.hpp"

using namespace graspa;

namespace {
const PiecewiseDomain kOneCut(Interval::reference(), {0.0});
const PiecewiseDomain kThreeCuts(Interval::reference(), {-0.5, 0.0, 0.5});
}  // namespace

TEST(Kte, FixesEndsAndZero) {
    for (double alpha : {0.1, 0.5, 0.9, 1.0}) {
        EXPECT_EQ(kte(alpha, -1.0), -1.0);
        EXPECT_EQ(kte(alpha, 1.0), 1.0);
        EXPECT_EQ(kte(alpha, 0.0), 0.0);
    }
    EXPECT_NEAR(kte(1.0, 0.5), std::sin(std::numbers::pi / 4.0), 1e-16);
}

TEST(Kte, RejectsAlphaOutsideUnitInterval) {
    EXPECT_THROW((void)kte(0.0, 0.2), InvalidArgument);
    EXPECT_THROW((void)kte(1.5, 0.2), InvalidArgument);
    EXPECT_THROW((void)kte(-0.5, 0.2), InvalidArgument);
    EXPECT_THROW(MapChain({KteMap{2.0}}), InvalidArgument);
}

TEST(Kte, SmallAlphaApproachesIdentity) {
    for (double x = -1.0; x <= 1.0; x += 0.125) EXPECT_NEAR(kte(1e-6, x), x, 1e-11);
}

TEST(Kte, PropertyOddAndIncreasing) {
    oracle::Gen g(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = g.uniform(1e-3, 1.0);
        const double x = g.uniform(-1.0, 1.0);
        const double y = g.uniform(-1.0, 1.0);
        EXPECT_NEAR(kte(alpha, -x), -kte(alpha, x), 1e-15);
        if (x < y) {
            EXPECT_LT(kte(alpha, x), kte(alpha, y));
        }
    }
}

TEST(Kte, EquispacedToLobatto) {
    const std::size_t n = 12;
    const auto x = equispaced_nodes(n, Interval::reference());
    const auto u = bg_chebyshev_nodes(n, 0.0, 0.0);
    for (std::size_t j = 0; j <= n; ++j) EXPECT_NEAR(kte(1.0, x[j]), u[j], 1e-15);
}

TEST(Kte, PropertyNodeMapIdentityOnShiftedEquispaced) {
    oracle::Gen g(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const double beta = g.uniform(0.0, 1.0);
        const double gamma = g.uniform(0.0, std::min(1.0, 1.99 - beta));
        const std::size_t n = g.integer(1, 100);
        const auto e = equispaced_nodes(n, Interval(-1.0 + beta, 1.0 - gamma));
        const auto u = bg_chebyshev_nodes(n, beta, gamma);
        for (std::size_t j = 0; j <= n; ++j) EXPECT_NEAR(kte(1.0, e[j]), u[j], 1e-13);
    }
}

TEST(SGibbs, ShiftsByPieceIndex) {
    EXPECT_EQ(sgibbs(1e4, kOneCut, -0.3), -0.3);
    EXPECT_EQ(sgibbs(1e4, kOneCut, 0.0), 0.0);
    EXPECT_EQ(sgibbs(1e4, kOneCut, 0.3), 1e4 + 0.3);
    EXPECT_EQ(sgibbs(1e4, kOneCut, 0.0, 1), 1e4);
    EXPECT_EQ(sgibbs(2.0, kThreeCuts, 0.75), 6.75);
    EXPECT_EQ(sgibbs(2.0, kThreeCuts, -0.5), -0.5);
    EXPECT_THROW((void)sgibbs(0.0, kOneCut, 0.1), InvalidArgument);
    EXPECT_THROW((void)sgibbs(-1.0, kOneCut, 0.1), InvalidArgument);
    EXPECT_THROW((void)sgibbs(INFINITY, kOneCut, 0.1), InvalidArgument);
    EXPECT_THROW((void)sgibbs(1.0, kOneCut, 0.1, 2), InvalidArgument);
}

TEST(SGibbs, PropertyInjectiveAndIncreasing) {
    oracle::Gen g(8);
    for (int trial = 0; trial < 500; ++trial) {
        const double kappa = std::pow(10.0, g.uniform(0.0, 8.0));
        const double x = g.uniform(-1.0, 1.0);
        const double y = g.uniform(-1.0, 1.0);
        if (x < y) {
            EXPECT_LT(sgibbs(kappa, kThreeCuts, x), sgibbs(kappa, kThreeCuts, y));
        }
    }
}

TEST(Mkte, FixesCutsAndEnds) {
    for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) EXPECT_EQ(mkte(1.0, kThreeCuts, x), x);
    for (std::size_t p = 1; p < 4; ++p) {
        EXPECT_EQ(mkte(1.0, kThreeCuts, kThreeCuts.left(p), p), kThreeCuts.left(p));
    }
}

TEST(Mkte, MatchesConjugatedKteOnEachPiece) {
    const PiecewiseDomain d(Interval(-2.0, 3.0), {-0.25, 1.5});
    oracle::Gen g(17);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = g.uniform(-2.0, 3.0);
        const std::size_t p = d.locate(x);
        const double lo = d.left(p);
        const double hi = d.right(p);
        const double u = 2.0 * (x - lo) / (hi - lo) - 1.0;
        const double expected = lo + (hi - lo) * (std::sin(0.7 * std::numbers::pi * u / 2.0) /
                                                      std::sin(0.7 * std::numbers::pi / 2.0) + 1.0) / 2.0;
        EXPECT_NEAR(mkte(0.7, d, x), expected, 1e-14);
    }
}

TEST(Mkte, PropertyContinuousIncreasingSelfMap) {
    oracle::Gen g(23);
    for (int trial = 0; trial < 300; ++trial) {
        const double x = g.uniform(-1.0, 1.0);
        const double y = g.uniform(-1.0, 1.0);
        const double mx = mkte(1.0, kThreeCuts, x);
        EXPECT_GE(mx, -1.0);
        EXPECT_LE(mx, 1.0);
        if (x < y) {
            EXPECT_LT(mx, mkte(1.0, kThreeCuts, y));
        }
    }
    for (double c : {-0.5, 0.0, 0.5}) {
        EXPECT_NEAR(mkte(1.0, kThreeCuts, c + 1e-12), c, 1e-11);
        EXPECT_NEAR(mkte(1.0, kThreeCuts, c - 1e-12), c, 1e-11);
    }
}

TEST(Vn, Branches) {
    const std::size_t n = 8;
    EXPECT_EQ(vn_correction(n, kOneCut, -0.4), -0.4);
    EXPECT_EQ(vn_correction(n, kOneCut, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(vn_correction(n, kOneCut, 0.1), 8.0 * 0.1 / 14.0);
    EXPECT_DOUBLE_EQ(vn_correction(n, kOneCut, 0.5), 8.0 * 0.5 / 7.0 - 1.0 / 7.0);
    EXPECT_EQ(vn_correction(n, kOneCut, 1.0), 1.0);
    // Both linear pieces meet at 2/n.
    EXPECT_NEAR(vn_correction(n, kOneCut, 0.25), 1.0 / 7.0, 1e-16);
    EXPECT_NEAR(8.0 * 0.25 / 7.0 - 1.0 / 7.0, 1.0 / 7.0, 1e-16);
}

TEST(Vn, RightNodesBecomeEquispacedHalfAStepFromTheCut) {
    for (std::size_t n : {4, 8, 16, 32}) {
        const auto x = equispaced_nodes(n, Interval::reference());
        std::vector<double> v;
        for (std::size_t j = n / 2 + 1; j <= n; ++j) v.push_back(vn_correction(n, kOneCut, x[j]));
        const double step = 2.0 / static_cast<double>(n - 1);
        EXPECT_NEAR(v.front(), step / 2.0, 1e-15);
        for (std::size_t k = 1; k < v.size(); ++k) EXPECT_NEAR(v[k] - v[k - 1], step, 1e-14);
        EXPECT_EQ(v.back(), 1.0);
    }
}

TEST(Vn, Preconditions) {
    EXPECT_THROW(check_vn(7, kOneCut), InvalidArgument);
    EXPECT_THROW(check_vn(2, kOneCut), InvalidArgument);
    EXPECT_THROW(check_vn(8, kThreeCuts), InvalidArgument);
    EXPECT_THROW(check_vn(8, PiecewiseDomain(Interval::reference(), {0.1})), InvalidArgument);
    EXPECT_THROW(check_vn(8, PiecewiseDomain(Interval(-2.0, 2.0), {0.0})), InvalidArgument);
    EXPECT_NO_THROW(check_vn(4, kOneCut));
    EXPECT_THROW(MapChain::graspa(1e4, kOneCut, 9), InvalidArgument);
    EXPECT_TRUE(supports_vn(kOneCut));
    EXPECT_FALSE(supports_vn(kThreeCuts));
}

TEST(MapChain, IdentityAndDescribe) {
    const MapChain id;
    EXPECT_TRUE(id.is_identity());
    EXPECT_EQ(id(0.37), 0.37);
    EXPECT_EQ(id.describe(), "identity");
    const auto q = MapChain::graspa(1e4, kOneCut, 8);
    EXPECT_FALSE(q.is_identity());
    EXPECT_EQ(q.stages().size(), 3U);
    EXPECT_NE(q.describe().find("vn(8)"), std::string::npos);
}

TEST(MapChain, GraspaIsSGibbsAfterMkte) {
    oracle::Gen g(31);
    const auto q = MapChain::graspa(1e4, kThreeCuts);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = g.uniform(-1.0, 1.0);
        const double expected = sgibbs(1e4, kThreeCuts, mkte(1.0, kThreeCuts, x));
        EXPECT_EQ(q(x), expected);
        EXPECT_EQ(graspa_map(1e4, kThreeCuts, x), expected);
    }
}

TEST(MapChain, PieceHintGivesRightLimitAtCut) {
    const auto q = MapChain::graspa(1e4, kOneCut);
    EXPECT_EQ(q(0.0), 0.0);
    EXPECT_EQ(q.apply(0.0, 1), 1e4);
    EXPECT_EQ(q.apply(0.0, 0), 0.0);
    const auto s = MapChain::sgibbs(5.0, kThreeCuts);
    EXPECT_EQ(s.apply(0.5, 3), 15.5);
}

TEST(MapChain, ExplicitAtomicComposition) {
    // G^1 o M_1 o F^1 built stage by stage equals MKTE on piece 1.
    const MapChain chain({AffineToReferenceMap{kThreeCuts, 1}, KteMap{1.0}, AffineFromReferenceMap{kThreeCuts, 1}});
    for (double x = -0.5; x <= 0.0; x += 0.05) EXPECT_NEAR(chain(x), mkte(1.0, kThreeCuts, x, 1), 1e-15);
    EXPECT_THROW(MapChain({AffineToReferenceMap{kThreeCuts, 7}}), InvalidArgument);
}

TEST(MapChain, OddCaseOffsets) {
    // Equispaced odd n, cut 0: after MKTE each half holds (beta,gamma)-Chebyshev points of
    // its piece, with offset 2/n at the cut.
    for (std::size_t n : {11, 23, 51}) {
        const auto x = equispaced_nodes(n, Interval::reference());
        const auto part = partition_nodes(x, kOneCut);
        const double off = 2.0 / static_cast<double>(n);
        const std::size_t m = part.parts[1].size() - 1;
        const auto u_right = bg_chebyshev_nodes(m, off, 0.0);
        const auto u_left = bg_chebyshev_nodes(m, 0.0, off);
        for (std::size_t k = 0; k <= m; ++k) {
            EXPECT_NEAR(affine_to_reference(mkte(1.0, kOneCut, part.parts[1][k]), 1, kOneCut), u_right[k], 1e-13);
            EXPECT_NEAR(affine_to_reference(mkte(1.0, kOneCut, part.parts[0][k]), 0, kOneCut), u_left[k], 1e-13);
        }
        // The value 2/(n+1) does not reproduce these nodes.
        const auto wrong = bg_chebyshev_nodes(m, 2.0 / static_cast<double>(n + 1), 0.0);
        double gap = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            gap = std::max(gap, std::abs(affine_to_reference(mkte(1.0, kOneCut, part.parts[1][k]), 1, kOneCut) - wrong[k]));
        }
        EXPECT_GT(gap, 1e-4);
    }
}
