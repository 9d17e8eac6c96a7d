#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "graspa/experiments.hpp"
#include "graspa/figures.hpp"

using namespace graspa;

TEST(TestFunctions, ReferenceValues) {
    EXPECT_NEAR(f1(0.5), 0.5595233027498767, 1e-15);
    EXPECT_NEAR(f2(0.75), -0.12660003938283904, 1e-15);
    // Left branches and the jump convention.
    EXPECT_NEAR(f1(-0.5), 0.5, 1e-15);
    EXPECT_NEAR(f1(0.0), 1.0 / 26.0 - 0.5, 1e-15);
    EXPECT_NEAR(f2(-0.75), 0.5, 1e-15);
    EXPECT_NEAR(f2(0.25), 0.0, 1e-15);
    EXPECT_NEAR(f2(0.5), 1.0, 1e-15);
    EXPECT_NEAR(f2(0.0), 0.5, 1e-15);
}

TEST(TestFunctions, JumpsAtTheCuts) {
    for (double c : default_cuts(TestFunction::f1)) {
        EXPECT_GT(std::abs(f1(std::nextafter(c, 1.0)) - f1(c)), 0.1);
    }
    for (double c : default_cuts(TestFunction::f2)) {
        EXPECT_GT(std::abs(f2(std::nextafter(c, 1.0)) - f2(c)), 0.1);
    }
    EXPECT_EQ(default_cuts(TestFunction::f2).size(), 3U);
}

TEST(Methods, ParseAndNames) {
    EXPECT_EQ(parse_method("graspa+vn"), Method::graspa_vn);
    EXPECT_EQ(parse_method("graspa_vn"), Method::graspa_vn);
    EXPECT_EQ(column_name(Method::graspa_vn), "graspa_vn");
    EXPECT_EQ(to_string(Method::sgibbs), "sgibbs");
    EXPECT_THROW((void)parse_method("rbf"), InvalidArgument);
    EXPECT_THROW((void)parse_test_function("f3"), InvalidArgument);
}

TEST(Rmae, Definition) {
    const std::vector<double> truth = {1.0, -2.0, 0.5};
    const std::vector<double> approx = {1.1, -2.0, 0.0};
    EXPECT_NEAR(rmae(truth, approx), 0.5 / 2.0, 1e-15);
    const std::vector<double> zeros = {0.0, 0.0};
    EXPECT_THROW((void)rmae(zeros, zeros), InvalidArgument);
    EXPECT_THROW((void)rmae(truth, zeros), InvalidArgument);
}

TEST(UniformGrid, EndsAndSize) {
    const auto g = uniform_grid(Interval::reference(), 332);
    ASSERT_EQ(g.size(), 332U);
    EXPECT_EQ(g.front(), -1.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_THROW((void)uniform_grid(Interval::reference(), 1), InvalidArgument);
}

TEST(Comparison, F1DefaultRun) {
    ExperimentConfig c;
    const auto r = run_comparison(c);
    ASSERT_EQ(r.cells.size(), 9U);
    EXPECT_EQ(r.grid.size(), 332U);
    EXPECT_TRUE(r.warnings.empty());
    // GRASPA error decreases with n; classical blows up.
    EXPECT_GT(r.cell(Method::graspa, 11).rmae, r.cell(Method::graspa, 23).rmae);
    EXPECT_GT(r.cell(Method::graspa, 23).rmae, r.cell(Method::graspa, 51).rmae);
    EXPECT_GT(r.cell(Method::classical, 51).rmae, 1.0);
    EXPECT_LT(r.cell(Method::graspa, 51).lebesgue_constant, 4.0);
    EXPECT_GT(r.cell(Method::sgibbs, 23).lebesgue_constant, r.cell(Method::graspa, 23).lebesgue_constant);
    EXPECT_EQ(r.overflow_count(), 0U);
    EXPECT_THROW((void)r.cell(Method::graspa, 12), InvalidArgument);
}

TEST(Comparison, UnbalancedPartitionWarns) {
    ExperimentConfig c;
    c.cuts = {0.5};
    c.degrees = {10};
    c.compute_lebesgue = false;
    const auto r = run_comparison(c);
    ASSERT_EQ(r.warnings.size(), 1U);
    EXPECT_NE(r.warnings[0].find("{8,3}"), std::string::npos);
}

TEST(Comparison, ValidatesConfiguration) {
    ExperimentConfig c;
    c.methods = {Method::graspa_vn};
    c.degrees = {11};
    EXPECT_THROW((void)run_comparison(c), InvalidArgument);
    c.degrees = {};
    EXPECT_THROW(c.validate(), InvalidArgument);
    ExperimentConfig k;
    k.kappa = -1.0;
    EXPECT_THROW(k.validate(), InvalidArgument);
    ExperimentConfig custom;
    custom.function = TestFunction::custom;
    EXPECT_THROW((void)run_comparison(custom), InvalidArgument);
}

TEST(Comparison, CustomFunctionAndLagrangeMatrix) {
    ExperimentConfig c;
    c.function = TestFunction::custom;
    c.custom = [](double x) { return x <= 0.0 ? x * x : 1.0 + x; };
    c.degrees = {9};
    c.methods = {Method::graspa};
    c.lagrange_degrees = {9};
    c.keep_samples = true;
    const auto r = run_comparison(c);
    const auto& cell = r.cell(Method::graspa, 9);
    ASSERT_TRUE(cell.lagrange.has_value());
    EXPECT_EQ(cell.lagrange->rows(), 10);
    EXPECT_EQ(cell.lagrange->cols(), 100);
    EXPECT_EQ(cell.samples.size(), 332U);
    EXPECT_LT(cell.rmae, 0.05);
}

TEST(Degrees, Schedules) {
    EXPECT_EQ(four_j_plus_one(1, 3), (std::vector<std::size_t>{5, 9, 13}));
    EXPECT_EQ(degree_range(3, 9, 2), (std::vector<std::size_t>{3, 5, 7, 9}));
}

TEST(Figures, KnownIds) {
    EXPECT_EQ(figure_ids().size(), 11U);
    EXPECT_THROW((void)run_figure("fig10"), InvalidArgument);
}

TEST(Figures, LebesgueFunctionFigureSchema) {
    const auto out = run_figure("fig1");
    EXPECT_EQ(out.table.header, (std::vector<std::string>{"x", "lambda_classical", "lambda_sgibbs", "lambda_graspa"}));
    EXPECT_EQ(out.table.rows.size(), 1001U);
    EXPECT_EQ(out.overflow_cells, 0U);
}

TEST(Figures, InterpolantFigureSchema) {
    const auto out = run_figure("fig7");
    EXPECT_EQ(out.table.header, (std::vector<std::string>{"x", "f", "r_classical", "r_sgibbs", "r_graspa"}));
    EXPECT_EQ(out.table.rows.size(), 332U);
}

TEST(Figures, LagrangePairUsesEvenDegree) {
    const auto out = run_figure("fig4");
    ASSERT_EQ(out.extras.size(), 2U);
    EXPECT_EQ(out.extras[0].first, "_L_graspa");
    EXPECT_EQ(out.extras[1].first, "_L_graspa_vn");
    EXPECT_EQ(out.extras[0].second.rows.size(), 51U);
    EXPECT_EQ(out.extras[0].second.header.size(), 101U);
}

TEST(Figures, ConfigExperimentNamesMatrices) {
    ExperimentConfig c;
    c.name = "probe";
    c.degrees = {7};
    c.methods = {Method::classical, Method::graspa};
    c.lagrange_degrees = {7};
    ExperimentResult kept;
    const auto out = run_config_experiment(c, &kept);
    EXPECT_EQ(out.table.header,
              (std::vector<std::string>{"n", "lambda_classical", "lambda_graspa", "rmae_classical", "rmae_graspa"}));
    ASSERT_EQ(out.extras.size(), 2U);
    EXPECT_EQ(out.extras[1].first, "_L_graspa_n7");
    EXPECT_EQ(kept.cells.size(), 2U);
}
