#include "hcsos/errors.hpp"
#include "hcsos/tisgm.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hcsos;

TEST(ThetaCr, Values)
{
    EXPECT_EQ(theta_cr(2), 1.0);
    EXPECT_NEAR(theta_cr(3), oracle::theta_cr(3), 1e-14);
    EXPECT_NEAR(theta_cr(3), 1.6119, 1e-4);
    EXPECT_NEAR(theta_cr(4), oracle::theta_cr(4), 1e-14);
    EXPECT_NEAR(theta_cr(4), 2.1689, 1e-4);
    for (int k = 2; k <= 12; ++k)
        EXPECT_NEAR(theta_cr(k), oracle::theta_cr(k), 1e-13 * oracle::theta_cr(k));
    EXPECT_THROW(theta_cr(1), DomainError);
}

TEST(Eta, Values)
{
    EXPECT_DOUBLE_EQ(eta(1.0, 3), 6.75);
    EXPECT_NEAR(eta(2.0, 2), 0.72, 1e-15);
    for (double x : {0.5, 2.0, 3.7})
        EXPECT_NEAR(eta(x, 3), eta(1.0 / x, 3), 1e-15);
    EXPECT_THROW(eta(0.0, 2), DomainError);
    EXPECT_THROW(eta(-1.0, 2), DomainError);
}

TEST(Eta, MatchesLiteralSums)
{
    for (int k = 2; k <= 8; ++k)
        for (double x : {0.01, 0.3, 0.99, 1.0, 1.01, 2.5, 17.0, 100.0})
            EXPECT_NEAR(eta(x, k), oracle::eta(x, k), 1e-14 * oracle::eta(x, k)) << "k=" << k << " x=" << x;
}

TEST(Eta, UnimodalWithMaximumAtOne)
{
    for (int k = 2; k <= 8; ++k) {
        const double peak = (k - 1) * std::pow(k / 2.0, k);
        EXPECT_NEAR(eta(1.0, k), peak, 1e-12 * peak);
        double prev = 0.0;
        for (int i = 1; i < 200; ++i) {  // (0, 1)
            const double v = eta(i / 200.0, k);
            EXPECT_GT(v, prev);
            prev = v;
        }
        EXPECT_GT(eta(1.0, k), prev);
        prev = eta(1.0, k);
        for (int i = 1; i <= 400; ++i) {  // (1, 100]
            const double v = eta(1.0 + i * 99.0 / 400.0, k);
            EXPECT_LT(v, prev);
            prev = v;
        }
    }
}

TEST(SolveSymmetric, Examples)
{
    EXPECT_NEAR(solve_symmetric(2, 1.0).y, 1.0, 1e-14);

    const auto s = solve_symmetric(2, 0.5);
    EXPECT_EQ(s.x, 1.0);
    EXPECT_EQ(s.branch, Branch::Symmetric);
    EXPECT_NEAR(s.y, oracle::symmetric_root(2, 0.5), 1e-14);
    EXPECT_NEAR(s.y, symmetric_root_closed_form(2, 0.5), 1e-13);

    const auto t = solve_symmetric(3, 2.0);
    EXPECT_GT(t.y, 1.0);
    EXPECT_LT(t.y, std::pow(2.0, 0.25));
}

TEST(SolveSymmetric, ClosedFormsAgreeForKTwoAndThree)
{
    for (double theta : {0.05, 0.2, 0.5, 0.9, 1.0, 1.3, 2.0, 5.0, 20.0}) {
        for (int k : {2, 3}) {
            const double ref = oracle::symmetric_root(k, theta);
            EXPECT_NEAR(solve_symmetric(k, theta).y, ref, 1e-13);
            EXPECT_NEAR(symmetric_root_closed_form(k, theta), ref, 1e-12) << "k=" << k << " theta=" << theta;
        }
    }
    EXPECT_THROW(symmetric_root_closed_form(4, 1.0), Unsupported);
}

TEST(SolveSymmetric, IncreasingInTheta)
{
    for (int k = 2; k <= 8; ++k) {
        double prev = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double y = solve_symmetric(k, 0.05 * i).y;
            EXPECT_GT(y, prev);
            EXPECT_LT(y, std::pow(2.0, 1.0 / (k + 1)));
            prev = y;
        }
    }
}

TEST(SolveAsymmetric, EmptyAtAndAboveCritical)
{
    EXPECT_TRUE(solve_asymmetric(2, 1.0).empty());
    EXPECT_TRUE(solve_asymmetric(2, 1.5).empty());
    EXPECT_TRUE(solve_asymmetric(3, theta_cr(3)).empty());
}

TEST(SolveAsymmetric, ExactPairAtRhoFour)
{
    // theta^3 = 3/8 gives rho = 4, x = 2 +- sqrt(3)
    const double theta = std::cbrt(3.0 / 8.0);
    const auto pair = solve_asymmetric(2, theta);
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_NEAR(pair[0].x, 2.0 + std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(pair[1].x, 2.0 - std::sqrt(3.0), 1e-12);
    EXPECT_EQ(pair[0].branch, Branch::Upper);
    EXPECT_EQ(pair[1].branch, Branch::Lower);
    for (const auto& s : pair)
        EXPECT_LT(std::abs(oracle::k2_quartic(s.x, theta)), 1e-12);
}

TEST(SolveAsymmetric, ReciprocalPairAndResidualsKFive)
{
    const double theta = 0.9 * theta_cr(5);
    const auto pair = solve_asymmetric(5, theta);
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_NEAR(pair[0].x * pair[1].x, 1.0, 1e-9);
    EXPECT_NEAR(pair[0].x, oracle::upper_root(5, theta), 1e-12 * pair[0].x);
    for (const auto& s : pair) {
        EXPECT_LT(oracle::system_residual(s.x, s.y, 5, theta), 1e-10);
        EXPECT_LT(fixed_point_residual(s, 5, theta), 1e-10);
    }
}

TEST(SolveK2ClosedForm, Examples)
{
    const double theta = std::cbrt(3.0 / 8.0);
    const auto pair = solve_k2_closed_form(theta);
    EXPECT_NEAR(pair[0].x, 2.0 + std::sqrt(3.0), 1e-13);
    EXPECT_NEAR(pair[1].x, 2.0 - std::sqrt(3.0), 1e-13);
    EXPECT_NEAR(pair[0].x + 1.0 / pair[0].x, 4.0, 1e-13);

    const auto near = solve_k2_closed_form(1.0 - 1e-9);
    EXPECT_NEAR(near[0].x, 1.0, 1e-3);
    EXPECT_NEAR(near[1].x, 1.0, 1e-3);

    EXPECT_THROW(solve_k2_closed_form(1.0), DomainError);
    EXPECT_THROW(solve_k2_closed_form(0.0), DomainError);
}

TEST(SolveK2ClosedForm, NegativeRhoIsDiscarded)
{
    for (int i = 1; i < 50; ++i) {
        const double t3 = std::pow(i / 50.0, 3);
        EXPECT_LT((1.0 - std::sqrt(1.0 + 8.0 * t3)) / (2.0 * t3), 0.0);
        for (const auto& s : solve_k2_closed_form(i / 50.0))
            EXPECT_GT(s.x, 0.0);
    }
}

TEST(SolveK2ClosedForm, AgreesWithRootFinding)
{
    for (int i = 0; i < 50; ++i) {
        const double theta = 0.05 + i * (0.99 - 0.05) / 49.0;
        const auto closed = solve_k2_closed_form(theta);
        const auto found = solve_asymmetric(2, theta);
        ASSERT_EQ(found.size(), 2u);
        for (int j = 0; j < 2; ++j) {
            const double scale = std::max(1.0, closed[j].x);
            EXPECT_NEAR(found[j].x, closed[j].x, 1e-10 * scale) << "theta=" << theta;
            EXPECT_NEAR(found[j].y, closed[j].y, 1e-10 * std::max(1.0, closed[j].y)) << "theta=" << theta;
        }
    }
}

TEST(Enumerate, Counts)
{
    EXPECT_EQ(enumerate(2, 1.5).solutions.size(), 1u);
    EXPECT_EQ(enumerate(2, 0.5).solutions.size(), 3u);
    const auto at_cr = enumerate(3, theta_cr(3));
    EXPECT_EQ(at_cr.solutions.size(), 1u);
    EXPECT_TRUE(at_cr.critical);
    const auto set = enumerate(2, 0.5);
    EXPECT_EQ(set.solutions[0].branch, Branch::Symmetric);
    EXPECT_EQ(set.solutions[1].branch, Branch::Upper);
    EXPECT_EQ(set.solutions[2].branch, Branch::Lower);
}

TEST(Enumerate, CountLawAndResidualsOnGrids)
{
    for (int k = 2; k <= 8; ++k) {
        const double cr = theta_cr(k);
        for (int i = 0; i < 50; ++i) {
            const double theta = 0.1 + i * (2.0 * cr - 0.1) / 49.0;
            if (std::abs(theta - cr) < 1e-9)
                continue;
            const auto set = enumerate(k, theta);
            EXPECT_EQ(set.solutions.size(), theta < cr ? 3u : 1u) << "k=" << k << " theta=" << theta;
            for (const auto& s : set.solutions) {
                EXPECT_LT(fixed_point_residual(s, k, theta), 1e-10);
                EXPECT_GT(s.x, 0.0);
                EXPECT_GT(s.y, 0.0);
                EXPECT_EQ(s.branch, branch_for(s.x));
            }
            if (set.solutions.size() == 3)
                EXPECT_NEAR(set.solutions[1].x * set.solutions[2].x, 1.0, 1e-9);
        }
    }
}

TEST(Enumerate, JustBelowCriticalBandStillFindsPair)
{
    for (int k = 2; k <= 6; ++k) {
        const double theta = theta_cr(k) - 1e-8;
        const auto set = enumerate(k, theta);
        ASSERT_EQ(set.solutions.size(), 3u) << "k=" << k;
        EXPECT_FALSE(set.critical);
        EXPECT_GT(set.solutions[1].x, 1.0 + 1e-9);
    }
}

TEST(BoundaryLaw, Validation)
{
    EXPECT_NO_THROW(BoundaryLaw({2.0, 3.0, 1.0}));
    EXPECT_THROW(BoundaryLaw({2.0, 3.0, 1.5}), DomainError);
    EXPECT_THROW(BoundaryLaw({2.0, 0.0, 1.0}), DomainError);
    EXPECT_THROW(BoundaryLaw({2.0, 1.0}), DomainError);
    EXPECT_THROW(BoundaryLaw({1.0, 1.0, 1.0, 1.0}), DomainError);
    EXPECT_EQ(BoundaryLaw::ones(4).m(), 4);
}

TEST(BoundaryLawMap, MatchesWrittenOutEquationsForMFour)
{
    const ModelParams p(3, 0.8, 4);
    const std::vector<double> z{1.3, 0.7, 2.1, 0.4, 1.0};
    const auto img = boundary_law_map(p, z);
    const double th = 0.8, d = 1.0 + th * z[3];
    auto pw = [](double v) { return v * v * v; };
    EXPECT_NEAR(img[0], pw((z[0] + th * z[1]) / d), 1e-14);
    EXPECT_NEAR(img[1], pw((th * z[0] + th * z[2]) / d), 1e-14);
    EXPECT_NEAR(img[2], pw((th * z[1] + z[2] + th * z[3]) / d), 1e-14);
    EXPECT_NEAR(img[3], pw((th * z[2] + th * z[4]) / d), 1e-14);
    EXPECT_EQ(img[4], 1.0);
}

TEST(IterateBoundaryLaw, TrivialFixedPointAtThetaOne)
{
    const auto res = iterate_boundary_law(ModelParams(2, 1.0), BoundaryLaw::ones(2), 100, 1e-14);
    EXPECT_TRUE(res.converged);
    EXPECT_EQ(res.law, (std::vector<double>{1.0, 1.0, 1.0}));
    EXPECT_EQ(res.residual, 0.0);
}

TEST(IterateBoundaryLaw, ConvergedPointMatchesEnumerate)
{
    for (auto [k, theta] : {std::pair{2, 0.5}, {2, 0.9}, {3, 0.5}, {5, 0.5}}) {
        const auto res = iterate_boundary_law(ModelParams(k, theta), BoundaryLaw::ones(2), 200000, 1e-14);
        ASSERT_TRUE(res.converged) << "k=" << k << " theta=" << theta;
        const auto s = solution_from_law(res.law, k);
        const auto ref = solve_symmetric(k, theta);
        EXPECT_NEAR(s.x, ref.x, 1e-8);
        EXPECT_NEAR(s.y, ref.y, 1e-8);
    }
}

// At k = 2, theta = 1.5 the symmetric point is repelling (k |lambda_1| > 1) and
// plain iteration settles on a period-2 orbit; it must be reported, not accepted.
TEST(IterateBoundaryLaw, PeriodTwoOrbitIsReported)
{
    const auto res = iterate_boundary_law(ModelParams(2, 1.5), BoundaryLaw::ones(2), 5000, 1e-14);
    EXPECT_FALSE(res.converged);
    EXPECT_EQ(res.reason, "max_iter");
    ASSERT_EQ(res.tail.size(), kTrajectoryTail);
    const auto& a = res.tail[res.tail.size() - 1];
    const auto& b = res.tail[res.tail.size() - 3];
    EXPECT_NEAR(a[1], b[1], 1e-9);
    EXPECT_GT(std::abs(res.tail.back()[1] - res.tail[res.tail.size() - 2][1]), 1.0);
    EXPECT_GT(res.residual, 1.0);
}

TEST(IterateBoundaryLaw, ExploratoryMFour)
{
    const ModelParams p(2, 0.8, 4);
    const auto res = iterate_boundary_law(p, BoundaryLaw::ones(4), 100000, 1e-13);
    if (res.converged) {
        EXPECT_LT(res.residual, 1e-12);
        EXPECT_EQ(res.law.back(), 1.0);
    } else {
        EXPECT_FALSE(res.tail.empty());
    }
}

TEST(IterateBoundaryLaw, Guards)
{
    EXPECT_THROW(iterate_boundary_law(ModelParams(2, 1.0, 4), BoundaryLaw::ones(2), 10, 1e-9), DomainError);
    EXPECT_THROW(iterate_boundary_law(ModelParams(2, 1.0), BoundaryLaw::ones(2), 0, 1e-9), DomainError);
    EXPECT_THROW(iterate_boundary_law(ModelParams(2, 1.0), BoundaryLaw::ones(2), 10, 0.0), DomainError);
}
