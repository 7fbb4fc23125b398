#include "oracles.hpp"
#include "so3tqft/weil.hpp"

#include <gtest/gtest.h>

#include <random>

using so3::HeisenbergWord;
using so3::Mat2;

namespace {

const long kLevels[] = {5, 7, 11, 13};

Mat2 random_sl2(std::mt19937_64& rng, long r) {
    std::uniform_int_distribution<long> u(0, r - 1);
    for (;;) {
        Mat2 m{u(rng), u(rng), u(rng), u(rng)};
        if (so3::det(m, r) == 1) return m;
    }
}

}  // namespace

TEST(Heisenberg, NormalFormProduct) {
    const long r = 7;
    const HeisenbergWord x{0, 1, 0}, y{0, 0, 1};
    // y x = z^2 x y
    EXPECT_EQ(so3::multiply(y, x, r), (HeisenbergWord{2, 1, 1}));
    EXPECT_EQ(so3::multiply(x, y, r), (HeisenbergWord{0, 1, 1}));
    EXPECT_EQ(so3::power(x, r, r), HeisenbergWord{});
    EXPECT_EQ(so3::power(y, r, r), HeisenbergWord{});
}

TEST(Heisenberg, StoneVonNeumannCommutator) {
    for (long r : kLevels) {
        const auto h = so3::stone_von_neumann(r);
        const auto lhs = h.rho_y * h.rho_x * h.rho_y.inverse() * h.rho_x.inverse();
        EXPECT_EQ(lhs, h.rho_z * h.rho_z) << r;
        EXPECT_EQ(h.rho_x.pow(r), so3::CycMatrix::identity(r, 4 * r));
        // rho respects the normal-form product on random words.
        std::mt19937_64 rng(static_cast<unsigned>(r));
        std::uniform_int_distribution<long> u(0, r - 1);
        for (int i = 0; i < 10; ++i) {
            const HeisenbergWord a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
            EXPECT_EQ(h.rho(a) * h.rho(b), h.rho(so3::multiply(a, b, r)));
        }
    }
}

TEST(Heisenberg, ActionExamples) {
    const long r = 7;
    const auto id = so3::heisenberg_action(Mat2{}, r);
    EXPECT_EQ(id.image_x, (HeisenbergWord{0, 1, 0}));
    EXPECT_EQ(id.image_y, (HeisenbergWord{0, 0, 1}));
    const auto s = so3::heisenberg_action(so3::s_matrix(r), r);
    EXPECT_EQ(s.image_x, (HeisenbergWord{0, 0, 1}));      // a=0, c=1
    EXPECT_EQ(s.image_y, (HeisenbergWord{0, r - 1, 0}));  // b=-1, d=0
    EXPECT_THROW(so3::heisenberg_action(Mat2{2, 0, 0, 2}, r), so3::usage_error);
}

TEST(Heisenberg, ActionIsFunctorial) {
    for (long r : kLevels) {
        std::mt19937_64 rng(100 + static_cast<unsigned>(r));
        for (int i = 0; i < 100; ++i) {
            const Mat2 m = random_sl2(rng, r), n = random_sl2(rng, r);
            const auto fm = so3::heisenberg_action(m, r), fn = so3::heisenberg_action(n, r);
            const auto fmn = so3::heisenberg_action(so3::mul(m, n, r), r);
            const auto comp = so3::compose(fm, fn);
            EXPECT_EQ(fmn.image_x, comp.image_x);
            EXPECT_EQ(fmn.image_y, comp.image_y);
            const auto back = so3::compose(fm, so3::heisenberg_action(so3::inverse(m, r), r));
            EXPECT_EQ(back.image_x, (HeisenbergWord{0, 1, 0}));
            EXPECT_EQ(back.image_y, (HeisenbergWord{0, 0, 1}));
        }
    }
}

class WeilLevel : public ::testing::TestWithParam<long> {};

TEST_P(WeilLevel, GeneratorEntries) {
    const long r = GetParam();
    const auto w = so3::build_weil(r);
    EXPECT_EQ(w.R_S(1, 1), so3::e_r(r, 2));
    EXPECT_TRUE(w.R_T(0, 0).is_one());
    EXPECT_EQ(w.R_S_odd.rows(), static_cast<std::size_t>((r - 1) / 2));
    for (std::size_t i = 0; i < w.R_S.rows(); ++i)
        for (std::size_t j = 0; j < w.R_S.cols(); ++j)
            EXPECT_NEAR(std::abs(w.R_S(i, j).embed() - oracle::e(r, 2 * static_cast<long>(i * j))), 0, 1e-9);
}

TEST_P(WeilLevel, IntertwinerRelations) {
    const long r = GetParam();
    const auto w = so3::build_weil(r);
    ASSERT_EQ(w.intertwiners.size(), 4u);
    for (const auto& c : w.intertwiners) EXPECT_TRUE(c.holds) << c.alpha << "," << c.h;
}

TEST_P(WeilLevel, OddBlockEntryFormula) {
    const long r = GetParam();
    const auto w = so3::build_weil(r);
    const auto labels = so3::label_set(r);
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) {
            const long pa = (r - 1 - labels[a]) / 2, pb = (r - 1 - labels[b]) / 2;
            const auto expect = oracle::e(r, 2 * pa * pb) - oracle::e(r, -2 * pa * pb);
            EXPECT_NEAR(std::abs(w.R_S_odd(a, b).embed() - expect), 0, 1e-9);
        }
    EXPECT_TRUE(w.R_S_odd.is_symmetric());
    EXPECT_TRUE(w.R_T_odd.is_diagonal());
}

TEST_P(WeilLevel, IdentificationWithGenusOne) {
    const long r = GetParam();
    const auto md = so3::build_modular_data(r);
    const auto w = so3::build_weil(r);
    const auto rep = so3::verify_identification(md, w);
    EXPECT_TRUE(rep.s_identity);
    EXPECT_TRUE(rep.t_identity);
    EXPECT_FALSE(rep.mismatch.has_value());
    // Constants recovered independently as ratios of matrices.
    EXPECT_EQ(so3::proportionality(w.R_S_odd, md.s_tilde).value(), rep.s_constant);
    EXPECT_EQ(so3::proportionality(w.R_T_odd, so3::rho_genus1(md).t).value(), rep.t_constant);
    const auto a = oracle::kauffman_a(r);
    EXPECT_NEAR(std::abs(rep.s_constant.embed() - (a * a - 1.0 / (a * a))), 0, 1e-9);
    EXPECT_NEAR(std::abs(rep.t_constant.embed() -
                         oracle::expi(-2 * oracle::pi * static_cast<double>((r - 1) * (r - 1)) / (4.0 * r))),
                0, 1e-9);
    // |entries of (A^2 - A^-2)^{-1} R_S_odd| = |[(i+1)(j+1)]|
    const auto scaled = w.R_S_odd.scaled(rep.s_constant.inv());
    for (std::size_t i = 0; i < md.rank(); ++i)
        for (std::size_t j = 0; j < md.rank(); ++j)
            EXPECT_NEAR(std::abs(scaled(i, j).embed()),
                        std::abs(oracle::s_tilde(md.labels[i], md.labels[j], r)), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Levels, WeilLevel, ::testing::ValuesIn(kLevels));

TEST(Weil, MismatchIsReported) {
    const long r = 7;
    const auto md = so3::build_modular_data(r);
    auto w = so3::build_weil(r);
    w.R_S_odd(1, 2) += so3::CycNumber(md.modulus(), 1L);
    const auto rep = so3::verify_identification(md, w);
    EXPECT_FALSE(rep.s_identity);
    EXPECT_TRUE(rep.t_identity);
    ASSERT_TRUE(rep.mismatch.has_value());
    EXPECT_EQ(rep.mismatch->which, "R_S_odd");
    EXPECT_EQ(rep.mismatch->row, 1u);
    EXPECT_EQ(rep.mismatch->col, 2u);
}

TEST(Weil, NonInvariantSubspaceThrows) {
    const long r = 5;
    auto m = so3::CycMatrix::identity(r, 4 * r);
    m(0, 1) = so3::CycNumber(4 * r, 1L);  // leaks f_i into e_0
    EXPECT_THROW(so3::restrict_to_odd(m, r), std::logic_error);
}
