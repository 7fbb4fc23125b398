#include "oracles.hpp"
#include "so3tqft/modular_data.hpp"

#include <gtest/gtest.h>

#include <complex>

namespace {

const long kLevels[] = {5, 7, 11, 13};

}  // namespace

class ModularDataLevel : public ::testing::TestWithParam<long> {};

TEST_P(ModularDataLevel, MatchesTrigonometricClosedForms) {
    const long r = GetParam();
    const auto md = so3::build_modular_data(r);
    ASSERT_EQ(md.rank(), static_cast<std::size_t>((r - 1) / 2));
    for (std::size_t a = 0; a < md.rank(); ++a) {
        const int i = md.labels[a];
        EXPECT_NEAR(md.qdim[a].embed().real(), oracle::qdim(i, r), 1e-9);
        EXPECT_NEAR(md.qdim[a].embed().imag(), 0, 1e-9);
        EXPECT_NEAR(std::abs(md.twist[a].embed() - oracle::twist(i, r)), 0, 1e-9);
        for (std::size_t b = 0; b < md.rank(); ++b)
            EXPECT_NEAR(md.s_tilde(a, b).embed().real(), oracle::s_tilde(i, md.labels[b], r), 1e-9);
    }
    EXPECT_NEAR(md.global_dim.embed().real(), oracle::global_dim(r), 1e-9);
    EXPECT_NEAR(std::abs(md.p_minus.embed() - oracle::p_minus(r)), 0, 1e-8);
    EXPECT_NEAR(std::abs(md.p_plus.embed() - oracle::p_plus(r)), 0, 1e-8);
}

TEST_P(ModularDataLevel, ExactStructure) {
    const long r = GetParam();
    const auto md = so3::build_modular_data(r);
    const auto c = so3::check_modular_data(md);
    EXPECT_TRUE(c.rank_ok);
    EXPECT_TRUE(c.unit_object_ok);
    EXPECT_TRUE(c.global_dim_ok);
    EXPECT_TRUE(c.s_symmetric);
    EXPECT_TRUE(c.s_unitary);
    EXPECT_TRUE(c.first_row_ok);
    EXPECT_EQ(md.p_plus * md.p_minus, md.global_dim * md.global_dim);
    EXPECT_EQ(md.p_plus, md.p_minus.conj());
}

TEST_P(ModularDataLevel, ProjectiveSl2zRelations) {
    const long r = GetParam();
    const auto rho = so3::rho_genus1(r);
    const auto rel = so3::check_sl2z_relations(rho.s, rho.t, r);
    EXPECT_TRUE(rel.s4_scalar);
    EXPECT_TRUE(rel.s2_scalar);
    EXPECT_TRUE(rel.braid);
    EXPECT_TRUE(rel.t_order_r);
    EXPECT_FALSE(rho.t.pow(1).is_scalar());
}

TEST_P(ModularDataLevel, DehnTwistSpectrum) {
    const long r = GetParam();
    const auto sp = so3::dehn_twist_spectrum(r);
    EXPECT_EQ(sp.distinct, static_cast<std::size_t>((r - 1) / 2));
    // The normalized spectrum is the conjugate of X_r. X_r is closed under
    // conjugation exactly when -1 is a square mod r.
    EXPECT_TRUE(sp.matches_conj_x_r);
    EXPECT_EQ(sp.matches_x_r, r % 4 == 1);
    for (const auto& x : sp.normalized) EXPECT_EQ(so3::root_of_unity_order(x), r);
}

TEST_P(ModularDataLevel, CentralChargeAgreesWithPhaseOfGaussSum) {
    const long r = GetParam();
    const auto md = so3::build_modular_data(r);
    const auto cc = so3::central_charge(md);
    ASSERT_GE(cc.exponent, 0);
    // p_-/D = exp(pi i c / 4): recover c from the floating argument.
    const double arg = std::arg(oracle::p_minus(r) / oracle::global_dim(r));
    double c = 4 * arg / oracle::pi;
    if (c < 0) c += 8;
    EXPECT_NEAR(cc.c.get_d(), c, 1e-9);
    EXPECT_EQ(cc.order % r, 0);
}

INSTANTIATE_TEST_SUITE_P(Levels, ModularDataLevel, ::testing::ValuesIn(kLevels));

TEST(ModularData, QuantumIntegerSmallValues) {
    EXPECT_TRUE(so3::quantum_integer(1, 7).is_one());
    EXPECT_TRUE(so3::quantum_integer(0, 7).is_zero());
    // [r] = 0 at a primitive root of the right order.
    EXPECT_TRUE(so3::quantum_integer(7, 7).is_zero());
    EXPECT_EQ(so3::quantum_integer(2, 5) * so3::quantum_integer(2, 5),
              so3::quantum_integer(1, 5) + so3::quantum_integer(3, 5));
}

TEST(ModularData, GlobalDimensionValues) {
    EXPECT_NEAR(so3::build_modular_data(5).global_dim.embed().real(), 1.9021130325903, 1e-12);
    EXPECT_NEAR(so3::build_modular_data(7).global_dim.embed().real(), 3.0489173395223, 1e-12);
}

TEST(ModularData, CentralChargeValues) {
    EXPECT_EQ(so3::central_charge(so3::build_modular_data(5)).c, mpq_class(26, 5));
    EXPECT_EQ(so3::central_charge(so3::build_modular_data(7)).c, mpq_class(48, 7));
    EXPECT_EQ(so3::central_charge(so3::build_modular_data(11)).c, mpq_class(72, 11));
    EXPECT_EQ(so3::central_charge(so3::build_modular_data(13)).c, mpq_class(58, 13));
}

TEST(ModularData, RejectsBadLevels) {
    EXPECT_THROW(so3::build_modular_data(4), so3::usage_error);
    EXPECT_THROW(so3::build_modular_data(9), so3::usage_error);
    EXPECT_THROW(so3::build_modular_data(3), so3::usage_error);
    const auto md = so3::build_modular_data(7);
    EXPECT_THROW(md.index_of(3), so3::usage_error);
    EXPECT_THROW(md.index_of(6), so3::usage_error);
    EXPECT_EQ(md.index_of(4), 2u);
}
