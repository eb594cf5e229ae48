#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "resonet/synthesis.hpp"

using namespace resonet;

TEST(PstCouplings, FourSiteValues) {
    const PstProfile p = pst_couplings(4, two_pi * 52.0);
    ASSERT_EQ(p.couplings.size(), 3u);
    // (c0/2) sqrt(j(4-j)): sqrt(3), 2, sqrt(3) times 26 Hz.
    EXPECT_NEAR(p.couplings[0] / two_pi, 45.03332099679081, 1e-9);
    EXPECT_NEAR(p.couplings[1] / two_pi, 52.0, 1e-12);
    EXPECT_NEAR(p.couplings[2] / two_pi, 45.03332099679081, 1e-9);
    EXPECT_NEAR(p.period, 1.0 / 52.0, 1e-15);
}

TEST(PstCouplings, EightSiteValues) {
    const PstProfile p = pst_couplings(8, two_pi * 30.0);
    ASSERT_EQ(p.couplings.size(), 7u);
    EXPECT_NEAR(p.couplings[0] / two_pi, 15.0 * std::sqrt(7.0), 1e-9);
    EXPECT_NEAR(p.couplings[3] / two_pi, 60.0, 1e-12); // middle: 15*sqrt(16)
    EXPECT_NEAR(p.period, 1.0 / 30.0, 1e-15);
}

TEST(PstCouplings, MirrorSymmetryIsExact) {
    // Mirrored edges come from the same floating-point expression, so they
    // must compare equal to the last bit.
    for (int n = 2; n <= 32; ++n) {
        const PstProfile p = pst_couplings(n, two_pi * 41.7);
        for (int j = 1; j < n; ++j) {
            const double a = p.couplings[static_cast<std::size_t>(j) - 1];
            const double b = p.couplings[static_cast<std::size_t>(n - j) - 1];
            EXPECT_EQ(a, b) << "n=" << n << " j=" << j;
        }
    }
}

TEST(PstCouplings, LinearInC0) {
    const PstProfile a = pst_couplings(9, two_pi * 20.0);
    const PstProfile b = pst_couplings(9, two_pi * 40.0);
    for (std::size_t j = 0; j < a.couplings.size(); ++j) {
        const double ratio = b.couplings[j] / a.couplings[j];
        EXPECT_NEAR(ratio, 2.0, 1e-15);
    }
}

TEST(PstCouplings, RejectsBadArguments) {
    EXPECT_THROW(pst_couplings(1, two_pi * 30.0), invalid_argument_error);
    EXPECT_THROW(pst_couplings(8, 0.0), invalid_argument_error);
    EXPECT_THROW(pst_couplings(8, -1.0), invalid_argument_error);
}

TEST(TransferPeriod, InverseOfC0) {
    EXPECT_NEAR(transfer_period(two_pi * 30.0), 1.0 / 30.0, 1e-15);
    EXPECT_NEAR(transfer_period(two_pi * 52.0), 1.0 / 52.0, 1e-15);
    EXPECT_THROW(transfer_period(0.0), invalid_argument_error);
}

TEST(MirrorIndex, MapsAcrossTheChain) {
    EXPECT_EQ(mirror_index(8, 1), 8);
    EXPECT_EQ(mirror_index(8, 3), 6);
    EXPECT_EQ(mirror_index(5, 3), 3);
    EXPECT_EQ(mirror_index(2, 2), 1);
    EXPECT_THROW(mirror_index(8, 0), invalid_argument_error);
    EXPECT_THROW(mirror_index(8, 9), invalid_argument_error);
}

TEST(ParityPhase, EvenPiOddZero) {
    EXPECT_DOUBLE_EQ(parity_phase(2), std::numbers::pi);
    EXPECT_DOUBLE_EQ(parity_phase(4), std::numbers::pi);
    EXPECT_DOUBLE_EQ(parity_phase(8), std::numbers::pi);
    EXPECT_DOUBLE_EQ(parity_phase(3), 0.0);
    EXPECT_DOUBLE_EQ(parity_phase(5), 0.0);
}

TEST(StrongCoupling, ComparesRateToLinewidth) {
    EXPECT_TRUE(is_strong_coupling(two_pi * 147.0, two_pi * 8.17));
    EXPECT_FALSE(is_strong_coupling(two_pi * 5.0, two_pi * 8.17));
}

TEST(Calibration, SinglePointSlope) {
    // 4 V dc, 0.8 V ac producing 147.06 Hz puts the slope at
    // 147.06 / 3.2 = 45.95625 Hz/V^2.
    const VoltageCalibration cal =
        fit_calibration({{4.0, 0.8, two_pi * 147.06}});
    EXPECT_NEAR(cal.alpha, 45.95625, 1e-9);
}

TEST(Calibration, LeastSquaresThroughOrigin) {
    // Exact data from alpha = 7 must be recovered exactly.
    const VoltageCalibration cal = fit_calibration({
        {1.0, 1.0, two_pi * 7.0},
        {2.0, 0.5, two_pi * 7.0},
        {3.0, 2.0, two_pi * 42.0},
    });
    EXPECT_NEAR(cal.alpha, 7.0, 1e-12);

    // Hand-computed normal equation for inconsistent data.
    const VoltageCalibration noisy = fit_calibration({
        {1.0, 1.0, two_pi * 6.0},
        {1.0, 2.0, two_pi * 16.0},
    });
    // alpha = (1*6 + 2*16) / (1 + 4) = 38/5.
    EXPECT_NEAR(noisy.alpha, 7.6, 1e-12);
}

TEST(Calibration, DegenerateProductsRejected) {
    EXPECT_THROW(fit_calibration({{0.0, 0.8, two_pi * 10.0},
                                  {4.0, 0.0, two_pi * 12.0}}),
                 degenerate_fit_error);
    EXPECT_THROW(fit_calibration({}), degenerate_fit_error);
}

TEST(Calibration, VoltageCouplingRoundTrip) {
    const VoltageCalibration cal{45.95625};
    const double c = coupling_from_voltage(cal, 4.0, 0.8);
    EXPECT_NEAR(c, two_pi * 147.06, 1e-9);
    EXPECT_NEAR(voltage_for_coupling(cal, c, 4.0), 0.8, 1e-12);
    EXPECT_THROW(voltage_for_coupling(cal, c, 0.0), invalid_argument_error);
    EXPECT_THROW(voltage_for_coupling(cal, c, -2.0), invalid_argument_error);
}

TEST(Calibration, SmallDriveLandsNearLinewidth) {
    // Extrapolating the strong-coupling fit point down to 0.05 V ac gives a
    // rate of the same size as an 8.17 Hz linewidth (within 15%).
    const VoltageCalibration cal =
        fit_calibration({{4.0, 0.8, two_pi * (18.0 * 8.17)}});
    const double c_hz = coupling_from_voltage(cal, 4.0, 0.05) / two_pi;
    EXPECT_NEAR(c_hz, 9.19125, 1e-9);
    EXPECT_LT(std::fabs(c_hz - 8.17) / 8.17, 0.15);
}
