#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "resonet/errors.hpp"

namespace resonet {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Engineered nearest-neighbour coupling ladder that transfers a
// single-site excitation to the mirrored site in exactly one period.
struct PstProfile {
    int n = 0;
    double c0 = 0.0;                // overall strength scale, rad/s
    std::vector<double> couplings;  // n-1 edge strengths, rad/s
    double period = 0.0;            // 2*pi/c0, s
};

// C_j = (c0/2) sqrt(j (n-j)), 1-based edge j between sites j and j+1.
// The integer product j*(n-j) is symmetric under j -> n-j, so mirrored
// edges evaluate through the identical expression and compare bit-equal.
inline PstProfile pst_couplings(int n, double c0) {
    if (n < 2) throw invalid_argument_error("pst_couplings: need at least 2 sites");
    if (!(c0 > 0.0)) throw invalid_argument_error("pst_couplings: c0 must be positive");
    PstProfile p;
    p.n = n;
    p.c0 = c0;
    p.period = two_pi / c0;
    p.couplings.resize(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j < n; ++j) {
        const double prod = static_cast<double>(j) * static_cast<double>(n - j);
        p.couplings[static_cast<std::size_t>(j) - 1] = 0.5 * c0 * std::sqrt(prod);
    }
    return p;
}

inline double transfer_period(double c0) {
    if (!(c0 > 0.0)) throw invalid_argument_error("transfer_period: c0 must be positive");
    return two_pi / c0;
}

inline int mirror_index(int n, int j) {
    if (n < 1) throw invalid_argument_error("mirror_index: n must be positive");
    if (j < 1 || j > n) throw invalid_argument_error("mirror_index: site out of range");
    return n - j + 1;
}

// Global phase picked up by a round trip (two transfer periods): pi for
// even chains, 0 for odd ones.
inline double parity_phase(int n) {
    if (n < 1) throw invalid_argument_error("parity_phase: n must be positive");
    return (n % 2 == 0) ? std::numbers::pi : 0.0;
}

inline bool is_strong_coupling(double coupling, double gamma) {
    return coupling > gamma;
}

// Electrostatic coupling model: C/2pi = alpha * v_dc * v_ac, alpha in Hz/V^2.
struct VoltageCalibration {
    double alpha = 0.0; // Hz per volt^2
};

struct CalibrationPoint {
    double v_dc = 0.0;     // V
    double v_ac = 0.0;     // V
    double coupling = 0.0; // measured rate, rad/s
};

// Least squares through the origin on (v_dc*v_ac, C/2pi).
inline VoltageCalibration fit_calibration(const std::vector<CalibrationPoint>& points) {
    if (points.empty()) throw degenerate_fit_error("fit_calibration: no points");
    double num = 0.0;
    double den = 0.0;
    for (const auto& p : points) {
        const double d = p.v_dc * p.v_ac;
        num += d * (p.coupling / two_pi);
        den += d * d;
    }
    if (den == 0.0)
        throw degenerate_fit_error("fit_calibration: all voltage products are zero");
    return VoltageCalibration{num / den};
}

inline double coupling_from_voltage(const VoltageCalibration& cal, double v_dc,
                                    double v_ac) {
    return two_pi * cal.alpha * v_dc * v_ac;
}

inline double voltage_for_coupling(const VoltageCalibration& cal, double coupling,
                                   double v_dc) {
    if (!(v_dc > 0.0))
        throw invalid_argument_error("voltage_for_coupling: v_dc must be positive");
    if (cal.alpha == 0.0)
        throw invalid_argument_error("voltage_for_coupling: zero calibration slope");
    return (coupling / two_pi) / (cal.alpha * v_dc);
}

} // namespace resonet
