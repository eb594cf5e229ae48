#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "resonet/envelope.hpp"
#include "resonet/errors.hpp"
#include "resonet/linalg.hpp"
#include "resonet/threads.hpp"

namespace resonet {

// Steady-state response of the envelope system under a weak probe: for each
// probe detuning delta (relative to the carrier) solve
//   (delta I - H/2 - i (gamma/2) I) X = f e_drive
// and read site `probe`. Peaks sit at the normal-mode detunings, i.e. at
// half the eigenvalues of the coupling matrix.

struct ResponseCurve {
    std::vector<double> detunings;      // rad/s
    std::vector<double> magnitudes;     // |X_probe|
    std::vector<cplx> complex_values;   // X_probe
    int drive_site = 0;
    int probe_site = 0;
    double gamma = 0.0;
};

inline std::vector<double> eigenvalues(const CouplingMatrix& m) {
    return jacobi_eigh(m.h).values;
}

inline ResponseCurve frequency_response(const CouplingMatrix& m, double gamma,
                                        int drive_site, int probe_site,
                                        const std::vector<double>& detunings,
                                        double drive_amplitude = 1.0) {
    const std::size_t n = m.n;
    if (!(gamma > 0.0))
        throw invalid_argument_error("frequency_response: gamma must be positive");
    if (drive_site < 1 || static_cast<std::size_t>(drive_site) > n)
        throw invalid_argument_error("frequency_response: drive site out of range");
    if (probe_site < 1 || static_cast<std::size_t>(probe_site) > n)
        throw invalid_argument_error("frequency_response: probe site out of range");
    if (detunings.empty())
        throw invalid_argument_error("frequency_response: empty detuning grid");

    ResponseCurve out;
    out.detunings = detunings;
    out.magnitudes.resize(detunings.size());
    out.complex_values.resize(detunings.size());
    out.drive_site = drive_site;
    out.probe_site = probe_site;
    out.gamma = gamma;

    const std::size_t di = static_cast<std::size_t>(drive_site) - 1;
    const std::size_t pi_ = static_cast<std::size_t>(probe_site) - 1;

    parallel_for(detunings.size(), [&](std::size_t k) {
        std::vector<cplx> a(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cplx v = -0.5 * m.h.at(i, j);
                if (i == j) v += cplx(detunings[k], -0.5 * gamma);
                a[i * n + j] = v;
            }
        std::vector<cplx> b(n, cplx(0.0, 0.0));
        b[di] = drive_amplitude;
        const std::vector<cplx> x = solve_complex(std::move(a), std::move(b), n);
        out.complex_values[k] = x[pi_];
        out.magnitudes[k] = std::abs(x[pi_]);
    });
    return out;
}

// Interior local maxima of the magnitude curve, refined by fitting a
// parabola through each maximum and its neighbours. The grid must resolve
// the linewidth (spacing <= gamma/10).
inline std::vector<double> peak_positions(const ResponseCurve& curve, double gamma) {
    const auto& d = curve.detunings;
    const auto& mag = curve.magnitudes;
    if (d.size() < 3)
        throw invalid_argument_error("peak_positions: need at least 3 grid points");
    if (!(gamma > 0.0))
        throw invalid_argument_error("peak_positions: gamma must be positive");
    const double h = d[1] - d[0];
    if (!(h > 0.0))
        throw invalid_argument_error("peak_positions: detunings must be increasing");
    for (std::size_t i = 1; i < d.size(); ++i)
        if (std::fabs(d[i] - d[i - 1] - h) > 1e-9 * h)
            throw invalid_argument_error("peak_positions: grid must be uniform");
    if (h > gamma / 10.0 + 1e-15 * gamma)
        throw invalid_argument_error("peak_positions: grid spacing must be <= gamma/10");

    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
        if (mag[i] > mag[i - 1] && mag[i] >= mag[i + 1]) {
            const double denom = mag[i - 1] - 2.0 * mag[i] + mag[i + 1];
            double offset = 0.0;
            if (denom != 0.0) offset = 0.5 * h * (mag[i - 1] - mag[i + 1]) / denom;
            peaks.push_back(d[i] + offset);
        }
    }
    return peaks;
}

} // namespace resonet
