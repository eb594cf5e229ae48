#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "resonet/envelope.hpp"
#include "resonet/errors.hpp"
#include "resonet/linalg.hpp"
#include "resonet/mechanical.hpp"
#include "resonet/synthesis.hpp"

namespace resonet {

// Software lock-in: mix a real signal with exp(-i ref_freq t), then smooth
// with a first-order recursive low-pass. |z| tracks the envelope of the
// ref_freq component and arg z its phase.

struct LockInConfig {
    double ref_freq = 0.0;      // rad/s
    double time_constant = 0.0; // s
    double sample_dt = 0.0;     // s
};

struct DemodChannel {
    std::vector<double> times;
    std::vector<cplx> envelope;
    double transient_until = 0.0; // samples before this time are filter warm-up
};

namespace detail {

inline void check_lockin(const LockInConfig& cfg) {
    if (!(cfg.ref_freq > 0.0))
        throw invalid_argument_error("lock-in: ref_freq must be positive");
    if (!(cfg.sample_dt > 0.0))
        throw invalid_argument_error("lock-in: sample_dt must be positive");
    if (cfg.time_constant < 10.0 * cfg.sample_dt)
        throw invalid_argument_error("lock-in: time_constant must be >= 10*sample_dt");
    if (cfg.sample_dt > two_pi / (10.0 * cfg.ref_freq))
        throw invalid_argument_error(
            "lock-in: need at least 10 samples per reference period");
}

} // namespace detail

inline DemodChannel demodulate(const std::vector<double>& times,
                               const std::vector<double>& signal,
                               const LockInConfig& cfg) {
    detail::check_lockin(cfg);
    if (times.size() != signal.size() || times.size() < 2)
        throw invalid_argument_error("demodulate: need matching times and samples");

    const std::size_t n = times.size();
    std::vector<cplx> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = -cfg.ref_freq * times[i];
        raw[i] = 2.0 * signal[i] * cplx(std::cos(ph), std::sin(ph));
    }

    DemodChannel ch;
    ch.times = times;
    ch.envelope.resize(n);
    const double alpha = 1.0 - std::exp(-cfg.sample_dt / cfg.time_constant);

    // Seed the filter with the first carrier period's mean so the output
    // does not start from zero and drag an artificial transient along.
    std::size_t seed = static_cast<std::size_t>(
        std::ceil(two_pi / (cfg.ref_freq * cfg.sample_dt)));
    seed = std::clamp<std::size_t>(seed, 1, n);
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < seed; ++i) acc += raw[i];
    ch.envelope[0] = acc / static_cast<double>(seed);

    for (std::size_t i = 1; i < n; ++i)
        ch.envelope[i] = ch.envelope[i - 1] + alpha * (raw[i] - ch.envelope[i - 1]);

    ch.transient_until = times.front() + 5.0 * cfg.time_constant;
    return ch;
}

// Demodulates one site's displacement record.
inline DemodChannel demodulate_site(const MechanicalTrajectory& traj, int site_index,
                                    const LockInConfig& cfg) {
    std::size_t pos = traj.site_index.size();
    for (std::size_t i = 0; i < traj.site_index.size(); ++i)
        if (traj.site_index[i] == site_index) pos = i;
    if (pos == traj.site_index.size())
        throw invalid_argument_error("demodulate_site: unknown site index");
    std::vector<double> sig(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) sig[k] = traj.positions[k][pos];
    return demodulate(traj.times, sig, cfg);
}

// Runs an already-complex series through the identical low-pass recursion.
// Used to put model-side reference envelopes on the same footing (group
// delay and droop) as a demodulated channel before comparing them.
inline std::vector<cplx> lowpass_track(const std::vector<double>& times,
                                       const std::vector<cplx>& series, double tau) {
    if (times.size() != series.size() || times.empty())
        throw invalid_argument_error("lowpass_track: need matching times and samples");
    if (!(tau > 0.0)) throw invalid_argument_error("lowpass_track: tau must be positive");
    std::vector<cplx> out(series.size());
    out[0] = series[0];
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        const double alpha = 1.0 - std::exp(-dt / tau);
        out[i] = out[i - 1] + alpha * (series[i] - out[i - 1]);
    }
    return out;
}

namespace detail {

inline std::size_t channel_sample(const DemodChannel& ch, double t) {
    if (ch.times.empty()) throw out_of_range_error("lock-in channel is empty");
    if (t < ch.times.front() - 1e-12 || t > ch.times.back() + 1e-12)
        throw out_of_range_error("time outside channel span");
    std::size_t best = 0;
    double best_d = std::fabs(ch.times[0] - t);
    for (std::size_t k = 1; k < ch.times.size(); ++k) {
        const double d = std::fabs(ch.times[k] - t);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

} // namespace detail

// Phase advance of the channel between t0 and t1, wrapped to (-pi, pi].
// Both instants must sit past the warm-up transient and carry measurable
// amplitude.
inline double channel_phase_shift(const DemodChannel& ch, double t0, double t1) {
    if (t0 < ch.transient_until || t1 < ch.transient_until)
        throw transient_region_error(
            "channel_phase_shift: time inside the filter transient");
    const std::size_t k0 = detail::channel_sample(ch, t0);
    const std::size_t k1 = detail::channel_sample(ch, t1);
    double peak = 0.0;
    for (const cplx& z : ch.envelope) peak = std::max(peak, std::abs(z));
    if (peak == 0.0)
        throw phase_undefined_error("channel_phase_shift: channel carries no signal");
    const double floor = 1e-6 * peak;
    if (std::abs(ch.envelope[k0]) < floor || std::abs(ch.envelope[k1]) < floor)
        throw phase_undefined_error("channel_phase_shift: amplitude below phase floor");
    return wrap_phase(std::arg(ch.envelope[k1]) - std::arg(ch.envelope[k0]));
}

} // namespace resonet
