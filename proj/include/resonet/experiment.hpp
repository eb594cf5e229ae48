#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resonet/config.hpp"
#include "resonet/envelope.hpp"
#include "resonet/errors.hpp"
#include "resonet/lockin.hpp"
#include "resonet/mechanical.hpp"
#include "resonet/model.hpp"
#include "resonet/output.hpp"
#include "resonet/spectrum.hpp"
#include "resonet/synthesis.hpp"
#include "resonet/version.hpp"

namespace resonet {

namespace detail {

// Snap the sample step so the grid lands exactly on the requested end time.
inline double snap_sample_dt(double duration, double requested) {
    if (!(requested > 0.0))
        throw invalid_argument_error("sample_dt_s must be positive");
    const double k = std::max(1.0, std::round(duration / requested));
    return duration / k;
}

inline ResultTable envelope_table(const std::string& name,
                                 const std::vector<double>& times,
                                 const std::vector<std::vector<cplx>>& states) {
    ResultTable t;
    t.name = name;
    const std::size_t n = states.empty() ? 0 : states[0].size();
    t.columns.push_back("time_s");
    t.units.push_back("s");
    for (std::size_t j = 1; j <= n; ++j) {
        t.columns.push_back("site_" + std::to_string(j) + "_re");
        t.units.push_back("dimensionless");
        t.columns.push_back("site_" + std::to_string(j) + "_im");
        t.units.push_back("dimensionless");
    }
    t.rows.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> row;
        row.reserve(1 + 2 * n);
        row.push_back(times[k]);
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(states[k][j].real());
            row.push_back(states[k][j].imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline const ChainSection& need_chain(const ExperimentConfig& c) {
    if (!c.chain) throw config_error("this experiment needs a 'chain' section");
    return *c.chain;
}

inline PstProfile chain_profile(const ChainSection& chain) {
    if (!(chain.c0_hz > 0.0))
        throw config_error("chain: c0_hz must be positive for this experiment");
    return pst_couplings(chain.n, two_pi * chain.c0_hz);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Full-vs-envelope comparison used by the evolve-full flow.
//
// The slow-envelope reduction of the mechanical equations carries exact
// per-site amplitude factors sqrt(omega_ref / omega_j) relative to the
// symmetric-matrix envelope: conjugating the pump-picture generator by
// diag(sqrt(omega_j)) is what symmetrizes it. The mechanical reference for
// a launch at site `ref` is therefore the weighted envelope, run through
// the same low-pass as the measured channels so group delay and droop
// cancel in the comparison.
// ---------------------------------------------------------------------------

struct FullRwaComparison {
    std::vector<double> site_dev; // max deviation per site, fraction of ref peak
    double max_dev = 0.0;
    double phase_shift = 0.0; // launch channel phase advance t0 -> t1
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<double> times;              // demod grid
    std::vector<std::vector<cplx>> demod;   // demod[k][site]
    std::vector<std::vector<cplx>> reference; // weighted, filtered envelope
};

inline FullRwaComparison compare_full_to_envelope(
    const MechanicalTrajectory& traj, const std::vector<double>& omegas,
    const CouplingMatrix& m, int launch_site, double tau, double period) {
    const std::size_t n = omegas.size();
    if (traj.site_index.size() != n || m.n != n)
        throw invalid_argument_error("compare_full_to_envelope: dimension mismatch");

    const double sample_dt = traj.times.size() > 1 ? traj.times[1] - traj.times[0] : 0.0;

    std::vector<DemodChannel> channels;
    channels.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        LockInConfig cfg;
        cfg.ref_freq = omegas[j];
        cfg.time_constant = tau;
        cfg.sample_dt = sample_dt;
        channels.push_back(demodulate_site(traj, traj.site_index[j], cfg));
    }

    // Envelope reference on the same grid, with the launch-relative
    // sqrt(omega) weights, through the same filter.
    const EigenDecomposition eig = jacobi_eigh(m.h);
    std::vector<cplx> x0(n, cplx(0.0, 0.0));
    x0[static_cast<std::size_t>(launch_site) - 1] = 1.0;
    const double omega_ref = omegas[static_cast<std::size_t>(launch_site) - 1];

    const std::vector<double>& times = traj.times;
    std::vector<std::vector<cplx>> ref_raw(n, std::vector<cplx>(times.size()));
    for (std::size_t k = 0; k < times.size(); ++k) {
        const std::vector<cplx> x = detail::propagate(eig, x0, times[k]);
        for (std::size_t j = 0; j < n; ++j)
            ref_raw[j][k] = std::sqrt(omega_ref / omegas[j]) * x[j];
    }
    std::vector<std::vector<cplx>> ref(n);
    for (std::size_t j = 0; j < n; ++j) ref[j] = lowpass_track(times, ref_raw[j], tau);

    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (const cplx& z : ref[j]) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) throw division_by_zero_error("reference envelope is all zero");

    FullRwaComparison out;
    out.site_dev.assign(n, 0.0);
    const double settle = times.front() + 5.0 * tau;
    for (std::size_t j = 0; j < n; ++j) {
        double dev = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (times[k] < settle) continue;
            const double d =
                std::fabs(std::abs(channels[j].envelope[k]) - std::abs(ref[j][k]));
            dev = std::max(dev, d);
        }
        out.site_dev[j] = dev / peak;
        out.max_dev = std::max(out.max_dev, out.site_dev[j]);
    }

    // Launch-channel phase advance across the round trip, when the record
    // is long enough: from half a period (past the transient) to two.
    out.t0 = std::max(settle, times.front() + 0.5 * period);
    out.t1 = times.front() + 2.0 * period;
    if (out.t1 <= times.back() + 1e-12) {
        const std::size_t lj = static_cast<std::size_t>(launch_site) - 1;
        out.phase_shift = channel_phase_shift(channels[lj], out.t0,
                                              std::min(out.t1, times.back()));
    }

    out.times = times;
    out.demod.resize(times.size());
    out.reference.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        out.demod[k].resize(n);
        out.reference[k].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            out.demod[k][j] = channels[j].envelope[k];
            out.reference[k][j] = ref[j][k];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Experiment flows
// ---------------------------------------------------------------------------

namespace detail {

inline ResultBundle new_bundle(const ExperimentConfig& c) {
    ResultBundle b;
    b.experiment = to_string(c.kind);
    b.config_hash = fnv1a_hash(c.raw_text);
    b.tool_version = version_string;
    b.wall_time = wall_time_utc();
    return b;
}

inline ResultBundle run_synth(const ExperimentConfig& c) {
    const ChainSection& chain = need_chain(c);
    const PstProfile p = chain_profile(chain);

    ResultBundle b = new_bundle(c);
    ResultTable t;
    t.name = "couplings";
    t.columns = {"edge", "coupling_hz"};
    t.units = {"index", "Hz"};
    for (std::size_t j = 0; j < p.couplings.size(); ++j)
        t.rows.push_back({static_cast<double>(j + 1), p.couplings[j] / two_pi});
    b.tables.push_back(std::move(t));
    b.summary = {{"n", static_cast<double>(p.n)},
                 {"c0_hz", p.c0 / two_pi},
                 {"period_s", p.period},
                 {"parity_phase_rad", parity_phase(p.n)}};
    return b;
}

inline ResultBundle run_evolve_rwa(const ExperimentConfig& c) {
    const ChainSection& chain = need_chain(c);
    if (!c.rwa) throw config_error("evolve-rwa needs an 'rwa' section");
    const RwaSection& rwa = *c.rwa;
    const int n = chain.n;
    if (rwa.launch_site < 1 || rwa.launch_site > n)
        throw config_error("rwa: launch_site " + std::to_string(rwa.launch_site) +
                           " out of range 1.." + std::to_string(n));
    const int report_site =
        rwa.report_site != 0 ? rwa.report_site : mirror_index(n, rwa.launch_site);
    if (report_site < 1 || report_site > n)
        throw config_error("rwa: report_site " + std::to_string(report_site) +
                           " out of range 1.." + std::to_string(n));

    std::vector<cplx> x0(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    x0[static_cast<std::size_t>(rwa.launch_site) - 1] = 1.0;

    ResultBundle b = new_bundle(c);

    if (!c.schedule.empty()) {
        // Piecewise profile schedule; boundary states are evaluated exactly.
        std::vector<std::pair<CouplingMatrix, double>> pieces;
        for (const auto& seg : c.schedule) {
            const PstProfile p = pst_couplings(n, two_pi * seg.c0_hz);
            const double dur =
                seg.duration_s > 0.0 ? seg.duration_s : seg.duration_periods * p.period;
            pieces.push_back({coupling_matrix_from_profile(p), dur});
        }
        double total = 0.0;
        for (const auto& piece : pieces) total += piece.second;
        const double dt = snap_sample_dt(total, rwa.sample_dt);

        // Sampled trajectory (continuous across boundaries).
        Network net;
        Schedule sched;
        for (int i = 1; i <= n; ++i)
            net.resonators.push_back({i, static_cast<double>(i), 0.0, 1.0});
        for (std::size_t s = 0; s < pieces.size(); ++s) {
            Segment seg;
            seg.duration = pieces[s].second;
            const PstProfile p = pst_couplings(n, two_pi * c.schedule[s].c0_hz);
            for (int j = 1; j < n; ++j)
                seg.couplings.push_back(
                    {j, j + 1, p.couplings[static_cast<std::size_t>(j) - 1]});
            sched.segments.push_back(std::move(seg));
        }
        EnvelopeTrajectory traj = evolve_schedule(net, sched, x0, dt);
        if (rwa.gamma_hz > 0.0)
            traj = apply_damping_envelope(traj, two_pi * rwa.gamma_hz);
        b.tables.push_back(envelope_table("trajectory", traj.times, traj.states));

        ResultTable bt;
        bt.name = "boundaries";
        bt.columns = {"time_s"};
        bt.units = {"s"};
        for (int j = 1; j <= n; ++j) {
            bt.columns.push_back("site_" + std::to_string(j) + "_re");
            bt.units.push_back("dimensionless");
            bt.columns.push_back("site_" + std::to_string(j) + "_im");
            bt.units.push_back("dimensionless");
        }
        std::vector<cplx> state = x0;
        double t_edge = 0.0;
        for (const auto& [m, dur] : pieces) {
            state = evolve_envelope(m, state, dur).amplitudes;
            t_edge += dur;
            std::vector<double> row{t_edge};
            for (const cplx& z : state) {
                row.push_back(z.real());
                row.push_back(z.imag());
            }
            bt.rows.push_back(std::move(row));
        }
        b.tables.push_back(std::move(bt));

        // Uniform damping rescales every site alike, so the reported
        // population fraction is the same with or without it.
        double fid = transfer_fidelity(state, report_site);
        b.summary = {{"final_time_s", t_edge},
                     {"launch_site", static_cast<double>(rwa.launch_site)},
                     {"report_site", static_cast<double>(report_site)},
                     {"fidelity", fid}};
        return b;
    }

    const PstProfile p = chain_profile(chain);
    const CouplingMatrix m = coupling_matrix_from_profile(p);
    double duration = rwa.duration_s;
    if (duration <= 0.0 && rwa.duration_periods > 0.0)
        duration = rwa.duration_periods * p.period;
    if (duration <= 0.0)
        throw config_error("rwa: need duration_s or duration_periods");
    const double dt = snap_sample_dt(duration, rwa.sample_dt);

    EnvelopeTrajectory traj = evolve_trajectory(m, x0, duration, dt);
    if (rwa.gamma_hz > 0.0) traj = apply_damping_envelope(traj, two_pi * rwa.gamma_hz);
    b.tables.push_back(envelope_table("trajectory", traj.times, traj.states));

    const std::vector<cplx> final_state = evolve_envelope(m, x0, duration).amplitudes;
    b.summary = {{"final_time_s", duration},
                 {"launch_site", static_cast<double>(rwa.launch_site)},
                 {"report_site", static_cast<double>(report_site)},
                 {"fidelity", transfer_fidelity(final_state, report_site)},
                 {"period_s", p.period}};
    return b;
}

inline ResultBundle run_parity(const ExperimentConfig& c) {
    const ChainSection& chain = need_chain(c);
    if (!c.parity) throw config_error("parity needs a 'parity' section");
    const ParitySection& par = *c.parity;
    const int n = chain.n;
    if (par.launch_site < 1 || par.launch_site > n)
        throw config_error("parity: launch_site " + std::to_string(par.launch_site) +
                           " out of range 1.." + std::to_string(n));

    const PstProfile p = chain_profile(chain);
    const CouplingMatrix m = coupling_matrix_from_profile(p);
    const double duration = 2.0 * p.period;
    const double dt = snap_sample_dt(duration, par.sample_dt);

    std::vector<cplx> x0(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    x0[static_cast<std::size_t>(par.launch_site) - 1] = 1.0;

    const EnvelopeTrajectory traj = evolve_trajectory(m, x0, duration, dt);
    const std::vector<cplx> final_state = evolve_envelope(m, x0, duration).amplitudes;
    const cplx z0 = x0[static_cast<std::size_t>(par.launch_site) - 1];
    const cplx z1 = final_state[static_cast<std::size_t>(par.launch_site) - 1];
    const double phase = wrap_phase(std::arg(z1) - std::arg(z0));
    const double expected = parity_phase(n);

    ResultBundle b = new_bundle(c);
    b.tables.push_back(envelope_table("trajectory", traj.times, traj.states));
    b.summary = {{"launch_site", static_cast<double>(par.launch_site)},
                 {"round_trip_time_s", duration},
                 {"phase_rad", phase},
                 {"expected_phase_rad", expected},
                 {"phase_error_rad", std::fabs(wrap_phase(phase - expected))},
                 {"return_fidelity", transfer_fidelity(final_state, par.launch_site)}};
    return b;
}

inline ResultBundle run_spectrum(const ExperimentConfig& c) {
    const ChainSection& chain = need_chain(c);
    if (!c.spectrum) throw config_error("spectrum needs a 'spectrum' section");
    const SpectrumSection& sp = *c.spectrum;

    const PstProfile p = chain_profile(chain);
    const CouplingMatrix m = coupling_matrix_from_profile(p);

    if (!(sp.step_hz > 0.0)) throw config_error("spectrum: step_hz must be positive");
    if (!(sp.max_detuning_hz > sp.min_detuning_hz))
        throw config_error("spectrum: max_detuning_hz must exceed min_detuning_hz");
    const std::size_t count = static_cast<std::size_t>(
        std::floor((sp.max_detuning_hz - sp.min_detuning_hz) / sp.step_hz + 1e-9)) + 1;
    std::vector<double> detunings(count);
    for (std::size_t i = 0; i < count; ++i)
        detunings[i] =
            two_pi * (sp.min_detuning_hz + static_cast<double>(i) * sp.step_hz);

    const double gamma = two_pi * sp.gamma_hz;
    const ResponseCurve curve =
        frequency_response(m, gamma, sp.drive_site, sp.probe_site, detunings);
    const std::vector<double> peaks = peak_positions(curve, gamma);

    ResultBundle b = new_bundle(c);
    ResultTable rt;
    rt.name = "response";
    rt.columns = {"detuning_hz", "magnitude"};
    rt.units = {"Hz", "dimensionless"};
    for (std::size_t i = 0; i < curve.detunings.size(); ++i)
        rt.rows.push_back({curve.detunings[i] / two_pi, curve.magnitudes[i]});
    b.tables.push_back(std::move(rt));

    ResultTable pt;
    pt.name = "peaks";
    pt.columns = {"peak_detuning_hz"};
    pt.units = {"Hz"};
    for (double pk : peaks) pt.rows.push_back({pk / two_pi});
    b.tables.push_back(std::move(pt));

    double mean_spacing = 0.0;
    if (peaks.size() > 1) {
        for (std::size_t i = 1; i < peaks.size(); ++i)
            mean_spacing += peaks[i] - peaks[i - 1];
        mean_spacing /= static_cast<double>(peaks.size() - 1) * two_pi;
    }
    b.summary = {{"num_peaks", static_cast<double>(peaks.size())},
                 {"mean_spacing_hz", mean_spacing},
                 {"gamma_hz", sp.gamma_hz}};
    return b;
}

inline ResultBundle run_calibrate(const ExperimentConfig& c) {
    if (!c.calibrate) throw config_error("calibrate needs a 'calibration' section");
    const CalibrateSection& cal = *c.calibrate;

    std::vector<CalibrationPoint> pts;
    for (const auto& p : cal.points)
        pts.push_back({p.v_dc, p.v_ac, two_pi * p.coupling_hz});
    const VoltageCalibration fit = fit_calibration(pts);

    ResultBundle b = new_bundle(c);
    ResultTable ft;
    ft.name = "fit_points";
    ft.columns = {"v_dc_v", "v_ac_v", "coupling_hz"};
    ft.units = {"V", "V", "Hz"};
    for (const auto& p : cal.points) ft.rows.push_back({p.v_dc, p.v_ac, p.coupling_hz});
    b.tables.push_back(std::move(ft));

    if (!cal.predict.empty()) {
        ResultTable pt;
        pt.name = "predictions";
        pt.columns = {"v_dc_v", "v_ac_v", "coupling_hz"};
        pt.units = {"V", "V", "Hz"};
        for (const auto& [vdc, vac] : cal.predict)
            pt.rows.push_back(
                {vdc, vac, coupling_from_voltage(fit, vdc, vac) / two_pi});
        b.tables.push_back(std::move(pt));
    }
    b.summary = {{"alpha_hz_per_v2", fit.alpha},
                 {"num_points", static_cast<double>(cal.points.size())}};
    return b;
}

inline ResultBundle run_evolve_full(const ExperimentConfig& c) {
    const ChainSection& chain = need_chain(c);
    if (!c.network) throw config_error("evolve-full needs a 'network' section");
    if (!c.full) throw config_error("evolve-full needs a 'full' section");
    const NetworkSection& ns = *c.network;
    const FullSection& fs = *c.full;
    const int n = chain.n;
    if (static_cast<int>(ns.carriers_hz.size()) != n)
        throw config_error("network: carriers_hz length must equal chain n");
    if (fs.launch_site < 1 || fs.launch_site > n)
        throw config_error("full: launch_site " + std::to_string(fs.launch_site) +
                           " out of range 1.." + std::to_string(n));
    if (!(fs.scale >= 1.0)) throw config_error("full: scale must be >= 1");

    const PstProfile p = chain_profile(chain);
    double duration = fs.duration_s;
    if (duration <= 0.0 && fs.duration_periods > 0.0)
        duration = fs.duration_periods * p.period;
    if (duration <= 0.0)
        throw config_error("full: need duration_s or duration_periods");

    // Logical chain in the order carriers are listed; physical labels are
    // optional and default to 1..n.
    Network net;
    for (int j = 0; j < n; ++j) {
        ResonatorSpec r;
        r.index = ns.indices.empty() ? j + 1 : ns.indices[static_cast<std::size_t>(j)];
        r.omega = two_pi * ns.carriers_hz[static_cast<std::size_t>(j)] / fs.scale;
        r.gamma = two_pi * ns.gamma_hz;
        r.mass = ns.mass;
        net.resonators.push_back(r);
        net.chain_order.push_back(r.index);
    }
    for (int j = 0; j + 1 < n; ++j)
        net.couplings.push_back({net.chain_order[static_cast<std::size_t>(j)],
                                 net.chain_order[static_cast<std::size_t>(j) + 1],
                                 p.couplings[static_cast<std::size_t>(j)]});
    const auto violations = validate_network(net);
    if (!violations.empty())
        throw invalid_argument_error("invalid network: " + violations.front());

    double omega_max = 0.0;
    for (const auto& r : net.resonators) omega_max = std::max(omega_max, r.omega);

    MechanicalTrajectory traj;
    if (fs.pulse) {
        FullPstOptions opt;
        opt.duration = duration + fs.extra_s;
        opt.pulse_amplitude = fs.pulse_amplitude;
        opt.pulse_duration = fs.pulse_duration_s;
        opt.dt_divisor = fs.dt_divisor;
        opt.decimation = static_cast<std::size_t>(fs.decimation);
        traj = run_full_pst(net, net.chain_order[static_cast<std::size_t>(
                                fs.launch_site - 1)],
                            1.0, opt);
    } else {
        FullEvolveOptions opt;
        opt.dt = two_pi / (fs.dt_divisor * omega_max);
        opt.decimation = static_cast<std::size_t>(fs.decimation);
        std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
        std::vector<double> v0(static_cast<std::size_t>(n), 0.0);
        x0[static_cast<std::size_t>(fs.launch_site) - 1] = 1.0;
        traj = evolve_full(net.resonators, pump_terms_from_network(net), std::nullopt,
                           x0, v0, duration + fs.extra_s, opt);
    }

    ResultBundle b = new_bundle(c);
    b.summary = {{"dt_s", two_pi / (fs.dt_divisor * omega_max)},
                 {"samples", static_cast<double>(traj.times.size())},
                 {"period_s", p.period}};

    std::vector<double> omegas;
    for (const auto& r : net.resonators) omegas.push_back(r.omega);

    if (!fs.pulse) {
        const CouplingMatrix m = coupling_matrix_from_profile(p);
        const FullRwaComparison cmp = compare_full_to_envelope(
            traj, omegas, m, fs.launch_site, fs.tau_s, p.period);
        b.tables.push_back(detail::envelope_table("demod", cmp.times, cmp.demod));
        b.tables.push_back(
            detail::envelope_table("rwa_reference", cmp.times, cmp.reference));
        b.summary.push_back({"max_dev_fraction", cmp.max_dev});
        for (std::size_t j = 0; j < cmp.site_dev.size(); ++j)
            b.summary.push_back(
                {"site_" + std::to_string(j + 1) + "_dev_fraction", cmp.site_dev[j]});
        if (duration >= 2.0 * p.period) {
            b.summary.push_back({"phase_shift_rad", cmp.phase_shift});
            b.summary.push_back(
                {"phase_error_rad",
                 std::fabs(wrap_phase(cmp.phase_shift - parity_phase(n)))});
        }
    } else {
        // Pulse protocol: demodulate every site and report the mirror-site
        // arrival fraction one period after the pumps came on.
        const double sample_dt = traj.times[1] - traj.times[0];
        std::vector<DemodChannel> channels;
        for (int j = 0; j < n; ++j) {
            LockInConfig cfgl;
            cfgl.ref_freq = omegas[static_cast<std::size_t>(j)];
            cfgl.time_constant = fs.tau_s;
            cfgl.sample_dt = sample_dt;
            channels.push_back(demodulate_site(
                traj, net.chain_order[static_cast<std::size_t>(j)], cfgl));
        }
        std::vector<std::vector<cplx>> demod(traj.times.size(),
                                             std::vector<cplx>(static_cast<std::size_t>(n)));
        for (std::size_t k = 0; k < traj.times.size(); ++k)
            for (int j = 0; j < n; ++j)
                demod[k][static_cast<std::size_t>(j)] =
                    channels[static_cast<std::size_t>(j)].envelope[k];
        b.tables.push_back(detail::envelope_table("demod", traj.times, demod));

        const double t_arrive = fs.pulse_duration_s + p.period;
        std::size_t ka = 0;
        double best = 1e300;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const double d = std::fabs(traj.times[k] - t_arrive);
            if (d < best) {
                best = d;
                ka = k;
            }
        }
        const int mirror = mirror_index(n, fs.launch_site);
        double total = 0.0;
        for (int j = 0; j < n; ++j)
            total += std::norm(demod[ka][static_cast<std::size_t>(j)]);
        const double frac =
            total > 0.0
                ? std::norm(demod[ka][static_cast<std::size_t>(mirror) - 1]) / total
                : 0.0;
        b.summary.push_back({"arrival_time_s", traj.times[ka]});
        b.summary.push_back({"mirror_site", static_cast<double>(mirror)});
        b.summary.push_back({"mirror_fraction", frac});
    }
    return b;
}

} // namespace detail

// Runs the experiment a config describes. Deterministic for a fixed config;
// library errors are re-raised with the experiment named in the message.
inline ResultBundle run_experiment(const ExperimentConfig& c) {
    const std::string ctx = to_string(c.kind);
    try {
        switch (c.kind) {
            case ExperimentKind::synth: return detail::run_synth(c);
            case ExperimentKind::evolve_rwa: return detail::run_evolve_rwa(c);
            case ExperimentKind::evolve_full: return detail::run_evolve_full(c);
            case ExperimentKind::spectrum: return detail::run_spectrum(c);
            case ExperimentKind::parity: return detail::run_parity(c);
            case ExperimentKind::calibrate: return detail::run_calibrate(c);
        }
        throw invalid_argument_error("unknown experiment kind");
    } catch (const numerical_error& e) {
        throw numerical_error(ctx + ": " + e.what());
    } catch (const validation_error& e) {
        throw validation_error(ctx + ": " + e.what());
    }
}

} // namespace resonet
