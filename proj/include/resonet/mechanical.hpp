#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "resonet/errors.hpp"
#include "resonet/model.hpp"
#include "resonet/synthesis.hpp"

namespace resonet {

// Full mechanical equations of motion with parametric (pumped) springs:
//   xdd_j + gamma_j xd_j + omega_j^2 x_j = sum_edges P_e(t) (x_other - x_j) [+ drive]
// with P_e(t) = (c_mech_e / m_e) cos(pump_freq_e t + phase_e) and m_e the
// mean mass of the edge's endpoints. The (x_other - x_j) form keeps both
// reaction terms of each pumped spring.

struct PumpTerm {
    int a = 0;
    int b = 0;
    double c_mech = 0.0;    // spring modulation amplitude, N/m
    double pump_freq = 0.0; // rad/s
    double phase = 0.0;     // rad, cosine convention
};

// Bridge from the slow-envelope coupling rate to the mechanical spring
// amplitude: c_mech = 2 m sqrt(omega_a omega_b) c_rwa.
inline double lambda_from_rwa(double mass, double omega_a, double omega_b,
                              double c_rwa) {
    if (!(mass > 0.0)) throw invalid_argument_error("lambda_from_rwa: mass must be positive");
    if (!(omega_a > 0.0) || !(omega_b > 0.0))
        throw invalid_argument_error("lambda_from_rwa: frequencies must be positive");
    return 2.0 * mass * std::sqrt(omega_a * omega_b) * c_rwa;
}

// Pump terms for every coupled edge of a network, using the mean endpoint
// mass and the carrier difference as pump frequency.
inline std::vector<PumpTerm> pump_terms_from_network(const Network& net) {
    std::vector<PumpTerm> pumps;
    pumps.reserve(net.couplings.size());
    for (const auto& c : net.couplings) {
        const ResonatorSpec* ra = net.find(c.a);
        const ResonatorSpec* rb = net.find(c.b);
        if (!ra || !rb)
            throw invalid_argument_error("pump_terms_from_network: unknown resonator index");
        const double m = 0.5 * (ra->mass + rb->mass);
        PumpTerm p;
        p.a = c.a;
        p.b = c.b;
        p.c_mech = lambda_from_rwa(m, ra->omega, rb->omega, c.strength);
        p.pump_freq = std::fabs(ra->omega - rb->omega);
        p.phase = 0.0;
        pumps.push_back(p);
    }
    return pumps;
}

struct MechanicalTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> positions;  // positions[k][site]
    std::vector<std::vector<double>> velocities; // velocities[k][site]
    std::vector<int> site_index;                 // logical position -> resonator index
};

struct FullEvolveOptions {
    double dt = 0.0;              // fixed step, s (required)
    std::size_t decimation = 1;   // record every decimation-th step
    double t_start = 0.0;         // absolute clock for pump/pulse/drive phases
    bool include_reaction = true; // keep the -P x_j diagonal terms (regression hook)
};

namespace detail {

struct Edge {
    std::size_t pa;
    std::size_t pb;
    double p_over_m; // c_mech / mean mass
    double wp;
    double phase;
};

// One Gauss-Legendre collocation step (2 stages, order 4). The stage
// equations are solved by fixed-point iteration; for the oscillatory
// systems here dt*omega is small enough that it converges in a few sweeps.
inline const double gl_s36 = std::sqrt(3.0) / 6.0;
inline const double gl_c1 = 0.5 - gl_s36;
inline const double gl_c2 = 0.5 + gl_s36;
inline constexpr double gl_a11 = 0.25;
inline const double gl_a12 = 0.25 - gl_s36;
inline const double gl_a21 = 0.25 + gl_s36;
inline constexpr double gl_a22 = 0.25;

} // namespace detail

// Integrates the full equations of motion with a fixed-step 4th-order
// implicit collocation scheme whose oscillatory amplification factor has
// unit modulus, so free-oscillation energy is conserved to iteration
// tolerance rather than drifting with step count.
inline MechanicalTrajectory evolve_full(const std::vector<ResonatorSpec>& resonators,
                                        const std::vector<PumpTerm>& pumps,
                                        const std::optional<ExcitationPulse>& pulse,
                                        const std::vector<double>& x0,
                                        const std::vector<double>& v0, double t_span,
                                        const FullEvolveOptions& opt) {
    const std::size_t n = resonators.size();
    if (n == 0) throw invalid_argument_error("evolve_full: no resonators");
    if (x0.size() != n || v0.size() != n)
        throw invalid_argument_error("evolve_full: state dimension mismatch");
    if (!(t_span > 0.0)) throw invalid_argument_error("evolve_full: t_span must be positive");

    double omega_max = 0.0;
    for (const auto& r : resonators) {
        if (!(r.omega > 0.0))
            throw invalid_argument_error("evolve_full: omega must be positive");
        omega_max = std::max(omega_max, r.omega);
    }
    if (!(opt.dt > 0.0)) throw invalid_argument_error("evolve_full: dt must be positive");
    if (opt.dt > two_pi / (20.0 * omega_max))
        throw invalid_argument_error(
            "evolve_full: dt too large; need dt <= 2*pi/(20*omega_max)");
    if (opt.decimation == 0)
        throw invalid_argument_error("evolve_full: decimation must be >= 1");

    auto pos_of = [&resonators](int index) -> std::size_t {
        for (std::size_t i = 0; i < resonators.size(); ++i)
            if (resonators[i].index == index) return i;
        throw invalid_argument_error("evolve_full: unknown resonator index " +
                                     std::to_string(index));
    };

    std::vector<detail::Edge> edges;
    edges.reserve(pumps.size());
    for (const auto& p : pumps) {
        const std::size_t pa = pos_of(p.a);
        const std::size_t pb = pos_of(p.b);
        const double m = 0.5 * (resonators[pa].mass + resonators[pb].mass);
        edges.push_back({pa, pb, p.c_mech / m, p.pump_freq, p.phase});
    }

    std::size_t pulse_pos = 0;
    double pulse_t0 = 0.0, pulse_t1 = -1.0, pulse_amp = 0.0, pulse_w = 0.0;
    if (pulse) {
        pulse_pos = pos_of(pulse->target);
        pulse_t0 = opt.t_start;
        pulse_t1 = opt.t_start + pulse->duration;
        pulse_amp = pulse->amplitude;
        pulse_w = pulse->frequency;
    }

    std::vector<double> w2(n), gam(n);
    for (std::size_t i = 0; i < n; ++i) {
        w2[i] = resonators[i].omega * resonators[i].omega;
        gam[i] = resonators[i].gamma;
    }

    const bool reaction = opt.include_reaction;
    // Acceleration of every site at time t for displacement x, velocity v.
    auto accel = [&](double t, const std::vector<double>& x,
                     const std::vector<double>& v, std::vector<double>& a) {
        for (std::size_t i = 0; i < n; ++i) a[i] = -gam[i] * v[i] - w2[i] * x[i];
        for (const auto& e : edges) {
            const double p = e.p_over_m * std::cos(e.wp * t + e.phase);
            if (reaction) {
                a[e.pa] += p * (x[e.pb] - x[e.pa]);
                a[e.pb] += p * (x[e.pa] - x[e.pb]);
            } else {
                a[e.pa] += p * x[e.pb];
                a[e.pb] += p * x[e.pa];
            }
        }
        if (pulse_t1 > pulse_t0 && t >= pulse_t0 && t <= pulse_t1)
            a[pulse_pos] += pulse_amp * std::cos(pulse_w * t);
    };

    const double dt = opt.dt;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_span / dt - 1e-9));

    MechanicalTrajectory traj;
    traj.site_index.resize(n);
    for (std::size_t i = 0; i < n; ++i) traj.site_index[i] = resonators[i].index;
    const std::size_t records = steps / opt.decimation + 2;
    traj.times.reserve(records);
    traj.positions.reserve(records);
    traj.velocities.reserve(records);

    std::vector<double> x = x0, v = v0;
    std::vector<double> k1x(n), k1v(n), k2x(n), k2v(n);
    std::vector<double> n1x(n), n1v(n), n2x(n), n2v(n);
    std::vector<double> sx(n), sv(n);

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.positions.push_back(x);
        traj.velocities.push_back(v);
    };

    double t = opt.t_start;
    record(t);
    for (std::size_t step = 0; step < steps; ++step) {
        const double t1 = t + detail::gl_c1 * dt;
        const double t2 = t + detail::gl_c2 * dt;

        // Stage guess: derivative at the midpoint state.
        accel(t + 0.5 * dt, x, v, k1v);
        for (std::size_t i = 0; i < n; ++i) {
            k1x[i] = v[i];
            k2x[i] = v[i];
            k2v[i] = k1v[i];
        }

        bool converged = false;
        double delta = 0.0;
        for (int it = 0; it < 40; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                sx[i] = x[i] + dt * (detail::gl_a11 * k1x[i] + detail::gl_a12 * k2x[i]);
                sv[i] = v[i] + dt * (detail::gl_a11 * k1v[i] + detail::gl_a12 * k2v[i]);
            }
            accel(t1, sx, sv, n1v);
            for (std::size_t i = 0; i < n; ++i) n1x[i] = sv[i];
            for (std::size_t i = 0; i < n; ++i) {
                sx[i] = x[i] + dt * (detail::gl_a21 * k1x[i] + detail::gl_a22 * k2x[i]);
                sv[i] = v[i] + dt * (detail::gl_a21 * k1v[i] + detail::gl_a22 * k2v[i]);
            }
            accel(t2, sx, sv, n2v);
            for (std::size_t i = 0; i < n; ++i) n2x[i] = sv[i];

            double diff = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                diff = std::max(diff, std::fabs(n1x[i] - k1x[i]));
                diff = std::max(diff, std::fabs(n1v[i] - k1v[i]));
                diff = std::max(diff, std::fabs(n2x[i] - k2x[i]));
                diff = std::max(diff, std::fabs(n2v[i] - k2v[i]));
                scale = std::max(scale, std::fabs(n1x[i]));
                scale = std::max(scale, std::fabs(n1v[i]));
                scale = std::max(scale, std::fabs(n2x[i]));
                scale = std::max(scale, std::fabs(n2v[i]));
            }
            k1x.swap(n1x);
            k1v.swap(n1v);
            k2x.swap(n2x);
            k2v.swap(n2v);
            delta = diff;
            if (diff <= 1e-13 * (scale > 0.0 ? scale : 1.0)) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw numerical_failure_error("evolve_full: implicit stage iteration stalled",
                                          40, delta);

        for (std::size_t i = 0; i < n; ++i) {
            x[i] += 0.5 * dt * (k1x[i] + k2x[i]);
            v[i] += 0.5 * dt * (k1v[i] + k2v[i]);
        }
        t = opt.t_start + static_cast<double>(step + 1) * dt;

        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
                throw numerical_overflow_error(t);

        if ((step + 1) % opt.decimation == 0 || step + 1 == steps) record(t);
    }
    return traj;
}

// Total mechanical energy of a snapshot (sum of kinetic and potential
// terms of the uncoupled oscillators).
inline double total_energy(const std::vector<ResonatorSpec>& resonators,
                           const std::vector<double>& x,
                           const std::vector<double>& v) {
    if (x.size() != resonators.size() || v.size() != resonators.size())
        throw invalid_argument_error("total_energy: dimension mismatch");
    double e = 0.0;
    for (std::size_t i = 0; i < resonators.size(); ++i) {
        const double m = resonators[i].mass;
        const double w = resonators[i].omega;
        e += 0.5 * m * (v[i] * v[i] + w * w * x[i] * x[i]);
    }
    return e;
}

// Built-in convergence self-check: integrate with dt and dt/2 and return
// the maximum relative deviation of the final snapshot.
inline double step_halving_check(const std::vector<ResonatorSpec>& resonators,
                                 const std::vector<PumpTerm>& pumps,
                                 const std::optional<ExcitationPulse>& pulse,
                                 const std::vector<double>& x0,
                                 const std::vector<double>& v0, double t_span,
                                 const FullEvolveOptions& opt) {
    FullEvolveOptions full = opt;
    full.decimation = 1;
    MechanicalTrajectory a = evolve_full(resonators, pumps, pulse, x0, v0, t_span, full);
    full.dt = 0.5 * opt.dt;
    MechanicalTrajectory b = evolve_full(resonators, pumps, pulse, x0, v0, t_span, full);

    const auto& xa = a.positions.back();
    const auto& va = a.velocities.back();
    const auto& xb = b.positions.back();
    const auto& vb = b.velocities.back();
    double scale = 0.0;
    for (std::size_t i = 0; i < xb.size(); ++i) {
        scale = std::max(scale, std::fabs(xb[i]));
        scale = std::max(scale, std::fabs(vb[i]) / resonators[i].omega);
    }
    if (scale == 0.0) return 0.0;
    double dev = 0.0;
    for (std::size_t i = 0; i < xb.size(); ++i) {
        dev = std::max(dev, std::fabs(xa[i] - xb[i]) / scale);
        dev = std::max(dev, std::fabs(va[i] - vb[i]) / resonators[i].omega / scale);
    }
    return dev;
}

struct FullPstOptions {
    double duration = 0.0;        // pump-on time, s (required)
    double pulse_amplitude = 1.0; // force per unit mass
    double pulse_duration = 0.002;
    double dt_divisor = 50.0;     // dt = 2*pi/(dt_divisor * omega_max)
    std::size_t decimation = 16;
};

// Launch-and-transfer protocol: drive the launch site resonantly with the
// pumps off, then switch the drive off and every pump on. Times, pump
// phases, and the drive all share one absolute clock.
inline MechanicalTrajectory run_full_pst(const Network& net, int launch_index,
                                         double scale, const FullPstOptions& opt) {
    if (!(scale >= 1.0))
        throw invalid_argument_error("run_full_pst: scale must be >= 1");
    if (!(opt.duration > 0.0))
        throw invalid_argument_error("run_full_pst: pump-on duration required");

    Network scaled = net;
    for (auto& r : scaled.resonators) r.omega /= scale;

    const ResonatorSpec* launch = scaled.find(launch_index);
    if (!launch) throw invalid_argument_error("run_full_pst: unknown launch index");

    double omega_max = 0.0;
    for (const auto& r : scaled.resonators) omega_max = std::max(omega_max, r.omega);
    FullEvolveOptions ev;
    ev.dt = two_pi / (opt.dt_divisor * omega_max);
    ev.decimation = opt.decimation;

    const std::size_t n = scaled.resonators.size();
    std::vector<double> x0(n, 0.0), v0(n, 0.0);

    ExcitationPulse pulse;
    pulse.target = launch_index;
    pulse.amplitude = opt.pulse_amplitude;
    pulse.frequency = launch->omega;
    pulse.duration = opt.pulse_duration;

    ev.t_start = 0.0;
    MechanicalTrajectory head = evolve_full(scaled.resonators, {}, pulse, x0, v0,
                                            opt.pulse_duration, ev);

    ev.t_start = head.times.back();
    MechanicalTrajectory tail =
        evolve_full(scaled.resonators, pump_terms_from_network(scaled), std::nullopt,
                    head.positions.back(), head.velocities.back(), opt.duration, ev);

    MechanicalTrajectory out = head;
    for (std::size_t k = 1; k < tail.times.size(); ++k) {
        out.times.push_back(tail.times[k]);
        out.positions.push_back(tail.positions[k]);
        out.velocities.push_back(tail.velocities[k]);
    }
    return out;
}

} // namespace resonet
