#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "resonet/errors.hpp"
#include "resonet/linalg.hpp"
#include "resonet/model.hpp"
#include "resonet/synthesis.hpp"

namespace resonet {

// Slow-envelope dynamics: 2i dX/dt = H X with H the real symmetric coupling
// matrix, i.e. X(t) = U exp(-i Lambda t / 2) U^T X(0).

struct CouplingMatrix {
    std::size_t n = 0;
    SymMatrix h;                  // rad/s entries, zero diagonal
    std::vector<int> site_index;  // logical position (0-based) -> resonator index

    static CouplingMatrix from_matrix(SymMatrix m, std::vector<int> sites = {}) {
        CouplingMatrix out;
        out.n = m.n;
        for (std::size_t i = 0; i < m.n; ++i) {
            if (m.at(i, i) != 0.0)
                throw invalid_argument_error("coupling matrix must have zero diagonal");
            for (std::size_t j = i + 1; j < m.n; ++j)
                if (m.at(i, j) != m.at(j, i))
                    throw invalid_argument_error("coupling matrix must be symmetric");
        }
        if (sites.empty()) {
            sites.resize(m.n);
            for (std::size_t i = 0; i < m.n; ++i) sites[i] = static_cast<int>(i) + 1;
        }
        if (sites.size() != m.n)
            throw invalid_argument_error("site index list does not match matrix order");
        out.h = std::move(m);
        out.site_index = std::move(sites);
        return out;
    }
};

// Maps a network onto a nearest-neighbour chain. Logical site order is the
// explicit chain_order when given, otherwise ascending resonator index;
// every coupling must then connect logically adjacent sites.
inline CouplingMatrix build_coupling_matrix(const Network& net) {
    if (net.resonators.empty())
        throw invalid_argument_error("build_coupling_matrix: empty network");

    std::vector<int> order = net.chain_order;
    if (order.empty()) {
        for (const auto& r : net.resonators) order.push_back(r.index);
        std::sort(order.begin(), order.end());
    }
    if (order.size() != net.resonators.size())
        throw invalid_argument_error("chain order must cover every resonator");

    std::vector<std::size_t> pos_of_index; // sparse map via search below
    auto logical_pos = [&order](int index) -> std::size_t {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == index) return i;
        throw invalid_argument_error("coupling references resonator " +
                                     std::to_string(index) + " absent from chain order");
    };

    const std::size_t n = order.size();
    SymMatrix h = SymMatrix::zero(n);
    for (const auto& c : net.couplings) {
        const std::size_t pa = logical_pos(c.a);
        const std::size_t pb = logical_pos(c.b);
        const std::size_t lo = std::min(pa, pb);
        const std::size_t hi = std::max(pa, pb);
        if (hi - lo != 1)
            throw unsupported_topology_error(
                "coupling " + std::to_string(c.a) + "-" + std::to_string(c.b) +
                " is not nearest-neighbour in the chain order; provide chain_order "
                "matching the coupled path");
        h.at(lo, hi) = c.strength;
        h.at(hi, lo) = c.strength;
    }
    return CouplingMatrix::from_matrix(std::move(h), order);
}

inline CouplingMatrix coupling_matrix_from_profile(const PstProfile& p) {
    SymMatrix h = SymMatrix::zero(static_cast<std::size_t>(p.n));
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(p.n); ++j) {
        h.at(j, j + 1) = p.couplings[j];
        h.at(j + 1, j) = p.couplings[j];
    }
    return CouplingMatrix::from_matrix(std::move(h));
}

struct EnvelopeTrajectory {
    std::vector<double> times;              // uniform grid, s
    std::vector<std::vector<cplx>> states;  // states[k][site]
    bool gamma_applied = false;

    std::size_t sites() const { return states.empty() ? 0 : states[0].size(); }
};

namespace detail {

// Propagate through the eigenbasis of H: X -> U exp(-i Lambda t/2) U^T X.
inline std::vector<cplx> propagate(const EigenDecomposition& eig,
                                   const std::vector<cplx>& x0, double t) {
    const std::size_t n = eig.n;
    std::vector<cplx> modes(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) acc += eig.vec(i, k) * x0[i];
        const double ph = -0.5 * eig.values[k] * t;
        modes[k] = acc * cplx(std::cos(ph), std::sin(ph));
    }
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) acc += eig.vec(i, k) * modes[k];
        out[i] = acc;
    }
    return out;
}

} // namespace detail

// Evolves the envelope by time t (any sign; negative t runs the adjoint).
inline EnvelopeState evolve_envelope(const CouplingMatrix& m,
                                     const std::vector<cplx>& x0, double t) {
    if (x0.size() != m.n)
        throw invalid_argument_error("evolve_envelope: state dimension mismatch");
    const EigenDecomposition eig = jacobi_eigh(m.h);
    EnvelopeState out;
    out.time = t;
    out.amplitudes = detail::propagate(eig, x0, t);
    return out;
}

// Uniformly sampled single-matrix evolution.
inline EnvelopeTrajectory evolve_trajectory(const CouplingMatrix& m,
                                            const std::vector<cplx>& x0,
                                            double duration, double sample_dt) {
    if (x0.size() != m.n)
        throw invalid_argument_error("evolve_trajectory: state dimension mismatch");
    if (!(duration >= 0.0) || !(sample_dt > 0.0))
        throw invalid_argument_error("evolve_trajectory: bad duration or sample_dt");
    const EigenDecomposition eig = jacobi_eigh(m.h);
    EnvelopeTrajectory traj;
    const std::size_t steps =
        static_cast<std::size_t>(std::floor(duration / sample_dt + 1e-9));
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * sample_dt;
        traj.times.push_back(t);
        traj.states.push_back(detail::propagate(eig, x0, t));
    }
    return traj;
}

// Piecewise-constant coupling schedule. The state is continuous across
// segment boundaries; each sample is propagated exactly from its segment's
// entry state.
inline EnvelopeTrajectory evolve_schedule(const Network& net, const Schedule& sched,
                                          const std::vector<cplx>& x0,
                                          double sample_dt) {
    if (sched.segments.empty())
        throw invalid_schedule_error("evolve_schedule: schedule has no segments");
    if (!(sample_dt > 0.0))
        throw invalid_schedule_error("evolve_schedule: sample_dt must be positive");
    if (x0.size() != net.resonators.size())
        throw invalid_schedule_error("evolve_schedule: state dimension mismatch");
    for (const auto& seg : sched.segments)
        if (!(seg.duration > 0.0))
            throw invalid_schedule_error("evolve_schedule: segment duration must be positive");

    struct Piece {
        EigenDecomposition eig;
        double t_begin;
        double t_end;
        std::vector<cplx> entry;
    };
    std::vector<Piece> pieces;
    double t_edge = 0.0;
    std::vector<cplx> state = x0;
    for (const auto& seg : sched.segments) {
        Network seg_net = net;
        seg_net.couplings = seg.couplings;
        const CouplingMatrix m = build_coupling_matrix(seg_net);
        if (m.n != x0.size())
            throw invalid_schedule_error("evolve_schedule: segment dimension mismatch");
        Piece p;
        p.eig = jacobi_eigh(m.h);
        p.t_begin = t_edge;
        p.t_end = t_edge + seg.duration;
        p.entry = state;
        state = detail::propagate(p.eig, state, seg.duration);
        t_edge = p.t_end;
        pieces.push_back(std::move(p));
    }

    EnvelopeTrajectory traj;
    const double total = t_edge;
    const std::size_t steps =
        static_cast<std::size_t>(std::floor(total / sample_dt + 1e-9));
    std::size_t active = 0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * sample_dt;
        while (active + 1 < pieces.size() && t > pieces[active].t_end) ++active;
        const Piece& p = pieces[active];
        traj.times.push_back(t);
        traj.states.push_back(detail::propagate(p.eig, p.entry, t - p.t_begin));
    }
    return traj;
}

// Multiplies every snapshot by exp(-gamma t / 2). One-shot: a trajectory
// already carrying damping is rejected.
inline EnvelopeTrajectory apply_damping_envelope(const EnvelopeTrajectory& traj,
                                                 double gamma) {
    if (traj.gamma_applied)
        throw invalid_state_error("apply_damping_envelope: damping already applied");
    if (gamma < 0.0)
        throw invalid_argument_error("apply_damping_envelope: gamma must be non-negative");
    EnvelopeTrajectory out = traj;
    for (std::size_t k = 0; k < out.times.size(); ++k) {
        const double f = std::exp(-0.5 * gamma * out.times[k]);
        for (auto& z : out.states[k]) z *= f;
    }
    out.gamma_applied = true;
    return out;
}

inline std::vector<cplx> normalize_snapshot(const std::vector<cplx>& state) {
    const double nrm = norm2(state);
    if (nrm == 0.0)
        throw division_by_zero_error("normalize_snapshot: zero state");
    std::vector<cplx> out = state;
    for (auto& z : out) z /= nrm;
    return out;
}

inline double transfer_fidelity(const std::vector<cplx>& state, int site) {
    if (site < 1 || static_cast<std::size_t>(site) > state.size())
        throw out_of_range_error("transfer_fidelity: site out of range");
    const double total = norm2(state);
    if (total == 0.0)
        throw division_by_zero_error("transfer_fidelity: zero state");
    const cplx z = state[static_cast<std::size_t>(site) - 1];
    return std::norm(z) / (total * total);
}

namespace detail {

inline std::size_t nearest_sample(const EnvelopeTrajectory& traj, double t) {
    if (traj.times.empty())
        throw out_of_range_error("trajectory is empty");
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    const double span = t1 - t0;
    const double slack = 1e-9 * (span > 0.0 ? span : 1.0);
    if (t < t0 - slack || t > t1 + slack)
        throw out_of_range_error("time outside trajectory span");
    std::size_t best = 0;
    double best_d = std::fabs(traj.times[0] - t);
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        const double d = std::fabs(traj.times[k] - t);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

} // namespace detail

inline double transfer_fidelity(const EnvelopeTrajectory& traj, int site, double t) {
    return transfer_fidelity(traj.states[detail::nearest_sample(traj, t)], site);
}

inline double wrap_phase(double x) {
    double w = std::remainder(x, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

// Phase of one site's amplitude at time t relative to the initial snapshot,
// wrapped to (-pi, pi]. Amplitudes below 1e-6 of the initial norm have no
// well-defined phase.
inline double phase_at(const EnvelopeTrajectory& traj, int site, double t) {
    const std::size_t k = detail::nearest_sample(traj, t);
    if (site < 1 || static_cast<std::size_t>(site) > traj.sites())
        throw out_of_range_error("phase_at: site out of range");
    const std::size_t s = static_cast<std::size_t>(site) - 1;
    const double floor = 1e-6 * norm2(traj.states.front());
    const cplx z0 = traj.states.front()[s];
    const cplx zt = traj.states[k][s];
    if (std::abs(z0) < floor || std::abs(zt) < floor)
        throw phase_undefined_error("phase_at: amplitude below phase floor");
    return wrap_phase(std::arg(zt) - std::arg(z0));
}

} // namespace resonet
