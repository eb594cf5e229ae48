#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "resonet/errors.hpp"
#include "resonet/linalg.hpp"

namespace resonet {

// All angular quantities in this library are rad/s. Configuration files use
// plain Hz and are converted on parse.

struct ResonatorSpec {
    int index = 0;       // 1-based user-facing label
    double omega = 0.0;  // eigenfrequency, rad/s
    double gamma = 0.0;  // energy decay rate, rad/s
    double mass = 1.0;   // kg

    bool operator==(const ResonatorSpec&) const = default;
};

struct CouplingSpec {
    int a = 0;
    int b = 0;
    double strength = 0.0; // RWA coupling rate, rad/s, >= 0

    bool operator==(const CouplingSpec&) const = default;
};

struct Network {
    std::vector<ResonatorSpec> resonators;
    std::vector<CouplingSpec> couplings;
    // Optional explicit chain ordering (resonator indices). Needed whenever
    // the coupled pairs do not already form a path in index order.
    std::vector<int> chain_order;

    bool operator==(const Network&) const = default;

    const ResonatorSpec* find(int index) const {
        for (const auto& r : resonators)
            if (r.index == index) return &r;
        return nullptr;
    }

    std::size_t position_of(int index) const {
        for (std::size_t i = 0; i < resonators.size(); ++i)
            if (resonators[i].index == index) return i;
        throw invalid_argument_error("unknown resonator index " + std::to_string(index));
    }
};

// Pump frequency for an edge: the carrier difference |omega_a - omega_b|.
inline double pump_frequency(const Network& net, const CouplingSpec& c) {
    const ResonatorSpec* ra = net.find(c.a);
    const ResonatorSpec* rb = net.find(c.b);
    if (!ra || !rb)
        throw invalid_argument_error("coupling references unknown resonator index");
    return std::fabs(ra->omega - rb->omega);
}

struct Segment {
    std::vector<CouplingSpec> couplings;
    double duration = 0.0; // s, > 0

    bool operator==(const Segment&) const = default;
};

struct Schedule {
    std::vector<Segment> segments;

    double total_duration() const {
        double t = 0.0;
        for (const auto& s : segments) t += s.duration;
        return t;
    }
};

struct EnvelopeState {
    double time = 0.0;
    std::vector<cplx> amplitudes; // one slow-varying complex amplitude per site
};

struct MechanicalState {
    double time = 0.0;
    std::vector<double> positions;
    std::vector<double> velocities;
};

struct ExcitationPulse {
    int target = 0;        // resonator index
    double amplitude = 0.0; // force amplitude per unit mass
    double frequency = 0.0; // drive carrier, rad/s
    double duration = 0.0;  // s
};

// Structural checks. Violations are data, not exceptions: callers decide
// what to do with an invalid network. The function is pure and repeated
// calls return identical lists.
inline std::vector<std::string> validate_network(const Network& net) {
    std::vector<std::string> out;
    const auto& rs = net.resonators;

    if (rs.empty()) out.push_back("network has no resonators");

    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& r = rs[i];
        const std::string tag = "resonator " + std::to_string(r.index);
        if (r.omega <= 0.0) out.push_back(tag + ": omega must be positive");
        if (r.gamma < 0.0) out.push_back(tag + ": gamma must be non-negative");
        if (r.mass <= 0.0) out.push_back(tag + ": mass must be positive");
        if (r.omega > 0.0 && r.gamma / r.omega >= 1e-2)
            out.push_back(tag + ": gamma/omega must stay below 1e-2 (underdamped regime)");
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            if (rs[j].index == r.index)
                out.push_back("duplicate resonator index " + std::to_string(r.index));
            if (rs[j].omega == r.omega)
                out.push_back("resonators " + std::to_string(r.index) + " and " +
                              std::to_string(rs[j].index) +
                              " share the same eigenfrequency");
        }
    }

    for (std::size_t i = 0; i < net.couplings.size(); ++i) {
        const auto& c = net.couplings[i];
        const std::string tag =
            "coupling " + std::to_string(c.a) + "-" + std::to_string(c.b);
        if (c.a == c.b) out.push_back(tag + ": self-coupling not allowed");
        if (!net.find(c.a))
            out.push_back(tag + ": unknown resonator index " + std::to_string(c.a));
        if (!net.find(c.b))
            out.push_back(tag + ": unknown resonator index " + std::to_string(c.b));
        if (c.strength < 0.0) out.push_back(tag + ": strength must be non-negative");
        for (std::size_t j = i + 1; j < net.couplings.size(); ++j) {
            const auto& d = net.couplings[j];
            const bool same = (c.a == d.a && c.b == d.b) || (c.a == d.b && c.b == d.a);
            if (same) out.push_back(tag + ": duplicate coupling for this pair");
        }
    }

    if (!net.chain_order.empty()) {
        if (net.chain_order.size() != rs.size())
            out.push_back("chain_order must list every resonator exactly once");
        for (std::size_t i = 0; i < net.chain_order.size(); ++i) {
            if (!net.find(net.chain_order[i]))
                out.push_back("chain_order references unknown resonator index " +
                              std::to_string(net.chain_order[i]));
            for (std::size_t j = i + 1; j < net.chain_order.size(); ++j)
                if (net.chain_order[j] == net.chain_order[i])
                    out.push_back("chain_order repeats resonator index " +
                                  std::to_string(net.chain_order[i]));
        }
    }
    return out;
}

} // namespace resonet
