#pragma once

#include <charconv>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "resonet/errors.hpp"
#include "resonet/synthesis.hpp"

#include <json.hpp>

namespace resonet {

// Line-oriented configuration format:
//   key = value            (value: number, word, or space-separated numbers)
//   section { ... }        (sections may repeat where the schema allows)
//   # comment
// Frequencies are given in plain Hz (keys end in _hz); the 2*pi conversion
// to rad/s happens when the model is built, never in the parser, so a
// config survives parse -> serialize -> parse bit-exactly. Times are in
// seconds (_s) or exact profile periods (_periods). Unknown keys and
// sections are rejected with their line number. A JSON object with the
// same section/key structure is accepted as an alternative encoding.

namespace cfg {

struct Value {
    std::string text;
    int line = 0;
};

struct Node {
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, Value>> entries;
    std::vector<Node> children;
};

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline Node parse_tree(const std::string& text) {
    Node root;
    root.name = "<root>";
    std::vector<Node*> stack{&root};
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s == "}") {
            if (stack.size() == 1) throw config_error("unmatched '}'", line);
            stack.pop_back();
            continue;
        }
        if (s.back() == '{') {
            const std::string name = trim(s.substr(0, s.size() - 1));
            if (name.empty() || name.find_first_of(" \t={}") != std::string::npos)
                throw config_error("malformed section header", line);
            Node child;
            child.name = name;
            child.line = line;
            stack.back()->children.push_back(std::move(child));
            stack.push_back(&stack.back()->children.back());
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("expected 'key = value', 'section {', or '}'", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty() || key.find_first_of(" \t{}") != std::string::npos)
            throw config_error("malformed key", line);
        if (val.empty()) throw config_error("missing value for key '" + key + "'", line);
        stack.back()->entries.push_back({key, Value{val, line}});
    }
    if (stack.size() != 1)
        throw config_error("unclosed section '" + stack.back()->name + "'",
                           stack.back()->line);
    return root;
}

inline double to_double(const Value& v) {
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    double out = 0.0;
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e)
        throw config_error("expected a number, got '" + v.text + "'", v.line);
    return out;
}

inline int to_int(const Value& v) {
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    int out = 0;
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e)
        throw config_error("expected an integer, got '" + v.text + "'", v.line);
    return out;
}

inline std::vector<double> to_double_list(const Value& v) {
    std::istringstream in(v.text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        Value item{tok, v.line};
        out.push_back(to_double(item));
    }
    if (out.empty()) throw config_error("expected numbers", v.line);
    return out;
}

inline std::vector<int> to_int_list(const Value& v) {
    std::istringstream in(v.text);
    std::vector<int> out;
    std::string tok;
    while (in >> tok) {
        Value item{tok, v.line};
        out.push_back(to_int(item));
    }
    if (out.empty()) throw config_error("expected integers", v.line);
    return out;
}

// Schema-side view of a node: every access marks its target consumed, and
// finish() rejects whatever was never asked for.
class Reader {
public:
    explicit Reader(const Node& node) : node_(node) {
        used_entries_.resize(node.entries.size(), false);
        used_children_.resize(node.children.size(), false);
    }

    std::optional<Value> take(const std::string& key) {
        std::optional<Value> out;
        for (std::size_t i = 0; i < node_.entries.size(); ++i) {
            if (node_.entries[i].first == key) {
                if (out)
                    throw config_error("key '" + key + "' given more than once",
                                       node_.entries[i].second.line);
                out = node_.entries[i].second;
                used_entries_[i] = true;
            }
        }
        return out;
    }

    std::vector<Value> take_all(const std::string& key) {
        std::vector<Value> out;
        for (std::size_t i = 0; i < node_.entries.size(); ++i) {
            if (node_.entries[i].first == key) {
                out.push_back(node_.entries[i].second);
                used_entries_[i] = true;
            }
        }
        return out;
    }

    Value require(const std::string& key) {
        auto v = take(key);
        if (!v)
            throw config_error("missing required key '" + key + "' in section '" +
                                   node_.name + "'",
                               node_.line);
        return *v;
    }

    std::vector<const Node*> sections(const std::string& name) {
        std::vector<const Node*> out;
        for (std::size_t i = 0; i < node_.children.size(); ++i) {
            if (node_.children[i].name == name) {
                out.push_back(&node_.children[i]);
                used_children_[i] = true;
            }
        }
        return out;
    }

    const Node* section(const std::string& name) {
        auto all = sections(name);
        if (all.size() > 1)
            throw config_error("section '" + name + "' given more than once",
                               all[1]->line);
        return all.empty() ? nullptr : all[0];
    }

    void finish() const {
        for (std::size_t i = 0; i < node_.entries.size(); ++i)
            if (!used_entries_[i])
                throw config_error("unknown key '" + node_.entries[i].first +
                                       "' in section '" + node_.name + "'",
                                   node_.entries[i].second.line);
        for (std::size_t i = 0; i < node_.children.size(); ++i)
            if (!used_children_[i])
                throw config_error("unknown section '" + node_.children[i].name + "'",
                                   node_.children[i].line);
    }

private:
    const Node& node_;
    std::vector<bool> used_entries_;
    std::vector<bool> used_children_;
};

} // namespace cfg

enum class ExperimentKind { synth, evolve_rwa, evolve_full, spectrum, parity, calibrate };

inline std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::synth: return "synth";
        case ExperimentKind::evolve_rwa: return "evolve-rwa";
        case ExperimentKind::evolve_full: return "evolve-full";
        case ExperimentKind::spectrum: return "spectrum";
        case ExperimentKind::parity: return "parity";
        case ExperimentKind::calibrate: return "calibrate";
    }
    throw invalid_argument_error("unknown experiment kind");
}

struct ChainSection {
    int n = 0;
    double c0_hz = 0.0; // 0 when only the site count matters
    bool operator==(const ChainSection&) const = default;
};

struct NetworkSection {
    std::vector<double> carriers_hz; // logical chain order
    std::vector<int> indices;        // optional physical labels, defaults 1..n
    double gamma_hz = 0.0;           // uniform
    double mass = 1.0;
    bool operator==(const NetworkSection&) const = default;
};

struct RwaSection {
    int launch_site = 1;
    double duration_s = -1.0; // one of duration_s / duration_periods
    double duration_periods = -1.0;
    double sample_dt = 0.0;
    double gamma_hz = 0.0; // > 0 applies the damping envelope
    int report_site = 0;   // 0 = mirror of launch
    bool operator==(const RwaSection&) const = default;
};

struct ScheduleSegment {
    double c0_hz = 0.0;
    double duration_s = -1.0;
    double duration_periods = -1.0;
    bool operator==(const ScheduleSegment&) const = default;
};

struct ParitySection {
    int launch_site = 1;
    double sample_dt = 0.0;
    bool operator==(const ParitySection&) const = default;
};

struct SpectrumSection {
    double gamma_hz = 0.0;
    int drive_site = 1;
    int probe_site = 1;
    double min_detuning_hz = 0.0;
    double max_detuning_hz = 0.0;
    double step_hz = 0.0;
    bool operator==(const SpectrumSection&) const = default;
};

struct FullSection {
    int launch_site = 1;
    double duration_s = -1.0;
    double duration_periods = -1.0;
    double extra_s = 0.0; // padding past the pump-on duration
    double dt_divisor = 200.0;
    int decimation = 16;
    bool pulse = false; // false = direct seeding of the launch site
    double pulse_amplitude = 1.0;
    double pulse_duration_s = 0.002;
    double scale = 1.0;
    double tau_s = 1.0 / (two_pi * 300.0);
    bool operator==(const FullSection&) const = default;
};

struct CalibratePoint {
    double v_dc = 0.0;
    double v_ac = 0.0;
    double coupling_hz = 0.0;
    bool operator==(const CalibratePoint&) const = default;
};

struct CalibrateSection {
    std::vector<CalibratePoint> points;
    std::vector<std::pair<double, double>> predict; // (v_dc, v_ac)
    bool operator==(const CalibrateSection&) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::synth;
    std::optional<ChainSection> chain;
    std::optional<NetworkSection> network;
    std::optional<RwaSection> rwa;
    std::vector<ScheduleSegment> schedule;
    std::optional<ParitySection> parity;
    std::optional<SpectrumSection> spectrum;
    std::optional<FullSection> full;
    std::optional<CalibrateSection> calibrate;
    std::string raw_text; // as given, for hashing; not part of equality

    bool operator==(const ExperimentConfig& o) const {
        return kind == o.kind && chain == o.chain && network == o.network &&
               rwa == o.rwa && schedule == o.schedule && parity == o.parity &&
               spectrum == o.spectrum && full == o.full && calibrate == o.calibrate;
    }
};

namespace cfg {

inline ChainSection read_chain(const Node& node) {
    Reader r(node);
    ChainSection out;
    out.n = to_int(r.require("n"));
    if (auto v = r.take("c0_hz")) out.c0_hz = to_double(*v);
    r.finish();
    if (out.n < 1) throw config_error("chain: n must be positive", node.line);
    if (out.c0_hz < 0.0) throw config_error("chain: c0_hz must be non-negative", node.line);
    return out;
}

inline NetworkSection read_network(const Node& node) {
    Reader r(node);
    NetworkSection out;
    out.carriers_hz = to_double_list(r.require("carriers_hz"));
    if (auto v = r.take("indices")) out.indices = to_int_list(*v);
    if (auto v = r.take("gamma_hz")) out.gamma_hz = to_double(*v);
    if (auto v = r.take("mass")) out.mass = to_double(*v);
    r.finish();
    if (!out.indices.empty() && out.indices.size() != out.carriers_hz.size())
        throw config_error("network: indices must match carriers_hz length", node.line);
    return out;
}

inline RwaSection read_rwa(const Node& node) {
    Reader r(node);
    RwaSection out;
    if (auto v = r.take("launch_site")) out.launch_site = to_int(*v);
    if (auto v = r.take("duration_s")) out.duration_s = to_double(*v);
    if (auto v = r.take("duration_periods")) out.duration_periods = to_double(*v);
    out.sample_dt = to_double(r.require("sample_dt_s"));
    if (auto v = r.take("gamma_hz")) out.gamma_hz = to_double(*v);
    if (auto v = r.take("report_site")) out.report_site = to_int(*v);
    r.finish();
    return out;
}

inline ScheduleSegment read_segment(const Node& node) {
    Reader r(node);
    ScheduleSegment out;
    out.c0_hz = to_double(r.require("c0_hz"));
    if (auto v = r.take("duration_s")) out.duration_s = to_double(*v);
    if (auto v = r.take("duration_periods")) out.duration_periods = to_double(*v);
    r.finish();
    if (out.duration_s <= 0.0 && out.duration_periods <= 0.0)
        throw config_error("segment: need duration_s or duration_periods", node.line);
    return out;
}

inline ParitySection read_parity(const Node& node) {
    Reader r(node);
    ParitySection out;
    if (auto v = r.take("launch_site")) out.launch_site = to_int(*v);
    out.sample_dt = to_double(r.require("sample_dt_s"));
    r.finish();
    return out;
}

inline SpectrumSection read_spectrum(const Node& node) {
    Reader r(node);
    SpectrumSection out;
    out.gamma_hz = to_double(r.require("gamma_hz"));
    out.drive_site = to_int(r.require("drive_site"));
    out.probe_site = to_int(r.require("probe_site"));
    out.min_detuning_hz = to_double(r.require("min_detuning_hz"));
    out.max_detuning_hz = to_double(r.require("max_detuning_hz"));
    out.step_hz = to_double(r.require("step_hz"));
    r.finish();
    return out;
}

inline FullSection read_full(const Node& node) {
    Reader r(node);
    FullSection out;
    if (auto v = r.take("launch_site")) out.launch_site = to_int(*v);
    if (auto v = r.take("duration_s")) out.duration_s = to_double(*v);
    if (auto v = r.take("duration_periods")) out.duration_periods = to_double(*v);
    if (auto v = r.take("extra_s")) out.extra_s = to_double(*v);
    if (auto v = r.take("dt_divisor")) out.dt_divisor = to_double(*v);
    if (auto v = r.take("decimation")) out.decimation = to_int(*v);
    if (auto v = r.take("pulse")) {
        if (v->text == "resonant")
            out.pulse = true;
        else if (v->text == "none")
            out.pulse = false;
        else
            throw config_error("full: pulse must be 'resonant' or 'none'", v->line);
    }
    if (auto v = r.take("pulse_amplitude")) out.pulse_amplitude = to_double(*v);
    if (auto v = r.take("pulse_duration_s")) out.pulse_duration_s = to_double(*v);
    if (auto v = r.take("scale")) out.scale = to_double(*v);
    if (auto v = r.take("tau_s")) out.tau_s = to_double(*v);
    r.finish();
    return out;
}

inline CalibrateSection read_calibrate(const Node& node) {
    Reader r(node);
    CalibrateSection out;
    for (const Value& v : r.take_all("point")) {
        const std::vector<double> nums = to_double_list(v);
        if (nums.size() != 3)
            throw config_error("point: expected 'v_dc v_ac coupling_hz'", v.line);
        out.points.push_back({nums[0], nums[1], nums[2]});
    }
    for (const Value& v : r.take_all("predict")) {
        const std::vector<double> nums = to_double_list(v);
        if (nums.size() != 2)
            throw config_error("predict: expected 'v_dc v_ac'", v.line);
        out.predict.push_back({nums[0], nums[1]});
    }
    r.finish();
    if (out.points.empty())
        throw config_error("calibration: need at least one point", node.line);
    return out;
}

} // namespace cfg

inline ExperimentConfig parse_config_tree(const cfg::Node& root, std::string raw_text) {
    cfg::Reader r(root);

    ExperimentConfig out;
    out.raw_text = std::move(raw_text);

    const cfg::Value kind = r.require("experiment");
    if (kind.text == "synth")
        out.kind = ExperimentKind::synth;
    else if (kind.text == "evolve-rwa")
        out.kind = ExperimentKind::evolve_rwa;
    else if (kind.text == "evolve-full")
        out.kind = ExperimentKind::evolve_full;
    else if (kind.text == "spectrum")
        out.kind = ExperimentKind::spectrum;
    else if (kind.text == "parity")
        out.kind = ExperimentKind::parity;
    else if (kind.text == "calibrate")
        out.kind = ExperimentKind::calibrate;
    else
        throw config_error("unknown experiment '" + kind.text + "'", kind.line);

    if (const cfg::Node* n = r.section("chain")) out.chain = cfg::read_chain(*n);
    if (const cfg::Node* n = r.section("network")) out.network = cfg::read_network(*n);
    if (const cfg::Node* n = r.section("rwa")) out.rwa = cfg::read_rwa(*n);
    if (const cfg::Node* n = r.section("schedule")) {
        cfg::Reader sr(*n);
        for (const cfg::Node* seg : sr.sections("segment"))
            out.schedule.push_back(cfg::read_segment(*seg));
        sr.finish();
        if (out.schedule.empty())
            throw config_error("schedule: needs at least one segment", n->line);
    }
    if (const cfg::Node* n = r.section("parity")) out.parity = cfg::read_parity(*n);
    if (const cfg::Node* n = r.section("spectrum")) out.spectrum = cfg::read_spectrum(*n);
    if (const cfg::Node* n = r.section("full")) out.full = cfg::read_full(*n);
    if (const cfg::Node* n = r.section("calibration")) out.calibrate = cfg::read_calibrate(*n);
    r.finish();

    return out;
}

inline ExperimentConfig parse_config(const std::string& text) {
    return parse_config_tree(cfg::parse_tree(text), text);
}

namespace cfg {

// Shortest round-trip decimal rendering: reparsing reproduces the double.
inline std::string format_number(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

// JSON -> node tree. Objects become sections, scalars become entries,
// numeric arrays become space-separated lists, arrays of arrays repeat the
// key, and the schedule array becomes its segment sections. The schema
// layer downstream is shared with the text format.
inline std::string json_scalar_text(const nlohmann::ordered_json& v,
                                    const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) {
        if (key == "pulse") return v.get<bool>() ? "resonant" : "none";
        throw config_error("JSON: boolean is not a valid value for key '" + key + "'");
    }
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    throw config_error("JSON: unsupported value for key '" + key + "'");
}

inline Node node_from_json(const std::string& name, const nlohmann::ordered_json& obj);

inline void fill_node_from_json(Node& node, const nlohmann::ordered_json& obj) {
    for (const auto& [key, value] : obj.items()) {
        if (value.is_object()) {
            node.children.push_back(node_from_json(key, value));
        } else if (key == "schedule" && value.is_array()) {
            Node sched;
            sched.name = "schedule";
            for (const auto& el : value) {
                if (!el.is_object())
                    throw config_error("JSON: schedule entries must be objects");
                sched.children.push_back(node_from_json("segment", el));
            }
            node.children.push_back(std::move(sched));
        } else if (value.is_array() && !value.empty() && value[0].is_array()) {
            for (const auto& el : value) {
                std::string text;
                for (const auto& item : el) {
                    if (!text.empty()) text += ' ';
                    text += json_scalar_text(item, key);
                }
                node.entries.push_back({key, Value{text, 0}});
            }
        } else if (value.is_array()) {
            std::string text;
            for (const auto& item : value) {
                if (!text.empty()) text += ' ';
                text += json_scalar_text(item, key);
            }
            if (text.empty())
                throw config_error("JSON: empty array for key '" + key + "'");
            node.entries.push_back({key, Value{text, 0}});
        } else {
            node.entries.push_back({key, Value{json_scalar_text(value, key), 0}});
        }
    }
}

inline Node node_from_json(const std::string& name, const nlohmann::ordered_json& obj) {
    Node node;
    node.name = name;
    fill_node_from_json(node, obj);
    return node;
}

} // namespace cfg

inline ExperimentConfig parse_config_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("JSON config must be an object");
    cfg::Node root;
    root.name = "<root>";
    cfg::fill_node_from_json(root, j);
    return parse_config_tree(root, text);
}

// Dispatches on the first non-space byte: '{' selects the JSON encoding.
inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' ? parse_config_json(text) : parse_config(text);
    }
    return parse_config(text);
}

// Canonical text rendering; parse(serialize(cfg)) reproduces cfg exactly.
inline std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    auto num = [](double v) { return cfg::format_number(v); };

    out << "experiment = " << to_string(c.kind) << "\n";
    if (c.chain) {
        out << "chain {\n    n = " << c.chain->n << "\n";
        if (c.chain->c0_hz != 0.0) out << "    c0_hz = " << num(c.chain->c0_hz) << "\n";
        out << "}\n";
    }
    if (c.network) {
        out << "network {\n    carriers_hz =";
        for (double w : c.network->carriers_hz) out << " " << num(w);
        out << "\n";
        if (!c.network->indices.empty()) {
            out << "    indices =";
            for (int i : c.network->indices) out << " " << i;
            out << "\n";
        }
        if (c.network->gamma_hz != 0.0)
            out << "    gamma_hz = " << num(c.network->gamma_hz) << "\n";
        if (c.network->mass != 1.0) out << "    mass = " << num(c.network->mass) << "\n";
        out << "}\n";
    }
    if (c.rwa) {
        out << "rwa {\n    launch_site = " << c.rwa->launch_site << "\n";
        if (c.rwa->duration_s >= 0.0)
            out << "    duration_s = " << num(c.rwa->duration_s) << "\n";
        if (c.rwa->duration_periods >= 0.0)
            out << "    duration_periods = " << num(c.rwa->duration_periods) << "\n";
        out << "    sample_dt_s = " << num(c.rwa->sample_dt) << "\n";
        if (c.rwa->gamma_hz != 0.0) out << "    gamma_hz = " << num(c.rwa->gamma_hz) << "\n";
        if (c.rwa->report_site != 0)
            out << "    report_site = " << c.rwa->report_site << "\n";
        out << "}\n";
    }
    if (!c.schedule.empty()) {
        out << "schedule {\n";
        for (const auto& seg : c.schedule) {
            out << "    segment {\n        c0_hz = " << num(seg.c0_hz) << "\n";
            if (seg.duration_s >= 0.0)
                out << "        duration_s = " << num(seg.duration_s) << "\n";
            if (seg.duration_periods >= 0.0)
                out << "        duration_periods = " << num(seg.duration_periods) << "\n";
            out << "    }\n";
        }
        out << "}\n";
    }
    if (c.parity) {
        out << "parity {\n    launch_site = " << c.parity->launch_site
            << "\n    sample_dt_s = " << num(c.parity->sample_dt) << "\n}\n";
    }
    if (c.spectrum) {
        out << "spectrum {\n    gamma_hz = " << num(c.spectrum->gamma_hz)
            << "\n    drive_site = " << c.spectrum->drive_site
            << "\n    probe_site = " << c.spectrum->probe_site
            << "\n    min_detuning_hz = " << num(c.spectrum->min_detuning_hz)
            << "\n    max_detuning_hz = " << num(c.spectrum->max_detuning_hz)
            << "\n    step_hz = " << num(c.spectrum->step_hz) << "\n}\n";
    }
    if (c.full) {
        const FullSection d; // defaults
        const FullSection& f = *c.full;
        out << "full {\n    launch_site = " << f.launch_site << "\n";
        if (f.duration_s >= 0.0) out << "    duration_s = " << num(f.duration_s) << "\n";
        if (f.duration_periods >= 0.0)
            out << "    duration_periods = " << num(f.duration_periods) << "\n";
        if (f.extra_s != d.extra_s) out << "    extra_s = " << num(f.extra_s) << "\n";
        if (f.dt_divisor != d.dt_divisor)
            out << "    dt_divisor = " << num(f.dt_divisor) << "\n";
        if (f.decimation != d.decimation)
            out << "    decimation = " << f.decimation << "\n";
        if (f.pulse) out << "    pulse = resonant\n";
        if (f.pulse_amplitude != d.pulse_amplitude)
            out << "    pulse_amplitude = " << num(f.pulse_amplitude) << "\n";
        if (f.pulse_duration_s != d.pulse_duration_s)
            out << "    pulse_duration_s = " << num(f.pulse_duration_s) << "\n";
        if (f.scale != d.scale) out << "    scale = " << num(f.scale) << "\n";
        if (f.tau_s != d.tau_s) out << "    tau_s = " << num(f.tau_s) << "\n";
        out << "}\n";
    }
    if (c.calibrate) {
        out << "calibration {\n";
        for (const auto& p : c.calibrate->points)
            out << "    point = " << num(p.v_dc) << " " << num(p.v_ac) << " "
                << num(p.coupling_hz) << "\n";
        for (const auto& p : c.calibrate->predict)
            out << "    predict = " << num(p.first) << " " << num(p.second) << "\n";
        out << "}\n";
    }
    return out.str();
}

} // namespace resonet
