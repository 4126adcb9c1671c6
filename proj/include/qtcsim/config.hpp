#pragma once

// INI-style project config: flat sectioned key=value text with explicitly
// unit-suffixed keys. Unknown sections and keys are rejected by name.
//
//   [layer]        repeated, one section per layer (top to bottom order free)
//     name, thickness_um, conductivity_w_mk, vol_heat_capacity_j_m3k, tcc_per_k
//   [geometry]     length_um, width_um, x_over_l, foster_stages (optional, default 2)
//   [device]       r_heater_ohm, alpha_r, n_thermocouples, seebeck_v_per_k,
//                  alpha_s, coupling_kappa, t0_celsius, r_thermopile_ohm,
//                  alpha_lambda (optional; otherwise derived from the layers)
//   [sim]          dt_s, duration_s, drive (dc|sine), amplitude_v,
//                  frequency_hz (sine), offset_v (optional), window,
//                  harmonics (comma list)
//   [ladder]       optional override: resistances_k_w, capacitances_j_k
//                  (comma lists; layers/geometry are then ignored)

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qtcsim/analysis.hpp"
#include "qtcsim/cauer.hpp"
#include "qtcsim/circuit.hpp"
#include "qtcsim/errors.hpp"
#include "qtcsim/layer_stack.hpp"
#include "qtcsim/rc_line.hpp"

namespace qtcsim {

struct GeometryConfig {
    double length_um = 0.0;
    double width_um = 0.0;
    double x_over_l = 1.0;
    int foster_stages = 2;
};

struct DeviceConfig {
    double r_heater_ohm = 0.0;
    double alpha_r = 0.0;
    int n_thermocouples = 1;
    double seebeck_v_per_k = 0.0;
    double alpha_s = 0.0;
    double coupling_kappa = 0.0;
    double t0_celsius = 25.0;
    double r_thermopile_ohm = 0.0;
    std::optional<double> alpha_lambda;
};

struct SimConfig {
    double dt_s = 0.0;
    double duration_s = 0.0;
    DriveSpec::Kind drive = DriveSpec::Kind::dc;
    double amplitude_v = 0.0;
    double frequency_hz = 0.0;
    double offset_v = 0.0;
    WindowKind window = WindowKind::hamming;
    std::vector<int> harmonics{1, 2, 4, 6};
};

struct LadderConfig {
    std::vector<double> resistances_k_w;
    std::vector<double> capacitances_j_k;
};

struct ProjectConfig {
    std::vector<Layer> layers; // already in SI units
    std::optional<GeometryConfig> geometry;
    DeviceConfig device;
    std::optional<SimConfig> sim;
    std::optional<LadderConfig> ladder;

    bool has_layers() const { return !layers.empty() && geometry.has_value(); }

    LayerStack layer_stack() const {
        if (!has_layers())
            throw config_error("config: this command needs [layer]/[geometry] sections");
        LayerStack stack;
        stack.layers = layers;
        stack.length = geometry->length_um * 1e-6;
        stack.width = geometry->width_um * 1e-6;
        stack.validate();
        return stack;
    }

    DistributedLine line() const {
        const LayerStack stack = layer_stack();
        DistributedLine l{thermal_resistance(stack), thermal_capacitance(stack),
                          geometry->x_over_l};
        l.validate();
        return l;
    }
};

namespace detail {

struct IniEntry {
    std::string value;
    int line = 0;
};

struct IniSection {
    std::string name;
    int line = 0;
    std::map<std::string, IniEntry> entries;
    std::vector<std::string> order;
};

inline std::string ini_trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<IniSection> parse_ini(std::istream& in, const std::string& origin) {
    std::vector<IniSection> sections;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t cut = raw.find_first_of("#;");
        if (cut != std::string::npos) raw.erase(cut);
        const std::string line = ini_trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(origin + ":" + std::to_string(lineno) +
                                   ": malformed section header '" + line + "'");
            sections.push_back({ini_trim(line.substr(1, line.size() - 2)), lineno, {}, {}});
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
        if (sections.empty())
            throw config_error(origin + ":" + std::to_string(lineno) +
                               ": key outside any [section]");
        const std::string key = ini_trim(line.substr(0, eq));
        const std::string value = ini_trim(line.substr(eq + 1));
        IniSection& sec = sections.back();
        if (sec.entries.count(key))
            throw config_error(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                               key + "' in [" + sec.name + "]");
        sec.entries[key] = {value, lineno};
        sec.order.push_back(key);
    }
    return sections;
}

inline double to_double(const std::string& origin, const IniSection& sec,
                        const std::string& key, const IniEntry& e) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size() || !std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error(origin + ":" + std::to_string(e.line) + ": value of '" + key +
                           "' in [" + sec.name + "] is not a number: '" + e.value + "'");
    }
}

inline int to_int(const std::string& origin, const IniSection& sec, const std::string& key,
                  const IniEntry& e) {
    const double v = to_double(origin, sec, key, e);
    if (v != std::floor(v))
        throw config_error(origin + ":" + std::to_string(e.line) + ": '" + key +
                           "' must be an integer");
    return static_cast<int>(v);
}

inline std::vector<double> to_double_list(const std::string& origin, const IniSection& sec,
                                          const std::string& key, const IniEntry& e) {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        IniEntry one{ini_trim(item), e.line};
        out.push_back(to_double(origin, sec, key, one));
    }
    if (out.empty())
        throw config_error(origin + ":" + std::to_string(e.line) + ": '" + key +
                           "' must be a comma-separated list");
    return out;
}

inline void check_keys(const std::string& origin, const IniSection& sec,
                       const std::set<std::string>& known) {
    for (const auto& [key, entry] : sec.entries)
        if (!known.count(key))
            throw config_error(origin + ":" + std::to_string(entry.line) + ": unknown key '" +
                               key + "' in [" + sec.name + "]");
}

inline const IniEntry& require(const std::string& origin, const IniSection& sec,
                               const std::string& key) {
    auto it = sec.entries.find(key);
    if (it == sec.entries.end())
        throw config_error(origin + ":" + std::to_string(sec.line) + ": [" + sec.name +
                           "] is missing required key '" + key + "'");
    return it->second;
}

} // namespace detail

inline ProjectConfig parse_config(std::istream& in, const std::string& origin) {
    using namespace detail;
    const std::vector<IniSection> sections = parse_ini(in, origin);

    ProjectConfig cfg;
    bool have_device = false, have_geometry = false, have_sim = false, have_ladder = false;

    for (const IniSection& sec : sections) {
        if (sec.name == "layer") {
            check_keys(origin, sec,
                       {"name", "thickness_um", "conductivity_w_mk",
                        "vol_heat_capacity_j_m3k", "tcc_per_k"});
            Layer l;
            l.name = require(origin, sec, "name").value;
            l.thickness = to_double(origin, sec, "thickness_um",
                                    require(origin, sec, "thickness_um")) * 1e-6;
            l.conductivity = to_double(origin, sec, "conductivity_w_mk",
                                       require(origin, sec, "conductivity_w_mk"));
            l.vol_heat_capacity = to_double(origin, sec, "vol_heat_capacity_j_m3k",
                                            require(origin, sec, "vol_heat_capacity_j_m3k"));
            l.conductivity_tcc =
                to_double(origin, sec, "tcc_per_k", require(origin, sec, "tcc_per_k"));
            cfg.layers.push_back(l);
        } else if (sec.name == "geometry") {
            if (have_geometry)
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": duplicate [geometry] section");
            have_geometry = true;
            check_keys(origin, sec, {"length_um", "width_um", "x_over_l", "foster_stages"});
            GeometryConfig g;
            g.length_um = to_double(origin, sec, "length_um", require(origin, sec, "length_um"));
            g.width_um = to_double(origin, sec, "width_um", require(origin, sec, "width_um"));
            g.x_over_l = to_double(origin, sec, "x_over_l", require(origin, sec, "x_over_l"));
            if (sec.entries.count("foster_stages"))
                g.foster_stages =
                    to_int(origin, sec, "foster_stages", sec.entries.at("foster_stages"));
            cfg.geometry = g;
        } else if (sec.name == "device") {
            if (have_device)
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": duplicate [device] section");
            have_device = true;
            check_keys(origin, sec,
                       {"r_heater_ohm", "alpha_r", "n_thermocouples", "seebeck_v_per_k",
                        "alpha_s", "coupling_kappa", "t0_celsius", "r_thermopile_ohm",
                        "alpha_lambda"});
            DeviceConfig d;
            d.r_heater_ohm =
                to_double(origin, sec, "r_heater_ohm", require(origin, sec, "r_heater_ohm"));
            d.alpha_r = to_double(origin, sec, "alpha_r", require(origin, sec, "alpha_r"));
            d.n_thermocouples = to_int(origin, sec, "n_thermocouples",
                                       require(origin, sec, "n_thermocouples"));
            d.seebeck_v_per_k = to_double(origin, sec, "seebeck_v_per_k",
                                          require(origin, sec, "seebeck_v_per_k"));
            d.alpha_s = to_double(origin, sec, "alpha_s", require(origin, sec, "alpha_s"));
            d.coupling_kappa =
                to_double(origin, sec, "coupling_kappa", require(origin, sec, "coupling_kappa"));
            d.t0_celsius =
                to_double(origin, sec, "t0_celsius", require(origin, sec, "t0_celsius"));
            d.r_thermopile_ohm = to_double(origin, sec, "r_thermopile_ohm",
                                           require(origin, sec, "r_thermopile_ohm"));
            if (sec.entries.count("alpha_lambda"))
                d.alpha_lambda =
                    to_double(origin, sec, "alpha_lambda", sec.entries.at("alpha_lambda"));
            cfg.device = d;
        } else if (sec.name == "sim") {
            if (have_sim)
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": duplicate [sim] section");
            have_sim = true;
            check_keys(origin, sec,
                       {"dt_s", "duration_s", "drive", "amplitude_v", "frequency_hz",
                        "offset_v", "window", "harmonics"});
            SimConfig s;
            s.dt_s = to_double(origin, sec, "dt_s", require(origin, sec, "dt_s"));
            s.duration_s =
                to_double(origin, sec, "duration_s", require(origin, sec, "duration_s"));
            const std::string drive = require(origin, sec, "drive").value;
            if (drive == "dc") s.drive = DriveSpec::Kind::dc;
            else if (drive == "sine") s.drive = DriveSpec::Kind::sine;
            else
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": drive must be dc or sine, got '" + drive + "'");
            s.amplitude_v =
                to_double(origin, sec, "amplitude_v", require(origin, sec, "amplitude_v"));
            if (sec.entries.count("frequency_hz"))
                s.frequency_hz =
                    to_double(origin, sec, "frequency_hz", sec.entries.at("frequency_hz"));
            else if (s.drive == DriveSpec::Kind::sine)
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": sine drive requires frequency_hz");
            if (sec.entries.count("offset_v"))
                s.offset_v = to_double(origin, sec, "offset_v", sec.entries.at("offset_v"));
            if (sec.entries.count("window")) {
                const std::string w = sec.entries.at("window").value;
                if (w == "rect") s.window = WindowKind::rect;
                else if (w == "hamming") s.window = WindowKind::hamming;
                else if (w == "hann") s.window = WindowKind::hann;
                else if (w == "bartlett") s.window = WindowKind::bartlett;
                else
                    throw config_error(origin + ":" +
                                       std::to_string(sec.entries.at("window").line) +
                                       ": unknown window '" + w + "'");
            }
            if (sec.entries.count("harmonics")) {
                s.harmonics.clear();
                for (double v : to_double_list(origin, sec, "harmonics",
                                               sec.entries.at("harmonics")))
                    s.harmonics.push_back(static_cast<int>(v));
            }
            cfg.sim = s;
        } else if (sec.name == "ladder") {
            if (have_ladder)
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": duplicate [ladder] section");
            have_ladder = true;
            check_keys(origin, sec, {"resistances_k_w", "capacitances_j_k"});
            LadderConfig l;
            l.resistances_k_w = to_double_list(origin, sec, "resistances_k_w",
                                               require(origin, sec, "resistances_k_w"));
            l.capacitances_j_k = to_double_list(origin, sec, "capacitances_j_k",
                                                require(origin, sec, "capacitances_j_k"));
            if (l.resistances_k_w.size() != l.capacitances_j_k.size())
                throw config_error(origin + ":" + std::to_string(sec.line) +
                                   ": [ladder] lists must have equal length");
            cfg.ladder = l;
        } else {
            throw config_error(origin + ":" + std::to_string(sec.line) +
                               ": unknown section [" + sec.name + "]");
        }
    }

    if (!have_device)
        throw config_error(origin + ": missing required section [device]");
    if (!cfg.layers.empty() && !have_geometry)
        throw config_error(origin + ": [layer] sections present but [geometry] is missing");
    if (cfg.layers.empty() && have_geometry)
        throw config_error(origin + ": [geometry] present but no [layer] sections");
    if (!have_ladder && cfg.layers.empty())
        throw config_error(origin +
                           ": thermal network undefined; provide [layer]+[geometry] or [ladder]");
    return cfg;
}

inline ProjectConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open '" + path + "'");
    return parse_config(in, path);
}

struct BuiltModel {
    DeviceModel model;
    std::vector<std::string> warnings;
};

// Assemble the device model: ladder override wins; otherwise the thermal
// chain layers -> distributed line -> Foster -> Cauer is computed.
inline BuiltModel build_model(const ProjectConfig& cfg) {
    BuiltModel out;
    DeviceModel& m = out.model;
    const DeviceConfig& d = cfg.device;
    m.r_heater0 = d.r_heater_ohm;
    m.alpha_r = d.alpha_r;
    m.n_couples = d.n_thermocouples;
    m.seebeck0 = d.seebeck_v_per_k;
    m.alpha_s = d.alpha_s;
    m.coupling = d.coupling_kappa;
    m.t0_celsius = d.t0_celsius;
    m.r_thermopile = d.r_thermopile_ohm;

    if (cfg.ladder) {
        if (cfg.has_layers())
            out.warnings.push_back("[ladder] override present: layers/geometry ignored for "
                                   "the thermal network");
        for (std::size_t i = 0; i < cfg.ladder->resistances_k_w.size(); ++i)
            m.ladder.stages.push_back(
                {cfg.ladder->capacitances_j_k[i], cfg.ladder->resistances_k_w[i]});
        m.alpha_lambda = d.alpha_lambda.value_or(
            cfg.has_layers() ? effective_lambda_tcc(cfg.layer_stack()) : 0.0);
    } else {
        const DistributedLine line = cfg.line();
        const int stages = cfg.geometry->foster_stages;
        m.ladder = foster_to_cauer(foster_network(line, stages));
        m.alpha_lambda = d.alpha_lambda.value_or(effective_lambda_tcc(cfg.layer_stack()));
    }
    m.validate();
    return out;
}

} // namespace qtcsim
