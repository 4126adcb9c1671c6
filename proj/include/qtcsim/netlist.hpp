#pragma once

// SPICE behavioral subcircuit emission for the electro-thermal device model.
//
// Thermal quantities ride on electrical nodes: V(thk) is the temperature
// rise of ladder node k in kelvin, currents into thermal nodes are heat
// flows in watts. Temperature-dependent elements become behavioral
// expressions (B-source / expression-resistor style); a fully linear model
// emits plain R/C elements plus the one inherently quadratic power source.

#include <cstdio>
#include <string>
#include <vector>

#include "qtcsim/circuit.hpp"
#include "qtcsim/errors.hpp"

namespace qtcsim {

struct NetlistDocument {
    std::vector<std::string> header;   // comment block
    std::string subcircuit_name;
    std::vector<std::string> nodes;    // external terminals
    std::vector<std::string> elements; // element lines
    std::string end_line;

    std::string to_string() const {
        std::string out;
        for (const std::string& h : header) out += h + "\n";
        std::string decl = ".subckt " + subcircuit_name;
        for (const std::string& n : nodes) decl += " " + n;
        out += decl + "\n";
        for (const std::string& e : elements) out += e + "\n";
        out += end_line + "\n";
        return out;
    }
};

namespace detail {

// 6 significant digits, scientific.
inline std::string num6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

// Temperature argument used by every coefficient: ambient offset + V(th1).
inline std::string theta_expr(const DeviceModel& model) {
    if (model.ambient_offset != 0.0)
        return "(" + num6(model.ambient_offset) + "+V(th1))";
    return "V(th1)";
}

} // namespace detail

inline NetlistDocument emit_subcircuit(const DeviceModel& model, const std::string& name) {
    model.validate();
    using detail::num6;
    const std::string theta = detail::theta_expr(model);

    NetlistDocument doc;
    doc.subcircuit_name = name;
    doc.nodes = {"in+", "in-", "out+", "out-"};
    doc.header = {
        "* " + name + " - electro-thermal behavioral model of a Seebeck QTC element",
        "* generated by qtcsim",
        "* thermal analogy: V(thK) = temperature rise in kelvin, 1 A = 1 W heat flow;",
        "* ladder resistances are K/W, ladder capacitances are J/K",
        "* reference temperature T0 = " + num6(model.t0_celsius) + " degC",
    };
    doc.end_line = ".ends " + name;

    auto& el = doc.elements;
    const std::string rh0 = num6(model.r_heater0);

    // heater resistance as seen by the drive
    el.push_back("* heater");
    std::string rh_expr = rh0;
    if (model.alpha_r != 0.0)
        rh_expr = rh0 + "*(1+" + num6(model.alpha_r) + "*" + theta + ")";
    if (model.alpha_r != 0.0)
        el.push_back("RH in+ in- R='" + rh_expr + "'");
    else
        el.push_back("RH in+ in- " + rh0);

    // heat flow U_in^2 / R_H into the driven thermal node
    el.push_back("* heater power injected as heat flow into th1");
    el.push_back("BP 0 th1 I=V(in+,in-)*V(in+,in-)/(" + rh_expr + ")");

    // Cauer ladder
    el.push_back("* Cauer thermal ladder");
    const std::size_t n = model.ladder.stages.size();
    for (std::size_t k = 0; k < n; ++k) {
        const CauerStage& st = model.ladder.stages[k];
        const std::string node = "th" + std::to_string(k + 1);
        const std::string next = (k + 1 < n) ? "th" + std::to_string(k + 2) : "0";
        el.push_back("CC" + std::to_string(k + 1) + " " + node + " 0 " +
                     num6(st.shunt_capacitance));
        std::string rline = "RC" + std::to_string(k + 1) + " " + node + " " + next + " ";
        if (model.alpha_lambda != 0.0)
            rline += "R='" + num6(st.series_resistance) + "/(1-" +
                     num6(model.alpha_lambda) + "*" + theta + ")'";
        else
            rline += num6(st.series_resistance);
        el.push_back(rline);
    }

    // Seebeck output stage; with a series resistance the source is emitted
    // in Norton form so no internal electrical node is needed
    el.push_back("* thermopile output");
    std::string us = num6(static_cast<double>(model.n_couples)) + "*" +
                     num6(model.seebeck0) + "*V(th1)";
    if (model.alpha_s != 0.0)
        us += "*(1-" + num6(model.alpha_s) + "*" + theta + ")";
    if (model.coupling != 0.0)
        us += "+" + num6(model.coupling) + "*V(in+,in-)";
    if (model.r_thermopile > 0.0) {
        el.push_back("RS out+ out- " + num6(model.r_thermopile));
        el.push_back("BS out- out+ I=(" + us + ")/" + num6(model.r_thermopile));
    } else {
        el.push_back("BS out+ out- V=" + us);
    }

    return doc;
}

} // namespace qtcsim
