#pragma once

// Effective 1D thermal parameters of a layered cantilever.
//
// The cantilever is treated as a stack of parallel layers carrying heat
// along its length. Thickness-weighted (area compensated) averaging gives
// the effective conductivity, total heat capacity and the effective
// temperature coefficient of the conductivity. All quantities in SI units
// (m, W, J, K).

#include <cmath>
#include <string>
#include <vector>

#include "qtcsim/errors.hpp"

namespace qtcsim {

struct Layer {
    std::string name;
    double thickness = 0.0;         // m
    double conductivity = 0.0;      // W/(m*K)
    double vol_heat_capacity = 0.0; // J/(K*m^3)
    double conductivity_tcc = 0.0;  // 1/K, relative coefficient of conductivity
};

struct LayerStack {
    std::vector<Layer> layers;
    double length = 0.0; // m
    double width = 0.0;  // m

    void validate() const {
        if (layers.empty())
            throw invalid_input("layer stack: empty layer list");
        for (const Layer& l : layers) {
            if (!(l.thickness > 0.0))
                throw invalid_input("layer '" + l.name + "': thickness must be > 0");
            if (!(l.conductivity > 0.0))
                throw invalid_input("layer '" + l.name + "': conductivity must be > 0");
            if (!(l.vol_heat_capacity > 0.0))
                throw invalid_input("layer '" + l.name + "': vol_heat_capacity must be > 0");
            if (!std::isfinite(l.conductivity_tcc))
                throw invalid_input("layer '" + l.name + "': conductivity_tcc must be finite");
        }
        if (!(length > 0.0))
            throw invalid_input("layer stack: length must be > 0");
        if (!(width > 0.0))
            throw invalid_input("layer stack: width must be > 0");
    }

    double total_thickness() const {
        double d = 0.0;
        for (const Layer& l : layers) d += l.thickness;
        return d;
    }

    // Cross-sectional area A = width * total stack thickness.
    double cross_section_area() const { return width * total_thickness(); }
};

// Thickness-weighted mean conductivity, sum(lambda_i*d_i)/sum(d_i).
inline double effective_conductivity(const LayerStack& stack) {
    stack.validate();
    double num = 0.0, den = 0.0;
    for (const Layer& l : stack.layers) {
        num += l.conductivity * l.thickness;
        den += l.thickness;
    }
    return num / den;
}

// R_th = L / (lambda_eff * A).
inline double thermal_resistance(const LayerStack& stack) {
    stack.validate();
    const double area = stack.cross_section_area();
    if (!(area > 0.0))
        throw invalid_input("layer stack: cross-sectional area must be > 0");
    return stack.length / (effective_conductivity(stack) * area);
}

// C_th = (sum C_i*d_i / sum d_i) * L * A = L * w * sum(C_i*d_i).
inline double thermal_capacitance(const LayerStack& stack) {
    stack.validate();
    double cd = 0.0;
    for (const Layer& l : stack.layers) cd += l.vol_heat_capacity * l.thickness;
    return stack.length * stack.width * cd;
}

// Thickness-weighted mean of the per-layer conductivity coefficients.
inline double effective_lambda_tcc(const LayerStack& stack) {
    stack.validate();
    double num = 0.0, den = 0.0;
    for (const Layer& l : stack.layers) {
        num += l.conductivity_tcc * l.thickness;
        den += l.thickness;
    }
    return num / den;
}

} // namespace qtcsim
