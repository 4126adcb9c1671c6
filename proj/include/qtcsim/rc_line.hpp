#pragma once

// Distributed thermal RC line and its truncated Foster equivalent.
//
// The cantilever is a uniform RC transmission line with total resistance
// R_th and capacitance C_th, observed at a point x along its length:
//
//   Z(s) = R_th / u * sinh(u * x/L) / cosh(u),   u = sqrt(s * R_th * C_th)
//
// The expression is even in u, so the principal square root is safe. Its
// poles are at s = -p_n with p_n = (pi^2/4)(2n-1)^2 / (R_th C_th); the
// Foster stage magnitudes follow from the residues.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qtcsim/errors.hpp"

namespace qtcsim {

struct DistributedLine {
    double r_total = 0.0;  // K/W
    double c_total = 0.0;  // J/K
    double x_over_l = 1.0; // observation point, (0, 1]

    void validate() const {
        if (!(r_total > 0.0)) throw invalid_input("distributed line: r_total must be > 0");
        if (!(c_total > 0.0)) throw invalid_input("distributed line: c_total must be > 0");
        if (!(x_over_l > 0.0 && x_over_l <= 1.0))
            throw invalid_input("distributed line: x_over_l must be in (0, 1]");
    }
};

struct FosterStage {
    double resistance = 0.0;    // K/W, may be negative for higher stages
    double time_constant = 0.0; // s
    double capacitance = 0.0;   // J/K, = time_constant / resistance
};

struct FosterNetwork {
    std::vector<FosterStage> stages; // stage n at index n-1
};

// Z(s) of the line; analytic limit R_th * x/L at s = 0. Small |u| uses a
// series to avoid 0/0.
inline std::complex<double> impedance(const DistributedLine& line, std::complex<double> s) {
    line.validate();
    const double a = line.x_over_l;
    const std::complex<double> u2 = s * (line.r_total * line.c_total);
    if (std::abs(u2) < 1e-8) {
        // sinh(ua)/(u cosh u) = a * (1 + u^2 (a^2/6 - 1/2) + O(u^4))
        return line.r_total * a * (1.0 + u2 * (a * a / 6.0 - 0.5));
    }
    const std::complex<double> u = std::sqrt(u2);
    return line.r_total / u * std::sinh(u * a) / std::cosh(u);
}

struct PoleResult {
    double magnitude = 0.0;     // 1/s, the pole itself is -magnitude
    double time_constant = 0.0; // s
};

// n-th pole magnitude and time constant; independent of x/L.
inline PoleResult pole(const DistributedLine& line, int n) {
    line.validate();
    if (n < 1) throw invalid_input("pole: n must be >= 1");
    const double k = 2.0 * n - 1.0;
    const double p = std::numbers::pi * std::numbers::pi / 4.0 * k * k /
                     (line.r_total * line.c_total);
    return {p, 1.0 / p};
}

// Foster magnitude R_Fn = R_th * 8(-1)^{n+1} / (pi^2 (2n-1)^2) * sin(pi/2 (2n-1) x/L).
inline FosterStage foster_stage(const DistributedLine& line, int n) {
    line.validate();
    if (n < 1) throw invalid_input("foster_stage: n must be >= 1");
    const double k = 2.0 * n - 1.0;
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    const double r = line.r_total * 8.0 * sign /
                     (std::numbers::pi * std::numbers::pi * k * k) *
                     std::sin(std::numbers::pi / 2.0 * k * line.x_over_l);
    const double t = pole(line, n).time_constant;
    return {r, t, t / r};
}

inline FosterNetwork foster_network(const DistributedLine& line, int n_stages) {
    if (n_stages < 1) throw invalid_input("foster_network: n_stages must be >= 1");
    FosterNetwork net;
    net.stages.reserve(static_cast<std::size_t>(n_stages));
    for (int n = 1; n <= n_stages; ++n) net.stages.push_back(foster_stage(line, n));
    return net;
}

// Sum_n R_Fn / (1 + s*t_n).
inline std::complex<double> foster_impedance(const FosterNetwork& net, std::complex<double> s) {
    std::complex<double> z = 0.0;
    for (const FosterStage& st : net.stages) {
        const std::complex<double> den = 1.0 + s * st.time_constant;
        if (std::abs(den) == 0.0)
            throw pole_evaluation_error("foster_impedance: evaluation at a network pole");
        z += st.resistance / den;
    }
    return z;
}

} // namespace qtcsim
