#pragma once

// Electro-thermal equivalent circuit of the QTC element.
//
// The heater dissipates U_in^2/R_H into the driven node of a Cauer thermal
// ladder; node voltages stand for temperature rises above the substrate.
// The thermopile converts the hot-point rise U_H into an output voltage
// N*S0*U_H, with optional temperature coefficients on the heater resistance
// (alpha_r), the ladder resistances (alpha_lambda) and the Seebeck
// coefficient (alpha_s), plus a parasitic input-to-output coupling kappa.
// All temperature-dependent terms use theta = ambient_offset + U_H as the
// temperature argument, so externally heated operation is representable.

#include <cmath>
#include <string>
#include <vector>

#include "qtcsim/cauer.hpp"
#include "qtcsim/errors.hpp"
#include "qtcsim/waveform.hpp"

namespace qtcsim {

struct DeviceModel {
    double r_heater0 = 0.0;     // Ohm, R_H0 at T_0
    double alpha_r = 0.0;       // 1/K
    int n_couples = 1;          // serially connected thermocouples
    double seebeck0 = 0.0;      // V/K per couple, S0 at T_0
    double alpha_s = 0.0;       // 1/K
    double alpha_lambda = 0.0;  // 1/K, effective conductivity coefficient
    double coupling = 0.0;      // V/V, parasitic input feed-through
    CauerLadder ladder;         // thermal Cauer ladder, K/W and J/K
    double t0_celsius = 25.0;   // reference temperature
    double ambient_offset = 0.0; // K, T_amb - T_0
    double r_thermopile = 0.0;  // Ohm, output series resistance (informational)

    void validate() const {
        if (!(r_heater0 > 0.0)) throw invalid_input("device: r_heater0 must be > 0");
        if (n_couples < 1) throw invalid_input("device: n_couples must be >= 1");
        if (!(seebeck0 > 0.0)) throw invalid_input("device: seebeck0 must be > 0");
        if (ladder.stages.empty()) throw invalid_input("device: ladder must have >= 1 stage");
        for (const CauerStage& st : ladder.stages)
            if (!(st.shunt_capacitance > 0.0) || !(st.series_resistance > 0.0))
                throw invalid_input("device: ladder elements must be > 0");
    }
};

// Per-node temperature rises; node 0 is the driven (hot-point) node U_H.
struct ThermalState {
    std::vector<double> node_temps;
};

struct DriveSpec {
    enum class Kind { dc, sine };
    Kind kind = Kind::dc;
    double amplitude = 0.0; // V
    double frequency = 0.0; // Hz, sine only
    double offset = 0.0;    // V

    void validate() const {
        if (kind == Kind::sine && !(frequency > 0.0))
            throw invalid_input("drive: sine frequency must be > 0");
    }

    double value(double t) const {
        if (kind == Kind::dc) return offset + amplitude;
        return offset + amplitude * std::sin(6.283185307179586476925287 * frequency * t);
    }
};

// R_H = R_H0 * (1 + alpha_R * theta), theta = ambient_offset + u_h.
inline double heater_resistance(const DeviceModel& model, double u_h) {
    const double r = model.r_heater0 * (1.0 + model.alpha_r * (model.ambient_offset + u_h));
    if (!(r > 0.0))
        throw model_range_error("heater_resistance: R_H <= 0 at u_h = " + std::to_string(u_h));
    return r;
}

// P = U_in^2 / R_H.
inline double input_power(const DeviceModel& model, double u_in, double u_h) {
    return u_in * u_in / heater_resistance(model, u_h);
}

// U_out = N * S0 * U_H * (1 - alpha_S * theta) + kappa * U_in.
inline double output_voltage(const DeviceModel& model, double u_h, double u_in) {
    const double theta = model.ambient_offset + u_h;
    return model.n_couples * model.seebeck0 * u_h * (1.0 - model.alpha_s * theta) +
           model.coupling * u_in;
}

namespace detail {

// 1/(1 - alpha_lambda*theta) multiplies every ladder resistance; the factor
// must stay positive over the simulated range.
inline double lambda_scale(const DeviceModel& model, double u_h) {
    const double denom = 1.0 - model.alpha_lambda * (model.ambient_offset + u_h);
    if (!(denom > 0.0))
        throw model_range_error("1 - alpha_lambda*theta <= 0 at u_h = " + std::to_string(u_h));
    return denom;
}

// Node derivatives for the ladder ODE at injected power p.
inline void node_derivatives(const DeviceModel& model, const std::vector<double>& u,
                             double p, std::vector<double>& du) {
    const std::size_t n = u.size();
    const double denom = lambda_scale(model, u[0]); // flow = dT * denom / R
    double inflow = p;
    for (std::size_t k = 0; k < n; ++k) {
        const double u_next = (k + 1 < n) ? u[k + 1] : 0.0;
        const double outflow =
            (u[k] - u_next) * denom / model.ladder.stages[k].series_resistance;
        du[k] = (inflow - outflow) / model.ladder.stages[k].shunt_capacitance;
        inflow = outflow;
    }
}

struct RkWorkspace {
    std::vector<double> k1, k2, k3, k4, tmp;
    explicit RkWorkspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
};

template <class PowerFn>
inline void rk4_step(const DeviceModel& model, std::vector<double>& u, double t, double dt,
                     PowerFn&& power, RkWorkspace& ws) {
    const std::size_t n = u.size();
    node_derivatives(model, u, power(t, u[0]), ws.k1);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = u[i] + 0.5 * dt * ws.k1[i];
    node_derivatives(model, ws.tmp, power(t + 0.5 * dt, ws.tmp[0]), ws.k2);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = u[i] + 0.5 * dt * ws.k2[i];
    node_derivatives(model, ws.tmp, power(t + 0.5 * dt, ws.tmp[0]), ws.k3);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = u[i] + dt * ws.k3[i];
    node_derivatives(model, ws.tmp, power(t + dt, ws.tmp[0]), ws.k4);
    for (std::size_t i = 0; i < n; ++i)
        u[i] += dt / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

inline void check_step_size(const DeviceModel& model, double dt) {
    if (!(dt > 0.0)) throw invalid_input("transient: dt must be > 0");
    const double t_min = model.ladder.min_time_constant();
    if (dt > t_min / 20.0)
        throw invalid_input("transient: dt must be <= t_min/20 = " +
                            std::to_string(t_min / 20.0) + " s");
}

template <class PowerFn>
inline Waveform integrate_hot_node(const DeviceModel& model, double dt, double duration,
                                   PowerFn&& power, Waveform* u_out_wf,
                                   const DriveSpec* drive) {
    model.validate();
    check_step_size(model, dt);
    const std::size_t steps = static_cast<std::size_t>(std::llround(duration / dt));
    std::vector<double> u(model.ladder.stages.size(), 0.0);
    RkWorkspace ws(u.size());
    Waveform hot{dt, {}};
    hot.samples.reserve(steps + 1);
    hot.samples.push_back(0.0);
    if (u_out_wf) {
        u_out_wf->dt = dt;
        u_out_wf->samples.reserve(steps + 1);
        u_out_wf->samples.push_back(output_voltage(model, 0.0, drive ? drive->value(0.0) : 0.0));
    }
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        rk4_step(model, u, t, dt, power, ws);
        if (!std::isfinite(u[0]))
            throw divergence_error("transient: state became non-finite at t = " +
                                   std::to_string(t + dt));
        hot.samples.push_back(u[0]);
        if (u_out_wf) {
            const double uin = drive ? drive->value(t + dt) : 0.0;
            u_out_wf->samples.push_back(output_voltage(model, u[0], uin));
        }
    }
    return hot;
}

} // namespace detail

struct OperatingPoint {
    double u_h = 0.0;  // K
    double u_out = 0.0; // V
};

// Damped fixed-point solve of u_h = P(u_in, u_h) * sum(R_C) / (1 - alpha_lambda*theta).
inline OperatingPoint dc_operating_point(const DeviceModel& model, double u_in) {
    model.validate();
    const double sum_r = model.ladder.dc_resistance();
    double u = 0.0;
    constexpr double damping = 0.5;
    constexpr double tol = 1e-12; // K
    constexpr int max_iter = 200;
    for (int it = 0; it < max_iter; ++it) {
        const double target =
            input_power(model, u_in, u) * sum_r / detail::lambda_scale(model, u);
        const double next = (1.0 - damping) * u + damping * target;
        if (std::abs(next - u) < tol)
            return {next, output_voltage(model, next, u_in)};
        u = next;
    }
    throw convergence_error("dc_operating_point: no convergence after 200 iterations");
}

struct TransientResult {
    Waveform u_h;   // K
    Waveform u_out; // V
};

// Fixed-step RK4 integration of the ladder node ODEs from a zero initial
// state; every step is sampled.
inline TransientResult transient(const DeviceModel& model, const DriveSpec& drive,
                                 double dt, double duration) {
    drive.validate();
    TransientResult res;
    auto power = [&model, &drive](double t, double u_h) {
        return input_power(model, drive.value(t), u_h);
    };
    res.u_h = detail::integrate_hot_node(model, dt, duration, power, &res.u_out, &drive);
    return res;
}

// Constant power injected directly into the driven node, bypassing the heater.
inline Waveform step_response(const DeviceModel& model, double power, double dt,
                              double duration) {
    auto p = [power](double, double) { return power; };
    return detail::integrate_hot_node(model, dt, duration, p, nullptr, nullptr);
}

} // namespace qtcsim
