// qtcsim - batch CLI for the electro-thermal QTC device model.
//
// Reads an INI-style project config, runs one of the analysis commands and
// writes CSV (or a SPICE netlist) to stdout or --out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtcsim/analysis.hpp"
#include "qtcsim/cauer.hpp"
#include "qtcsim/circuit.hpp"
#include "qtcsim/config.hpp"
#include "qtcsim/layer_stack.hpp"
#include "qtcsim/netlist.hpp"
#include "qtcsim/rc_line.hpp"

namespace {

using namespace qtcsim;

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw config_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<double> linspace(double from, double to, int steps) {
    if (steps < 1) throw invalid_input("steps must be >= 1");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        v.push_back(from);
        return v;
    }
    for (int i = 0; i < steps; ++i)
        v.push_back(from + (to - from) * static_cast<double>(i) / (steps - 1));
    return v;
}

const SimConfig& require_sim(const ProjectConfig& cfg) {
    if (!cfg.sim) throw config_error("config: this command needs a [sim] section");
    return *cfg.sim;
}

DriveSpec drive_from_sim(const SimConfig& sim) {
    DriveSpec d;
    d.kind = sim.drive;
    d.amplitude = sim.amplitude_v;
    d.frequency = sim.frequency_hz;
    d.offset = sim.offset_v;
    return d;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtcsim - compact thermal model generator and electro-thermal "
                 "simulator for Seebeck QTC elements"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    app.add_option("-c,--config", config_path, "project config file (INI)")
        ->required();
    app.add_option("-o,--out", out_path, "write output to a file instead of stdout");

    auto* cmd_params =
        app.add_subcommand("params", "print R_th, C_th and alpha_lambda of the layer stack");

    int poles_n = 2;
    auto* cmd_poles = app.add_subcommand("poles", "pole magnitudes and time constants");
    cmd_poles->add_option("--n", poles_n, "number of poles")->check(CLI::PositiveNumber);

    int foster_n = 2;
    auto* cmd_foster = app.add_subcommand("foster", "truncated Foster network stages");
    cmd_foster->add_option("--n", foster_n, "number of stages")->check(CLI::PositiveNumber);

    auto* cmd_cauer = app.add_subcommand("cauer", "Cauer ladder of the device thermal network");

    double sw_from = 0.0, sw_to = 0.6;
    int sw_steps = 7;
    auto* cmd_dc = app.add_subcommand("dc-sweep", "DC transfer characteristic");
    cmd_dc->add_option("--from", sw_from, "start input voltage (V)");
    cmd_dc->add_option("--to", sw_to, "end input voltage (V)");
    cmd_dc->add_option("--steps", sw_steps, "number of points")->check(CLI::PositiveNumber);

    auto* cmd_tr = app.add_subcommand("transient", "time-domain simulation per [sim]");

    std::string harm_csv;
    auto* cmd_spec =
        app.add_subcommand("spectrum", "windowed output spectrum and harmonic report");
    cmd_spec->add_option("--harmonics", harm_csv,
                         "comma-separated harmonic indices (default from config)");

    double ts_from = -20.0, ts_to = 60.0, ts_u_in = 0.1;
    int ts_steps = 9;
    auto* cmd_ts =
        app.add_subcommand("temp-sweep", "conversion constant vs ambient temperature offset");
    cmd_ts->add_option("--from", ts_from, "start ambient offset (K)");
    cmd_ts->add_option("--to", ts_to, "end ambient offset (K)");
    cmd_ts->add_option("--steps", ts_steps, "number of points")->check(CLI::PositiveNumber);
    cmd_ts->add_option("--u-in", ts_u_in, "probe input voltage (V)");

    std::string netlist_name = "qtc_element";
    auto* cmd_net = app.add_subcommand("emit-netlist", "SPICE behavioral subcircuit");
    cmd_net->add_option("--name", netlist_name, "subcircuit name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ProjectConfig cfg = load_config(config_path);
        Output output(out_path);
        std::ostream& os = output.stream();

        if (*cmd_params) {
            const LayerStack stack = cfg.layer_stack();
            os << "r_th_k_per_w,c_th_j_per_k,alpha_lambda_per_k,eff_conductivity_w_mk\n";
            os << fmt9(thermal_resistance(stack)) << "," << fmt9(thermal_capacitance(stack))
               << "," << fmt9(effective_lambda_tcc(stack)) << ","
               << fmt9(effective_conductivity(stack)) << "\n";
        } else if (*cmd_poles) {
            const DistributedLine line = cfg.line();
            os << "n,pole_per_s,time_constant_s\n";
            for (int n = 1; n <= poles_n; ++n) {
                const PoleResult p = pole(line, n);
                os << n << "," << fmt9(p.magnitude) << "," << fmt9(p.time_constant) << "\n";
            }
        } else if (*cmd_foster) {
            const DistributedLine line = cfg.line();
            os << "n,resistance_k_per_w,time_constant_s,capacitance_j_per_k\n";
            const FosterNetwork net = foster_network(line, foster_n);
            for (std::size_t i = 0; i < net.stages.size(); ++i) {
                const FosterStage& st = net.stages[i];
                os << (i + 1) << "," << fmt9(st.resistance) << "," << fmt9(st.time_constant)
                   << "," << fmt9(st.capacitance) << "\n";
            }
        } else if (*cmd_cauer) {
            const BuiltModel built = build_model(cfg);
            emit_warnings(built.warnings);
            os << "stage,shunt_capacitance_j_per_k,series_resistance_k_per_w\n";
            for (std::size_t i = 0; i < built.model.ladder.stages.size(); ++i) {
                const CauerStage& st = built.model.ladder.stages[i];
                os << (i + 1) << "," << fmt9(st.shunt_capacitance) << ","
                   << fmt9(st.series_resistance) << "\n";
            }
        } else if (*cmd_dc) {
            const BuiltModel built = build_model(cfg);
            emit_warnings(built.warnings);
            os << "u_in_v,u_h_k,u_out_v\n";
            for (const DcSweepPoint& p :
                 dc_sweep(built.model, linspace(sw_from, sw_to, sw_steps)))
                os << fmt9(p.u_in) << "," << fmt9(p.u_h) << "," << fmt9(p.u_out) << "\n";
        } else if (*cmd_tr) {
            const BuiltModel built = build_model(cfg);
            emit_warnings(built.warnings);
            const SimConfig& sim = require_sim(cfg);
            const DriveSpec drive = drive_from_sim(sim);
            const TransientResult tr =
                transient(built.model, drive, sim.dt_s, sim.duration_s);
            os << "t_s,u_in_v,u_h_k,u_out_v\n";
            for (std::size_t i = 0; i < tr.u_h.samples.size(); ++i) {
                const double t = static_cast<double>(i) * tr.u_h.dt;
                os << fmt9(t) << "," << fmt9(drive.value(t)) << ","
                   << fmt9(tr.u_h.samples[i]) << "," << fmt9(tr.u_out.samples[i]) << "\n";
            }
        } else if (*cmd_spec) {
            const BuiltModel built = build_model(cfg);
            emit_warnings(built.warnings);
            const SimConfig& sim = require_sim(cfg);
            if (sim.drive != DriveSpec::Kind::sine)
                throw config_error("spectrum: [sim] drive must be sine");
            std::vector<int> harmonics = sim.harmonics;
            if (!harm_csv.empty()) {
                harmonics.clear();
                std::stringstream ss(harm_csv);
                std::string item;
                while (std::getline(ss, item, ',')) harmonics.push_back(std::stoi(item));
            }
            const SpectrumPlan plan =
                plan_spectrum_run(built.model, sim.frequency_hz, sim.duration_s);
            const SpectrumRun run = run_output_spectrum(built.model, drive_from_sim(sim),
                                                        plan, sim.window);
            const HarmonicReport rep =
                harmonic_report(run.output_spectrum, sim.frequency_hz, harmonics);
            os << "harmonic,frequency_hz,level_db\n";
            for (const HarmonicRow& r : rep.rows)
                os << r.harmonic << "," << fmt9(r.frequency) << "," << fmt9(r.level_db)
                   << "\n";
        } else if (*cmd_ts) {
            const BuiltModel built = build_model(cfg);
            emit_warnings(built.warnings);
            os << "ambient_offset_k,conversion_constant_per_v\n";
            for (const TemperaturePoint& p : temperature_sweep(
                     built.model, linspace(ts_from, ts_to, ts_steps), ts_u_in))
                os << fmt9(p.offset) << "," << fmt9(p.k) << "\n";
        } else if (*cmd_net) {
            const BuiltModel built = build_model(cfg);
            emit_warnings(built.warnings);
            os << emit_subcircuit(built.model, netlist_name).to_string();
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
