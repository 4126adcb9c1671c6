#pragma once

// Spectral and characteristic extraction: windowed spectra, the per-harmonic
// dB report, the conversion constant fit and the temperature coefficient
// helpers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qtcsim/circuit.hpp"
#include "qtcsim/errors.hpp"
#include "qtcsim/waveform.hpp"

namespace qtcsim {

enum class WindowKind { rect, hamming, hann, bartlett };

inline const char* window_name(WindowKind k) {
    switch (k) {
        case WindowKind::rect: return "rect";
        case WindowKind::hamming: return "hamming";
        case WindowKind::hann: return "hann";
        case WindowKind::bartlett: return "bartlett";
    }
    return "?";
}

inline double window_value(WindowKind kind, std::size_t n, std::size_t length) {
    const double x = static_cast<double>(n) / static_cast<double>(length - 1);
    switch (kind) {
        case WindowKind::rect: return 1.0;
        case WindowKind::hamming: return 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * x);
        case WindowKind::hann: return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * x));
        case WindowKind::bartlett: return 1.0 - std::abs(2.0 * x - 1.0);
    }
    return 1.0;
}

inline Waveform apply_window(const Waveform& w, WindowKind kind) {
    w.validate();
    Waveform out{w.dt, w.samples};
    for (std::size_t n = 0; n < out.samples.size(); ++n)
        out.samples[n] *= window_value(kind, n, out.samples.size());
    return out;
}

namespace detail {

// Direct-definition DFT, O(N^2); the reference everything else must match.
inline std::vector<std::complex<double>> dft_direct(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double phi = -2.0 * std::numbers::pi * static_cast<double>(k) *
                               static_cast<double>(j) / static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(phi), std::sin(phi));
        }
        out[k] = acc;
    }
    return out;
}

// Iterative radix-2 FFT for power-of-two lengths.
inline void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n >= 2 && (n & (n - 1)) == 0) {
        std::vector<std::complex<double>> a(x.begin(), x.end());
        fft_radix2(a);
        return a;
    }
    return dft_direct(x);
}

} // namespace detail

// One-sided amplitude spectrum: bin 0 carries the mean of the windowed
// signal, interior bins the tone amplitude (2|X_k|/N).
struct Spectrum {
    double df = 0.0; // Hz
    std::vector<double> magnitudes;
    WindowKind window_kind = WindowKind::rect;

    double nyquist() const {
        return df * static_cast<double>(magnitudes.size() - 1);
    }
};

inline Spectrum spectrum(const Waveform& w, WindowKind kind) {
    w.validate();
    const std::size_t n = w.samples.size();
    if (n < 8) throw invalid_input("spectrum: need at least 8 samples");
    const Waveform windowed = apply_window(w, kind);
    const auto bins = detail::dft(windowed.samples);
    Spectrum s;
    s.df = 1.0 / (static_cast<double>(n) * w.dt);
    s.window_kind = kind;
    s.magnitudes.resize(n / 2 + 1);
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
        const double scale = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
        s.magnitudes[k] = scale * std::abs(bins[k]) / static_cast<double>(n);
    }
    return s;
}

struct HarmonicRow {
    int harmonic = 0;      // 0 = DC
    double frequency = 0.0; // Hz
    double level_db = 0.0;  // dB relative to the DC bin
};

struct HarmonicReport {
    std::vector<HarmonicRow> rows;
};

// Per-harmonic levels relative to the DC bin. Harmonic frequencies must sit
// on bin centres (within half a bin) and below Nyquist.
inline HarmonicReport harmonic_report(const Spectrum& spec, double f1,
                                      const std::vector<int>& harmonics) {
    if (!(f1 > 0.0)) throw invalid_input("harmonic_report: f1 must be > 0");
    const double dc = spec.magnitudes.at(0);
    if (!(dc > 0.0))
        throw invalid_input("harmonic_report: zero DC bin, no reference level");
    HarmonicReport rep;
    rep.rows.push_back({0, 0.0, 0.0});
    for (int k : harmonics) {
        if (k < 1) throw invalid_input("harmonic_report: harmonic index must be >= 1");
        const double f = k * f1;
        if (f > spec.nyquist() + 0.5 * spec.df)
            throw invalid_input("harmonic_report: harmonic " + std::to_string(k) +
                                " beyond Nyquist");
        const double pos = f / spec.df;
        const long bin = std::lround(pos);
        if (std::abs(pos - static_cast<double>(bin)) > 0.5 - 1e-9 ||
            bin >= static_cast<long>(spec.magnitudes.size()))
            throw alignment_error("harmonic_report: harmonic " + std::to_string(k) +
                                  " not aligned to a spectrum bin");
        const double mag = spec.magnitudes[static_cast<std::size_t>(bin)];
        const double floor_mag = 1e-300;
        rep.rows.push_back({k, f, 20.0 * std::log10(std::max(mag, floor_mag) / dc)});
    }
    return rep;
}

struct ConversionFit {
    double k = 0.0;        // 1/V
    double exponent = 0.0;
    bool quadratic = false; // exponent within 0.01 of 2
};

// Log-log least-squares fit of u_out = K * u_in^e; when the exponent is 2
// within tolerance, K is the mean of u_out/u_in^2.
inline ConversionFit fit_conversion_constant(
    const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3)
        throw invalid_input("fit_conversion_constant: need at least 3 pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [u_in, u_out] : pairs) {
        if (!(u_in > 0.0) || !(u_out > 0.0))
            throw invalid_input("fit_conversion_constant: inputs and outputs must be > 0");
        const double x = std::log(u_in), y = std::log(u_out);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(pairs.size());
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30 * n * sxx + 1e-300)
        throw invalid_input("fit_conversion_constant: u_in values must be distinct");
    ConversionFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    fit.quadratic = std::abs(fit.exponent - 2.0) <= 0.01;
    if (fit.quadratic) {
        double acc = 0.0;
        for (const auto& [u_in, u_out] : pairs) acc += u_out / (u_in * u_in);
        fit.k = acc / n;
    } else {
        fit.k = std::exp((sy - fit.exponent * sx) / n);
    }
    return fit;
}

struct DcSweepPoint {
    double u_in = 0.0;
    double u_h = 0.0;
    double u_out = 0.0;
};

inline std::vector<DcSweepPoint> dc_sweep(const DeviceModel& model,
                                          const std::vector<double>& u_values) {
    std::vector<DcSweepPoint> out;
    out.reserve(u_values.size());
    for (double u : u_values) {
        const OperatingPoint op = dc_operating_point(model, u);
        out.push_back({u, op.u_h, op.u_out});
    }
    return out;
}

// alpha_R from a two-point resistance measurement, (r_high/r_low - 1)/(t_high - t_low).
inline double heater_tcc_two_point(double r_low, double t_low, double r_high, double t_high) {
    if (t_high == t_low)
        throw invalid_input("heater_tcc_two_point: temperatures must differ");
    if (!(r_low > 0.0)) throw invalid_input("heater_tcc_two_point: r_low must be > 0");
    return (r_high / r_low - 1.0) / (t_high - t_low);
}

// alpha_S from the coefficient balance alpha_K = alpha_lambda - alpha_R - alpha_S.
inline double seebeck_tcc_from_balance(double alpha_k, double alpha_lambda, double alpha_r) {
    return alpha_lambda - alpha_r - alpha_k;
}

struct TemperaturePoint {
    double offset = 0.0; // K above T_0
    double k = 0.0;      // 1/V
};

// K = u_out/u_in^2 at each ambient offset.
inline std::vector<TemperaturePoint> temperature_sweep(const DeviceModel& model,
                                                       const std::vector<double>& offsets,
                                                       double u_in) {
    if (u_in == 0.0) throw invalid_input("temperature_sweep: u_in must be nonzero");
    std::vector<TemperaturePoint> out;
    out.reserve(offsets.size());
    DeviceModel m = model;
    for (double off : offsets) {
        m.ambient_offset = off;
        const OperatingPoint op = dc_operating_point(m, u_in);
        out.push_back({off, op.u_out / (u_in * u_in)});
    }
    return out;
}

// Bin-aligned spectrum run plan: N a power of two, duration an integer
// number of drive periods, warm-up >= 10 * t1 rounded up to whole periods;
// dt respects the ladder step bound.
struct SpectrumPlan {
    double dt = 0.0;
    double warmup = 0.0;   // s, discarded before the analysis block
    double duration = 0.0; // s, analysis block = n_samples * dt
    std::size_t n_samples = 0;
    int periods = 0;
};

inline SpectrumPlan plan_spectrum_run(const DeviceModel& model, double f1,
                                      double requested_duration,
                                      std::size_t n_samples = 16384) {
    model.validate();
    if (!(f1 > 0.0)) throw invalid_input("plan_spectrum_run: f1 must be > 0");
    if (n_samples < 8 || (n_samples & (n_samples - 1)) != 0)
        throw invalid_input("plan_spectrum_run: n_samples must be a power of two >= 8");
    const double t_min = model.ladder.min_time_constant();
    const double m_max = f1 * static_cast<double>(n_samples) * t_min / 20.0;
    int m = static_cast<int>(std::lround(std::max(1.0, requested_duration * f1)));
    // power-of-two period count keeps periods aligned to whole steps
    int m2 = 1;
    while (2 * m2 <= m) m2 *= 2;
    while (m2 > m_max && m2 > 1) m2 /= 2;
    if (m2 > m_max)
        throw invalid_input("plan_spectrum_run: cannot satisfy the dt bound at this f1");
    SpectrumPlan plan;
    plan.periods = m2;
    plan.duration = static_cast<double>(m2) / f1;
    plan.n_samples = n_samples;
    plan.dt = plan.duration / static_cast<double>(n_samples);
    // R_total * C_total bounds the slowest time constant of the ladder
    double c_total = 0.0;
    for (const CauerStage& st : model.ladder.stages) c_total += st.shunt_capacitance;
    const double t1 = model.ladder.dc_resistance() * c_total;
    const int warm_periods = static_cast<int>(std::ceil(10.0 * t1 * f1));
    plan.warmup = static_cast<double>(warm_periods) / f1;
    return plan;
}

// Simulate per the plan, discard the warm-up and return the spectrum of the
// output-voltage block together with the hot-node block.
struct SpectrumRun {
    Spectrum output_spectrum;
    Waveform u_out_block;
    Waveform u_h_block;
};

inline SpectrumRun run_output_spectrum(const DeviceModel& model, const DriveSpec& drive,
                                       const SpectrumPlan& plan, WindowKind window) {
    if (drive.kind != DriveSpec::Kind::sine)
        throw invalid_input("run_output_spectrum: sine drive required");
    const double total = plan.warmup + plan.duration;
    const TransientResult tr = transient(model, drive, plan.dt, total);
    const std::size_t n = plan.n_samples;
    if (tr.u_out.samples.size() < n)
        throw invalid_input("run_output_spectrum: simulation shorter than the plan");
    SpectrumRun run;
    const std::size_t start = tr.u_out.samples.size() - n;
    run.u_out_block.dt = plan.dt;
    run.u_out_block.samples.assign(tr.u_out.samples.begin() + static_cast<long>(start),
                                   tr.u_out.samples.end());
    run.u_h_block.dt = plan.dt;
    run.u_h_block.samples.assign(tr.u_h.samples.begin() + static_cast<long>(start),
                                 tr.u_h.samples.end());
    run.output_spectrum = spectrum(run.u_out_block, window);
    return run;
}

} // namespace qtcsim
