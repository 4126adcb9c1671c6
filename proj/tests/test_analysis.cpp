#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qtcsim/analysis.hpp"

using namespace qtcsim;

namespace {

Waveform tone(std::size_t n, double dt, double dc, double amp, double freq,
              double phase = 0.0) {
    Waveform w;
    w.dt = dt;
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        w.samples[i] =
            dc + amp * std::cos(2.0 * std::numbers::pi * freq * (i * dt) + phase);
    return w;
}

DeviceModel linear_model() {
    DeviceModel m;
    m.r_heater0 = 670.01;
    m.n_couples = 12;
    m.seebeck0 = 9.803e-5;
    m.ladder.stages = {{29.2e-9, 18310.0}, {44.6e-9, 32550.0}};
    m.r_thermopile = 21000.0;
    return m;
}

} // namespace

TEST_CASE("window samples match the defining formulas") {
    const std::size_t n = 64;
    // endpoints and midpoint
    CHECK(window_value(WindowKind::rect, 0, n) == 1.0);
    CHECK(window_value(WindowKind::rect, n - 1, n) == 1.0);
    CHECK(window_value(WindowKind::hamming, 0, n) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(window_value(WindowKind::hamming, n - 1, n) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(window_value(WindowKind::hann, 0, n) == doctest::Approx(0.0));
    CHECK(window_value(WindowKind::bartlett, 0, n) == doctest::Approx(0.0));
    CHECK(window_value(WindowKind::bartlett, n - 1, n) == doctest::Approx(0.0));

    // odd length puts the peak exactly at the centre sample
    const std::size_t odd = 65;
    CHECK(window_value(WindowKind::hann, 32, odd) == doctest::Approx(1.0));
    CHECK(window_value(WindowKind::hamming, 32, odd) == doctest::Approx(1.0));
    CHECK(window_value(WindowKind::bartlett, 32, odd) == doctest::Approx(1.0));

    // symmetry w[k] == w[N-1-k]
    for (WindowKind k : {WindowKind::hamming, WindowKind::hann, WindowKind::bartlett})
        for (std::size_t i = 0; i < n; ++i)
            CHECK(window_value(k, i, n) ==
                  doctest::Approx(window_value(k, n - 1 - i, n)).epsilon(1e-12));
}

TEST_CASE("apply_window with rect leaves the signal unchanged") {
    const Waveform w = tone(128, 1e-4, 1.0, 0.5, 200.0);
    const Waveform r = apply_window(w, WindowKind::rect);
    REQUIRE(r.samples.size() == w.samples.size());
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        CHECK(r.samples[i] == w.samples[i]);
}

TEST_CASE("radix-2 FFT agrees with the direct DFT") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(256);
    for (double& v : x) v = dist(rng);

    const auto a = detail::dft_direct(x);
    auto b = std::vector<std::complex<double>>(x.begin(), x.end());
    detail::fft_radix2(b);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(std::abs(a[k] - b[k]) < 1e-9);
}

TEST_CASE("Parseval's identity holds for the rect-window DFT") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(512);
    double time_energy = 0.0;
    for (double& v : x) {
        v = dist(rng);
        time_energy += v * v;
    }
    const auto bins = detail::dft(x);
    double freq_energy = 0.0;
    for (const auto& b : bins) freq_energy += std::norm(b);
    freq_energy /= static_cast<double>(x.size());
    CHECK(freq_energy == doctest::Approx(time_energy).epsilon(1e-9));
}

TEST_CASE("spectrum normalization: DC, tone amplitude, Nyquist") {
    const std::size_t n = 1024;
    const double dt = 1e-4;
    const double df = 1.0 / (n * dt);

    // single bin-aligned tone on a DC offset
    const Waveform w = tone(n, dt, 3.0, 0.75, 16.0 * df, 0.3);
    const Spectrum s = spectrum(w, WindowKind::rect);
    CHECK(s.df == doctest::Approx(df).epsilon(1e-12));
    CHECK(s.magnitudes.size() == n / 2 + 1);
    CHECK(s.magnitudes[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.magnitudes[16] == doctest::Approx(0.75).epsilon(1e-9));
    for (std::size_t k = 1; k < s.magnitudes.size(); ++k)
        if (k != 16) CHECK(s.magnitudes[k] < 1e-12);

    // Nyquist bin is single-sided too: x[i] = (-1)^i has magnitude 1
    Waveform nyq;
    nyq.dt = dt;
    nyq.samples.resize(64);
    for (std::size_t i = 0; i < 64; ++i) nyq.samples[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const Spectrum sn = spectrum(nyq, WindowKind::rect);
    CHECK(sn.magnitudes.back() == doctest::Approx(1.0).epsilon(1e-12));

    // non-power-of-two length takes the direct-DFT path
    const Waveform odd = tone(300, dt, 1.0, 0.5, 10.0 / (300.0 * dt));
    const Spectrum so = spectrum(odd, WindowKind::rect);
    CHECK(so.magnitudes[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(so.magnitudes[10] == doctest::Approx(0.5).epsilon(1e-9));

    Waveform tiny = tone(4, dt, 0.0, 1.0, df);
    CHECK_THROWS_AS(spectrum(tiny, WindowKind::rect), invalid_input);
}

TEST_CASE("two tones 20 dB apart come out 20 dB apart") {
    const std::size_t n = 2048;
    const double dt = 5e-5;
    const double df = 1.0 / (n * dt);
    Waveform w = tone(n, dt, 2.0, 1.0, 32.0 * df);
    const Waveform second = tone(n, dt, 0.0, 0.1, 96.0 * df, 1.1);
    for (std::size_t i = 0; i < n; ++i) w.samples[i] += second.samples[i];

    for (WindowKind kind :
         {WindowKind::rect, WindowKind::hamming, WindowKind::hann, WindowKind::bartlett}) {
        const Spectrum s = spectrum(w, kind);
        const double diff =
            20.0 * std::log10(s.magnitudes[32] / s.magnitudes[96]);
        // bin-aligned tones: every window preserves the ratio
        CHECK(diff == doctest::Approx(20.0).epsilon(1e-6));
    }
}

TEST_CASE("harmonic report levels, alignment and range checks") {
    const std::size_t n = 1024;
    const double dt = 1e-4;
    const double df = 1.0 / (n * dt);
    const double f1 = 8.0 * df;
    Waveform w = tone(n, dt, 1.0, 0.5, f1);
    const Waveform h2 = tone(n, dt, 0.0, 0.05, 2.0 * f1, 0.7);
    for (std::size_t i = 0; i < n; ++i) w.samples[i] += h2.samples[i];
    const Spectrum s = spectrum(w, WindowKind::rect);

    const HarmonicReport rep = harmonic_report(s, f1, {1, 2});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].harmonic == 0);
    CHECK(rep.rows[0].level_db == 0.0);
    CHECK(rep.rows[1].frequency == doctest::Approx(f1));
    CHECK(rep.rows[1].level_db == doctest::Approx(20.0 * std::log10(0.5)).epsilon(1e-6));
    CHECK(rep.rows[2].level_db == doctest::Approx(20.0 * std::log10(0.05)).epsilon(1e-6));

    // a fundamental landing between bins is an alignment error
    CHECK_THROWS_AS(harmonic_report(s, 1.5 * df, {1}), alignment_error);
    // harmonics beyond Nyquist are rejected
    CHECK_THROWS_AS(harmonic_report(s, f1, {1000}), invalid_input);
    CHECK_THROWS_AS(harmonic_report(s, -1.0, {1}), invalid_input);
    CHECK_THROWS_AS(harmonic_report(s, f1, {0}), invalid_input);

    // an empty DC bin leaves no reference level
    Spectrum zm = s;
    zm.magnitudes[0] = 0.0;
    CHECK_THROWS_AS(harmonic_report(zm, f1, {1}), invalid_input);
}

TEST_CASE("conversion-constant fit recovers K and the exponent") {
    // exact quadratic data
    std::vector<std::pair<double, double>> pairs;
    for (double u = 0.1; u <= 0.9; u += 0.1) pairs.push_back({u, 0.0893 * u * u});
    ConversionFit fit = fit_conversion_constant(pairs);
    CHECK(fit.quadratic);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.k == doctest::Approx(0.0893).epsilon(1e-9));

    pairs.clear();
    for (double u = 0.1; u <= 0.9; u += 0.1) pairs.push_back({u, 0.0857 * u * u});
    CHECK(fit_conversion_constant(pairs).k == doctest::Approx(0.0857).epsilon(1e-9));

    // cubic data is flagged non-quadratic and still fitted
    pairs.clear();
    for (double u = 0.1; u <= 0.9; u += 0.1) pairs.push_back({u, 0.05 * u * u * u});
    fit = fit_conversion_constant(pairs);
    CHECK_FALSE(fit.quadratic);
    CHECK(fit.exponent == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.k == doctest::Approx(0.05).epsilon(1e-9));

    CHECK_THROWS_AS(fit_conversion_constant({{0.1, 1e-3}, {0.2, 4e-3}}), invalid_input);
    CHECK_THROWS_AS(
        fit_conversion_constant({{0.1, 1e-3}, {0.2, -4e-3}, {0.3, 9e-3}}),
        invalid_input);
    CHECK_THROWS_AS(
        fit_conversion_constant({{0.2, 1e-3}, {0.2, 1e-3}, {0.2, 1e-3}}),
        invalid_input);
}

TEST_CASE("dc_sweep reproduces the operating points in order") {
    const DeviceModel m = linear_model();
    const std::vector<double> us = {0.1, 0.25, 0.4, 0.55, 0.7};
    const auto rows = dc_sweep(m, us);
    REQUIRE(rows.size() == us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
        const OperatingPoint op = dc_operating_point(m, us[i]);
        CHECK(rows[i].u_in == us[i]);
        CHECK(rows[i].u_h == doctest::Approx(op.u_h).epsilon(1e-12));
        CHECK(rows[i].u_out == doctest::Approx(op.u_out).epsilon(1e-12));
    }
    // the sweep is quadratic: fit confirms exponent 2
    std::vector<std::pair<double, double>> pairs;
    for (const auto& r : rows) pairs.push_back({r.u_in, r.u_out});
    CHECK(fit_conversion_constant(pairs).quadratic);
}

TEST_CASE("heater TCC from a two-point measurement") {
    // R(T) = 670.01 * (1 + 0.00105 * (T - T0))
    const double r20 = 670.01;
    const double r80 = 670.01 * (1.0 + 0.00105 * 60.0);
    const double a = heater_tcc_two_point(r20, 20.0, r80, 80.0);
    CHECK(std::abs(a - 0.00105) < 1e-5);
    CHECK_THROWS_AS(heater_tcc_two_point(r20, 50.0, r80, 50.0), invalid_input);
    CHECK_THROWS_AS(heater_tcc_two_point(0.0, 20.0, r80, 80.0), invalid_input);
}

TEST_CASE("Seebeck TCC from the coefficient balance") {
    CHECK(seebeck_tcc_from_balance(-0.00041, 0.00177, 0.00105) ==
          doctest::Approx(0.00113).epsilon(1e-9));
    // closure: plugging the result back reproduces alpha_K
    const double a_s = seebeck_tcc_from_balance(-0.00041, 0.00177, 0.00105);
    CHECK(0.00177 - 0.00105 - a_s == doctest::Approx(-0.00041).epsilon(1e-12));
}

TEST_CASE("temperature sweep of K") {
    DeviceModel m = linear_model();
    const std::vector<double> offsets = {0.0, 20.0, 40.0, 60.0, 80.0};

    // all coefficients zero: K does not depend on the ambient offset
    auto rows = temperature_sweep(m, offsets, 0.05);
    REQUIRE(rows.size() == offsets.size());
    for (const auto& r : rows)
        CHECK(r.k == doctest::Approx(rows[0].k).epsilon(1e-12));

    // full coefficient set: K decreases with temperature, and the relative
    // slope matches alpha_K = alpha_lambda - alpha_R - alpha_S
    m.alpha_r = 0.00105;
    m.alpha_s = 0.00113;
    m.alpha_lambda = 0.00177;
    rows = temperature_sweep(m, offsets, 0.05);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].k < rows[i - 1].k);
    const double slope =
        (rows.back().k - rows.front().k) / (offsets.back() - offsets.front()) /
        rows.front().k;
    CHECK(slope == doctest::Approx(-0.00041).epsilon(0.05));

    CHECK_THROWS_AS(temperature_sweep(m, offsets, 0.0), invalid_input);
}

TEST_CASE("spectrum run plan: alignment, warm-up, step bound") {
    const DeviceModel m = linear_model();
    const double f1 = 70.0;
    const SpectrumPlan plan = plan_spectrum_run(m, f1, 0.2);
    CHECK(plan.n_samples == 16384);
    // whole power-of-two period count, duration = periods / f1
    CHECK((plan.periods & (plan.periods - 1)) == 0);
    CHECK(plan.duration == doctest::Approx(plan.periods / f1).epsilon(1e-12));
    CHECK(plan.dt == doctest::Approx(plan.duration / 16384.0).epsilon(1e-12));
    // dt respects the ladder bound
    CHECK(plan.dt <= m.ladder.min_time_constant() / 20.0);
    // every harmonic of f1 is bin-aligned: f1 / df is an integer
    const double df = 1.0 / (plan.n_samples * plan.dt);
    CHECK(f1 / df == doctest::Approx(std::round(f1 / df)).epsilon(1e-12));
    // warm-up covers 10 * t1 in whole periods
    const double t1 = m.ladder.dc_resistance() * (29.2e-9 + 44.6e-9);
    CHECK(plan.warmup >= 10.0 * t1);
    CHECK(plan.warmup * f1 == doctest::Approx(std::round(plan.warmup * f1)).epsilon(1e-9));

    CHECK_THROWS_AS(plan_spectrum_run(m, -1.0, 0.2), invalid_input);
    CHECK_THROWS_AS(plan_spectrum_run(m, 70.0, 0.2, 1000), invalid_input);
}

TEST_CASE("linear device spectrum: DC and second harmonic only") {
    const DeviceModel m = linear_model();
    const double f1 = 70.0;
    const SpectrumPlan plan = plan_spectrum_run(m, f1, 0.2);
    const DriveSpec drive{DriveSpec::Kind::sine, 1.25, f1, 0.0};
    const SpectrumRun run = run_output_spectrum(m, drive, plan, WindowKind::rect);

    REQUIRE(run.u_out_block.samples.size() == plan.n_samples);
    const HarmonicReport rep =
        harmonic_report(run.output_spectrum, f1, {1, 2, 3, 4});
    // only the doubled line rises above the floor; odd harmonics stay deep down
    CHECK(rep.rows[2].level_db > -20.0); // 2nd
    CHECK(rep.rows[1].level_db < -60.0); // 1st
    CHECK(rep.rows[3].level_db < -60.0); // 3rd
    CHECK(rep.rows[4].level_db < -60.0); // 4th

    // 2nd-harmonic amplitude agrees with the analytic transfer path
    const double p_hat = 1.25 * 1.25 / (2.0 * m.r_heater0);
    const std::complex<double> z = cauer_impedance(
        m.ladder, {0.0, 2.0 * std::numbers::pi * 2.0 * f1});
    const double analytic = m.n_couples * m.seebeck0 * p_hat * std::abs(z);
    const std::size_t bin2 = static_cast<std::size_t>(
        std::lround(2.0 * f1 * plan.n_samples * plan.dt));
    CHECK(run.output_spectrum.magnitudes[bin2] ==
          doctest::Approx(analytic).epsilon(0.01));

    const DriveSpec dc{DriveSpec::Kind::dc, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(run_output_spectrum(m, dc, plan, WindowKind::rect), invalid_input);
}
