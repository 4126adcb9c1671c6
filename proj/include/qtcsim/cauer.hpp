#pragma once

// Foster -> Cauer ladder transformation by continued-fraction expansion.
//
// The Foster network is first brought to a rational impedance
// Z(s) = num(s)/den(s) with deg num = N-1, deg den = N. The Cauer-I
// expansion about s -> infinity then alternates between extracting the
// shunt capacitor C_k = lim Y(s)/s and the series resistor
// R_k = lim Z_rem(s), yielding a ladder (from the driven node): shunt C1,
// series R1, shunt C2, ..., series R_N to ground.
//
// Polynomial division is done in long double and the result is verified
// against the Foster impedance at log-spaced points; we fail loudly rather
// than return drifted elements.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qtcsim/errors.hpp"
#include "qtcsim/rc_line.hpp"

namespace qtcsim {

// Polynomial coefficients ascending in s.
struct RationalImpedance {
    std::vector<double> numerator;
    std::vector<double> denominator;

    std::complex<double> evaluate(std::complex<double> s) const {
        auto horner = [&s](const std::vector<double>& c) {
            std::complex<double> v = 0.0;
            for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
            return v;
        };
        const std::complex<double> den = horner(denominator);
        if (std::abs(den) == 0.0)
            throw pole_evaluation_error("rational impedance: evaluation at a pole");
        return horner(numerator) / den;
    }
};

struct CauerStage {
    double shunt_capacitance = 0.0;  // J/K
    double series_resistance = 0.0;  // K/W
};

struct CauerLadder {
    std::vector<CauerStage> stages;

    double dc_resistance() const {
        double r = 0.0;
        for (const CauerStage& st : stages) r += st.series_resistance;
        return r;
    }

    double min_time_constant() const {
        double t = std::numeric_limits<double>::infinity();
        for (const CauerStage& st : stages)
            t = std::min(t, st.series_resistance * st.shunt_capacitance);
        return t;
    }
};

// Driving-point impedance by back-to-front ladder recursion.
inline std::complex<double> cauer_impedance(const CauerLadder& ladder,
                                            std::complex<double> s) {
    if (ladder.stages.empty()) throw invalid_input("cauer_impedance: empty ladder");
    std::complex<double> z = 0.0;
    for (std::size_t i = ladder.stages.size(); i-- > 0;) {
        const CauerStage& st = ladder.stages[i];
        const std::complex<double> zr = st.series_resistance + z;
        z = 1.0 / (s * st.shunt_capacitance + 1.0 / zr);
    }
    return z;
}

// Common-denominator form of Sum R_Fi/(1 + s t_i).
inline RationalImpedance rational_from_foster(const FosterNetwork& net) {
    const std::size_t n = net.stages.size();
    if (n == 0) throw invalid_input("rational_from_foster: empty network");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (net.stages[i].time_constant == net.stages[j].time_constant)
                throw invalid_input("rational_from_foster: duplicate time constants "
                                    "(merge stages first)");

    // den = prod (1 + s t_i); num = sum R_i * prod_{j!=i} (1 + s t_j)
    std::vector<long double> den{1.0L};
    for (const FosterStage& st : net.stages) {
        std::vector<long double> next(den.size() + 1, 0.0L);
        for (std::size_t k = 0; k < den.size(); ++k) {
            next[k] += den[k];
            next[k + 1] += den[k] * static_cast<long double>(st.time_constant);
        }
        den = std::move(next);
    }
    std::vector<long double> num(n, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long double> part{static_cast<long double>(net.stages[i].resistance)};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<long double> next(part.size() + 1, 0.0L);
            for (std::size_t k = 0; k < part.size(); ++k) {
                next[k] += part[k];
                next[k + 1] += part[k] * static_cast<long double>(net.stages[j].time_constant);
            }
            part = std::move(next);
        }
        for (std::size_t k = 0; k < part.size(); ++k) num[k] += part[k];
    }

    RationalImpedance z;
    z.numerator.assign(num.begin(), num.end());
    z.denominator.assign(den.begin(), den.end());
    return z;
}

namespace detail {

inline long double max_abs_coeff(const std::vector<long double>& p) {
    long double m = 0.0L;
    for (long double c : p) m = std::max(m, std::fabs(c));
    return m;
}

// Drop trailing coefficients below tol * largest magnitude.
inline void trim(std::vector<long double>& p, long double scale) {
    const long double tol = 1e-12L * scale;
    while (p.size() > 1 && std::fabs(p.back()) < tol) p.pop_back();
}

} // namespace detail

// Cauer-I continued fraction about s -> infinity. Requires a positive-real
// (all R_F > 0) Foster network of at most 6 stages.
inline CauerLadder foster_to_cauer(const FosterNetwork& net) {
    const std::size_t n = net.stages.size();
    if (n == 0) throw invalid_input("foster_to_cauer: empty network");
    if (n > 6)
        throw invalid_input("foster_to_cauer: at most 6 stages supported "
                            "(continued fraction conditioning)");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(net.stages[i].resistance > 0.0))
            throw synthesis_error("foster_to_cauer: stage " + std::to_string(i + 1) +
                                  " has non-positive resistance; network is not "
                                  "positive-real");
        if (!(net.stages[i].time_constant > 0.0))
            throw synthesis_error("foster_to_cauer: stage " + std::to_string(i + 1) +
                                  " has non-positive time constant");
    }

    // Normalize frequency to the geometric-mean time constant so the
    // polynomial coefficients stay balanced across wide spreads; the
    // resistances are scale-invariant and the capacitances pick up the
    // factor back at the end.
    long double log_t = 0.0L;
    for (const FosterStage& st : net.stages)
        log_t += std::log(static_cast<long double>(st.time_constant));
    const long double t_scale = std::exp(log_t / static_cast<long double>(n));
    FosterNetwork scaled = net;
    for (FosterStage& st : scaled.stages) {
        st.time_constant = static_cast<double>(st.time_constant / t_scale);
        st.capacitance = st.time_constant / st.resistance;
    }

    const RationalImpedance zr = rational_from_foster(scaled);
    std::vector<long double> num(zr.numerator.begin(), zr.numerator.end());
    std::vector<long double> den(zr.denominator.begin(), zr.denominator.end());

    CauerLadder ladder;
    ladder.stages.reserve(n);
    for (std::size_t stage = 0; stage < n; ++stage) {
        // Y = den/num with deg den = deg num + 1: shunt capacitor.
        if (den.size() != num.size() + 1)
            throw conditioning_error("foster_to_cauer: degree pattern lost at stage " +
                                     std::to_string(stage + 1));
        const long double c_k = den.back() / num.back();
        if (!(c_k > 0.0L) || !std::isfinite(static_cast<double>(c_k)))
            throw conditioning_error("foster_to_cauer: non-positive capacitance at stage " +
                                     std::to_string(stage + 1));
        // den <- den - s*c_k*num (leading term cancels by construction)
        for (std::size_t k = 0; k < num.size(); ++k) den[k + 1] -= c_k * num[k];
        den.pop_back();
        detail::trim(den, detail::max_abs_coeff(den));

        // Z = num/den now has equal degrees: series resistor.
        if (den.size() != num.size())
            throw conditioning_error("foster_to_cauer: remainder degenerated at stage " +
                                     std::to_string(stage + 1));
        const long double r_k = num.back() / den.back();
        if (!(r_k > 0.0L) || !std::isfinite(static_cast<double>(r_k)))
            throw conditioning_error("foster_to_cauer: non-positive resistance at stage " +
                                     std::to_string(stage + 1));
        for (std::size_t k = 0; k < den.size(); ++k) num[k] -= r_k * den[k];
        num.pop_back();
        detail::trim(num, detail::max_abs_coeff(num));

        ladder.stages.push_back(
            {static_cast<double>(c_k * t_scale), static_cast<double>(r_k)});
    }

    // Equivalence post-check around the pole span; drifted elements are an
    // error, not a result.
    double t_min = net.stages[0].time_constant, t_max = t_min;
    for (const FosterStage& st : net.stages) {
        t_min = std::min(t_min, st.time_constant);
        t_max = std::max(t_max, st.time_constant);
    }
    const double w_lo = 0.01 / t_max, w_hi = 100.0 / t_min;
    for (int i = 0; i < 25; ++i) {
        const double w = w_lo * std::pow(w_hi / w_lo, i / 24.0);
        const std::complex<double> s{0.0, w};
        const std::complex<double> zf = foster_impedance(net, s);
        const std::complex<double> zc = cauer_impedance(ladder, s);
        if (std::abs(zc - zf) > 1e-6 * std::abs(zf))
            throw conditioning_error("foster_to_cauer: ladder impedance drifted from the "
                                     "Foster impedance beyond 1e-6 relative");
    }
    return ladder;
}

} // namespace qtcsim
