#pragma once

#include <cmath>
#include <vector>

#include "qtcsim/errors.hpp"

namespace qtcsim {

// Uniformly sampled real time series.
struct Waveform {
    double dt = 0.0; // s
    std::vector<double> samples;

    void validate() const {
        if (!(dt > 0.0)) throw invalid_input("waveform: dt must be > 0");
        if (samples.size() < 2) throw invalid_input("waveform: need at least 2 samples");
        for (double v : samples)
            if (!std::isfinite(v)) throw invalid_input("waveform: non-finite sample");
    }
};

} // namespace qtcsim
