#pragma once

#include <stdexcept>
#include <string>

namespace qtcsim {

// Bad arguments or malformed inputs (empty stacks, n = 0, bad config values).
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// Foster network not positive-real, or the ladder expansion cannot proceed.
class synthesis_error : public std::runtime_error {
public:
    explicit synthesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Continued-fraction remainder lost too many digits to be trusted.
class conditioning_error : public std::runtime_error {
public:
    explicit conditioning_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Impedance requested exactly at a network pole.
class pole_evaluation_error : public std::runtime_error {
public:
    explicit pole_evaluation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-point DC solve did not settle within the iteration budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Model driven outside its validity range (R_H <= 0, 1 - alpha_lambda*theta <= 0).
class model_range_error : public std::runtime_error {
public:
    explicit model_range_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Transient state became non-finite.
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested harmonic frequency does not land on a spectrum bin.
class alignment_error : public std::runtime_error {
public:
    explicit alignment_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file problems (missing file, parse error, schema violation).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qtcsim
