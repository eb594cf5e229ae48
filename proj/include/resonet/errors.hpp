#pragma once

#include <stdexcept>
#include <string>

namespace resonet {

// Base class for everything thrown by this library. Two broad families:
// validation_error covers rejected inputs and preconditions (CLI exit 1),
// numerical_error covers runtime numerical breakdowns (CLI exit 2).
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

class numerical_error : public error {
public:
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

// -- validation family -------------------------------------------------------

class invalid_argument_error : public validation_error {
public:
    explicit invalid_argument_error(const std::string& msg) : validation_error(msg) {}
};

class unsupported_topology_error : public validation_error {
public:
    explicit unsupported_topology_error(const std::string& msg) : validation_error(msg) {}
};

class invalid_schedule_error : public validation_error {
public:
    explicit invalid_schedule_error(const std::string& msg) : validation_error(msg) {}
};

class invalid_state_error : public validation_error {
public:
    explicit invalid_state_error(const std::string& msg) : validation_error(msg) {}
};

class out_of_range_error : public validation_error {
public:
    explicit out_of_range_error(const std::string& msg) : validation_error(msg) {}
};

class transient_region_error : public validation_error {
public:
    explicit transient_region_error(const std::string& msg) : validation_error(msg) {}
};

class degenerate_fit_error : public validation_error {
public:
    explicit degenerate_fit_error(const std::string& msg) : validation_error(msg) {}
};

class config_error : public validation_error {
public:
    config_error(const std::string& msg, int line)
        : validation_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    explicit config_error(const std::string& msg) : validation_error(msg), line_(0) {}
    int line() const { return line_; }

private:
    int line_;
};

// -- numerical family --------------------------------------------------------

class phase_undefined_error : public numerical_error {
public:
    explicit phase_undefined_error(const std::string& msg) : numerical_error(msg) {}
};

class division_by_zero_error : public numerical_error {
public:
    explicit division_by_zero_error(const std::string& msg) : numerical_error(msg) {}
};

// Carries the iteration/residual diagnostics of a failed iterative solve.
class numerical_failure_error : public numerical_error {
public:
    numerical_failure_error(const std::string& msg, int iterations, double residual)
        : numerical_error(msg + " (iterations=" + std::to_string(iterations) +
                          ", residual=" + std::to_string(residual) + ")"),
          iterations_(iterations),
          residual_(residual) {}
    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

// Carries the simulation timestamp at which state became non-finite.
class numerical_overflow_error : public numerical_error {
public:
    explicit numerical_overflow_error(double t)
        : numerical_error("state became non-finite at t=" + std::to_string(t) + " s"),
          time_(t) {}
    double time() const { return time_; }

private:
    double time_;
};

} // namespace resonet
