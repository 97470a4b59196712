#ifndef PPVAC_ERRORS_HPP
#define PPVAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ppvac {

/// Bad or incomplete input configuration (missing section, unknown key, bad unit).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain (e.g. overlapping pulses).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested regime has no closed-form expression (quasidegenerate ensemble).
class UnsupportedRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Division by a vanishing quantity, e.g. a ratio against a zero signal.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature failed its step-doubling check.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double coarse, double fine)
        : std::runtime_error(what), coarse_(coarse), fine_(fine) {}

    double coarse() const noexcept { return coarse_; }
    double fine() const noexcept { return fine_; }

private:
    double coarse_;
    double fine_;
};

}  // namespace ppvac

#endif
