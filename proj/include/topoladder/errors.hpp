// errors.hpp: exception hierarchy shared by all topoladder modules.

#pragma once

#include <stdexcept>
#include <string>

namespace topoladder {

// Root of everything the library throws on a numerical or contract failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSizeError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation
// (e.g. closed-form bands requested at nonzero detuning).
class DomainError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Two bands touch along a Bloch loop; carries the offending wave number.
class DegenerateBandError : public Error {
public:
    DegenerateBandError(const std::string& what, double k) : Error(what), k_(k) {}
    double k() const noexcept { return k_; }

private:
    double k_;
};

// Gap closes somewhere on the synthetic (k, t) torus.
class DegenerateTorusError : public Error {
public:
    DegenerateTorusError(const std::string& what, double k, double t)
        : Error(what), k_(k), t_(t) {}
    double k() const noexcept { return k_; }
    double t() const noexcept { return t_; }

private:
    double k_;
    double t_;
};

// Z(k) vanishes on the grid: the parameters sit on a zero-energy phase boundary.
class OnBoundaryError : public Error {
public:
    OnBoundaryError(const std::string& what, double k) : Error(what), k_(k) {}
    double k() const noexcept { return k_; }

private:
    double k_;
};

class StabilityError : public Error {
public:
    using Error::Error;
};

}  // namespace topoladder
