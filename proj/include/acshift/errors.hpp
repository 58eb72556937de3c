#pragma once

#include <stdexcept>
#include <string>

namespace acshift {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A resonance denominator vanished (zero detuning with zero linewidth).
class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

/// Renormalized dissipation rates left the region where they are non-negative.
class NegativeRate : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// The photon-space cutoff is too small for the state it has to represent.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// The Floquet branch connected to the bare splitting cannot be identified.
class ZoneAmbiguity : public Error {
public:
    using Error::Error;
};

class RidgeNotFound : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace acshift
