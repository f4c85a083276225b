#pragma once

#include <stdexcept>
#include <string>

namespace duopoly {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition or type invariant was violated by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Firm positions do not satisfy locA, locB >= 0 and locA + locB < length.
class InvalidLocations : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The indifferent consumer falls outside the segment between the firms,
/// so one firm captures the whole line.
class OutOfInterior : public Error {
public:
    using Error::Error;
};

/// An iterative solver did not reach its tolerance within the iteration cap.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, int iterations)
        : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
          iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

/// The R&D game has more than one pure equilibrium, so the cycle cannot pick one.
class MultipleEquilibria : public Error {
public:
    using Error::Error;
};

/// Malformed game or configuration file.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace duopoly
