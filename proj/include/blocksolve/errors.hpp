#pragma once

#include <stdexcept>
#include <string>

namespace blocksolve {

// Every failure surfaced by the library derives from Error so callers can
// catch one type; the subclasses let the solvers drive their retry policy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroInverse : public Error {
public:
    using Error::Error;
};

class NoReconstruction : public Error {
public:
    using Error::Error;
};

// A square matrix that is singular modulo the working prime.
class SingularMod : public Error {
public:
    using Error::Error;
};

class DegreeTooHigh : public Error {
public:
    using Error::Error;
};

class RankCollapse : public Error {
public:
    using Error::Error;
};

class InvalidBlocking : public Error {
public:
    using Error::Error;
};

class SingularHankel : public Error {
public:
    using Error::Error;
};

class BadMinPoly : public Error {
public:
    using Error::Error;
};

// Raised once the projection retry budget is spent on primes for which the
// matrix is not known to be singular.
class ProjectionFailure : public Error {
public:
    using Error::Error;
};

// The system matrix is singular over Q (every tried prime failed).
class Singular : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace blocksolve
