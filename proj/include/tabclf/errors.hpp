#pragma once

#include <stdexcept>
#include <string>

namespace tabclf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or violated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input text (CSV, YAML, JSON) that cannot be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A model fit could not proceed, e.g. single-class labels.
class FitError : public Error {
public:
    using Error::Error;
};

/// Numerical routine gave up before converging.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace tabclf
