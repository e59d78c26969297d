#pragma once

#include <stdexcept>
#include <string>

namespace gtsp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The caller handed in something outside an operation's contract
/// (disconnected graph, out-of-range vertex, oracle cutoff exceeded, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// An internal certificate check failed. Always a bug in the library,
/// never a property of the input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

#define GTSP_ENSURE(cond, msg)                                                  \
    do {                                                                        \
        if (!(cond)) {                                                          \
            throw ::gtsp::InvariantViolation(std::string(__func__) + ": " + (msg)); \
        }                                                                       \
    } while (false)

}  // namespace gtsp
