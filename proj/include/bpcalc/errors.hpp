#pragma once

#include <stdexcept>
#include <string>

namespace bpcalc {

// Base of every error raised by the kernel.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BasisMismatch : public Error {
public:
    using Error::Error;
};

// A coefficient was requested outside the range a series is known to be correct.
class OutOfValidity : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

// A value that must be integral (V-basis output, division input) had a denominator.
class IntegralityError : public Error {
public:
    using Error::Error;
};

// A generator beyond the table built for the current truncation was needed.
class HorizonExceeded : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InsufficientTruncation : public Error {
public:
    using Error::Error;
};

// An internal identity that must hold (Euler class congruence, ...) failed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace bpcalc
