#pragma once

#include <stdexcept>
#include <string>

namespace affschur {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input data: malformed windows, matrices, compositions, indices.
class DomainError : public Error {
public:
    using Error::Error;
};

class InexactDivision : public Error {
public:
    InexactDivision() : Error("inexact division in Z[t,t^-1]") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by the zero polynomial") {}
};

class ZeroBase : public Error {
public:
    ZeroBase() : Error("evaluation of a Laurent polynomial at t = 0") {}
};

class IndexOutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

class PeriodMismatch : public DomainError {
public:
    PeriodMismatch(int a, int b)
        : DomainError("period mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class InvalidWindow : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidMatrix : public DomainError {
public:
    using DomainError::DomainError;
};

class BasisMismatch : public Error {
public:
    using Error::Error;
};

class NotInModule : public Error {
public:
    using Error::Error;
};

/// Raised when a computation needs an a-value that the current scan cannot certify.
class UncertifiedAValue : public Error {
public:
    using Error::Error;
};

class UncertifiedBoundary : public Error {
public:
    using Error::Error;
};

class WindowExceeded : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace affschur
