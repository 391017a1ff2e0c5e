#pragma once

#include <stdexcept>
#include <string>

namespace wsbr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested digits or terms exceed what the representation carries.
class PrecisionError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// An enclosure straddles zero where a strict sign is required.
class IndeterminateSignError : public Error {
public:
    using Error::Error;
};

class BracketError : public Error {
public:
    using Error::Error;
};

class CaseConstraintError : public Error {
public:
    using Error::Error;
};

// Parameter outside the range for which a certificate or envelope is valid.
class ValidityError : public Error {
public:
    using Error::Error;
};

}  // namespace wsbr
