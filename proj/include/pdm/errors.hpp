#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// x outside the domain of a profile, reference or model
class DomainError : public Error {
public:
    using Error::Error;
};

// parameters violate a validity constraint (imaginary root, bad sign, ...)
class ParameterError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

// bound state not contained in the grid
class SupportError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace pdm
