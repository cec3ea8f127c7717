#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fimstat {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (negative variance, |b| > a in a Gaussian kernel, invalid shape, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A recurrence or a network pass produced a non-finite value.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, int layer)
        : Error(what + " (layer " + std::to_string(layer) + ")"), layer_(layer) {}
    int layer() const noexcept { return layer_; }

private:
    int layer_;
};

/// Malformed binary or text input; carries the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The symmetric eigensolver did not converge.
class SpectralError : public Error {
public:
    using Error::Error;
};

}  // namespace fimstat
