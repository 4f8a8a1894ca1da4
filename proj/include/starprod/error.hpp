#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starprod {

/// Base class for all errors raised by the engine.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class division_by_zero : public error {
public:
    division_by_zero() : error("division by zero") {}
};

class singular_classical_limit : public error {
public:
    singular_classical_limit() : error("singular classical limit") {}
};

class not_invertible : public error {
public:
    not_invertible() : error("non-invertible transition operator") {}
};

class not_hbar_divisible : public error {
public:
    not_hbar_divisible() : error("bracket not hbar-divisible") {}
};

class degree_overflow : public error {
public:
    explicit degree_overflow(int degree, int bound)
        : error("polynomial degree " + std::to_string(degree) +
                " exceeds guard " + std::to_string(bound)) {}
};

class singular_sample_point : public error {
public:
    singular_sample_point() : error("singular sample point") {}
};

class empty_sample_set : public error {
public:
    empty_sample_set() : error("empty sample set") {}
};

/// Syntax or lowering failure in the expression mini-language. Carries the
/// byte offset of the offending token and the set of tokens that would have
/// been accepted there.
class parse_error : public error {
public:
    parse_error(std::size_t offset, const std::string& message, std::string expected = {})
        : error("at offset " + std::to_string(offset) + ": " + message),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

} // namespace starprod
