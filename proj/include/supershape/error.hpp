#pragma once

#include <stdexcept>
#include <string>

namespace supershape {

enum class ErrorKind {
    invalid_params,
    invalid_resolution,
    invalid_config,
    invalid_genome,
    dimension_mismatch,
    empty_population,
    io_error,
    non_finite_surface,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace supershape
