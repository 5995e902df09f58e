#pragma once

#include <stdexcept>
#include <string>

namespace seamforge {

/// Error category, mapped onto CLI exit codes (domain -> 1, io -> 2).
enum class ErrorKind { domain, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_domain(const std::string& msg) {
    throw Error(ErrorKind::domain, msg);
}

[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorKind::io, msg);
}

} // namespace seamforge
