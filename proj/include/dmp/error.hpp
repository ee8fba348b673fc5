#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dmp {

enum class ErrorKind {
    Parameter,        // invalid argument or configuration
    Data,             // well-formed input whose content violates a contract
    FileNotFound,
    Io,               // read/write failure on an existing path
    MalformedPng,
    UnsupportedDepth,
    BadMagic,
    VersionMismatch,
    Truncated,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Data: return "data error";
    case ErrorKind::FileNotFound: return "file not found";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::MalformedPng: return "malformed png";
    case ErrorKind::UnsupportedDepth: return "unsupported bit depth";
    case ErrorKind::BadMagic: return "bad magic";
    case ErrorKind::VersionMismatch: return "version mismatch";
    case ErrorKind::Truncated: return "truncated file";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_parameter(const std::string& what)
{
    throw Error(ErrorKind::Parameter, what);
}

[[noreturn]] inline void throw_data(const std::string& what)
{
    throw Error(ErrorKind::Data, what);
}

/// Process exit status for an error: 2 for usage/parameter problems, 1 otherwise.
constexpr int exit_code(ErrorKind kind) noexcept
{
    return kind == ErrorKind::Parameter ? 2 : 1;
}

} // namespace dmp
