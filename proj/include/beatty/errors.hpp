#pragma once

#include <stdexcept>
#include <string>

namespace beatty {

// Error kinds map one-to-one onto CLI exit codes (see exit_code()).
enum class ErrorKind { parameter, certification, guard };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Bad argument, unparsable spec, violated precondition or domain error.
struct ParameterError : Error {
    explicit ParameterError(const std::string& what)
        : Error(ErrorKind::parameter, what) {}
};

/// A floor or comparison could not be certified at the precision cap.
struct CertificationError : Error {
    explicit CertificationError(const std::string& what)
        : Error(ErrorKind::certification, "boundary-ambiguous: " + what) {}
};

/// Input exceeds a desk-scale enumeration guard.
struct GuardError : Error {
    explicit GuardError(const std::string& what)
        : Error(ErrorKind::guard, what) {}
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::parameter: return 2;
    case ErrorKind::certification: return 3;
    case ErrorKind::guard: return 4;
    }
    return 1;
}

inline const char* kind_name(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::certification: return "certification";
    case ErrorKind::guard: return "guard";
    }
    return "unknown";
}

} // namespace beatty
