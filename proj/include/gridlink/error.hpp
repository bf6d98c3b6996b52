#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridlink {

/// Broad failure classes. The CLI maps each one to a distinct exit status.
enum class ErrorCategory {
    validation,  ///< an input violates a documented invariant
    infeasible,  ///< the demand cannot be served by the requested configuration
    numerical,   ///< an iterative solve failed to converge
    io,          ///< a file could not be read or written
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
    throw Error(category, message);
}

}  // namespace gridlink
