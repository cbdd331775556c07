#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boxcox {

enum class ErrorKind {
    domain,
    degenerate_sample,
    unsupported_size,
    positivity,
    inverse_domain,
    non_interior_optimum,
    estimation_failed,
    singular,
    ingestion,
    invalid_condition,
    invalid_argument,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers can branch
/// without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when the optimum stays on a grid endpoint after every allowed expansion.
class NonInteriorOptimum : public Error {
public:
    NonInteriorOptimum(double best_lambda, const std::string& message)
        : Error(ErrorKind::non_interior_optimum, message), best_lambda_(best_lambda) {}

    [[nodiscard]] double best_lambda() const noexcept { return best_lambda_; }

private:
    double best_lambda_;
};

}  // namespace boxcox
