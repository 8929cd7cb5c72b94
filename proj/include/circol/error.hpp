#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circol {

enum class ErrorCode {
    Empty,
    DuplicateEndpoint,
    ParseError,
    IoError,
    MissingVertex,
    NotArborescence,
    C1Violated,
    C2Violated,
    VertexNotBranching,
    InvalidHeight,
    D0Violated,
    D1Violated,
    D2Violated,
    NumericalFailure,
    Infeasible,
    OverBudget,
    InvalidModel,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type. `vertex` names the
// offending vertex (0-based) when the error is about a specific one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<int> vertex = std::nullopt)
        : std::runtime_error(what), code_(code), vertex_(vertex) {}

    ErrorCode code() const noexcept { return code_; }
    std::optional<int> vertex() const noexcept { return vertex_; }

private:
    ErrorCode code_;
    std::optional<int> vertex_;
};

} // namespace circol
