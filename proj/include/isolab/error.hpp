#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isolab {

enum class ErrorCode {
    NotPrime,
    CharTooSmall,
    IncompleteFactorization,
    NotAUnit,
    NotCoprime,
    ZeroShift,
    CuspInput,
    BudgetExceeded,
    UnknownLevel,
    MalformedData,
    LevelMismatch,
    ExtensionTooLarge,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::CharTooSmall: return "CharTooSmall";
        case ErrorCode::IncompleteFactorization: return "IncompleteFactorization";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::ZeroShift: return "ZeroShift";
        case ErrorCode::CuspInput: return "CuspInput";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::UnknownLevel: return "UnknownLevel";
        case ErrorCode::MalformedData: return "MalformedData";
        case ErrorCode::LevelMismatch: return "LevelMismatch";
        case ErrorCode::ExtensionTooLarge: return "ExtensionTooLarge";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace isolab
