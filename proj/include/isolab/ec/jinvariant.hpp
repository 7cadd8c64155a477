#pragma once

#include <optional>
#include <string>

#include "../error.hpp"
#include "../ff/field.hpp"
#include "../ff/minpoly.hpp"
#include "../ff/tower.hpp"

namespace isolab::ec {

using ff::FieldElement;

/// A point of X(1): either a field value j or the cusp at infinity.
class JInvariant {
public:
    JInvariant() = default;
    JInvariant(FieldElement value) : value_(std::move(value)) {}

    static JInvariant cusp() { return JInvariant(); }

    bool is_cusp() const { return !value_.has_value(); }
    const FieldElement& value() const {
        if (!value_) throw Error(ErrorCode::CuspInput, "the cusp has no field value");
        return *value_;
    }

    /// Degree of the smallest field F_{p^d} containing the value (0 for the cusp).
    int min_level() const {
        if (!value_) return 0;
        return static_cast<int>(ff::minimal_polynomial(*value_).size()) - 1;
    }

    /// The value moved to its minimal tower level (identity for detached levels).
    JInvariant canonical() const {
        if (!value_ || !value_->level().tower()) return *this;
        return JInvariant(value_->level().tower()->canonical(*value_));
    }

    std::string to_string() const { return value_ ? value_->to_string() : "cusp"; }

private:
    std::optional<FieldElement> value_;
};

}  // namespace isolab::ec
