#pragma once

#include <string>
#include <vector>

#include "../config.hpp"
#include "../ec/label.hpp"

namespace isolab::constructions {

enum class LabelCheck { Agree, Disagree, Skipped };

inline std::string to_string(LabelCheck c) {
    switch (c) {
        case LabelCheck::Agree: return "agree";
        case LabelCheck::Disagree: return "disagree";
        case LabelCheck::Skipped: return "skipped";
    }
    return "skipped";
}

/// Outcome of re-checking a witness. `failures` explains every failed identity.
struct Verification {
    bool ok = true;
    LabelCheck labels = LabelCheck::Skipped;
    std::vector<std::string> failures;

    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
    explicit operator bool() const { return ok; }
};

struct VerifyOptions {
    bool check_labels = true;
    Budgets budgets;
    ec::LabelCache* cache = nullptr;
};

/// Compares labels of (left[i], right[i]). Budget or factoring failures leave the check undecided.
inline LabelCheck compare_labels(const std::vector<ff::FieldElement>& left, const std::vector<ff::FieldElement>& right,
                                 const VerifyOptions& opt) {
    if (!opt.check_labels) return LabelCheck::Skipped;
    try {
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (ec::isogeny_class_label(left[i], opt.budgets, opt.cache) !=
                ec::isogeny_class_label(right[i], opt.budgets, opt.cache))
                return LabelCheck::Disagree;
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::IncompleteFactorization)
            return LabelCheck::Skipped;
        throw;
    }
    return LabelCheck::Agree;
}

}  // namespace isolab::constructions
