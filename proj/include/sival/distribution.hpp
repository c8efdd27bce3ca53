#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sival {

/// Distinct variable names in order of first occurrence.
using VariableSequence = std::vector<std::string>;

/// Index-level form of the distribution function for a pair of
/// subexpressions ⟨e1, e2⟩.
///
/// The combined tuple lists e1's variables first (positions 0..m-1),
/// followed by the q variables of e2 that do not occur in e1, in e2's order.
/// `left_indices` is always ⟨0, ..., m-1⟩; `right_indices[k]` is the
/// combined position of e2's k-th variable, landing in the prefix for shared
/// variables. Applying the plan routes one combined tuple to the two
/// argument tuples, so a shared variable receives the same value on both
/// sides.
struct DistributionPlan {
    std::size_t combined_arity = 0;
    std::vector<std::size_t> left_indices;
    std::vector<std::size_t> right_indices;

    template <class T>
    [[nodiscard]] std::pair<std::vector<T>, std::vector<T>> apply(std::span<const T> combined) const
    {
        std::pair<std::vector<T>, std::vector<T>> out;
        out.first.reserve(left_indices.size());
        out.second.reserve(right_indices.size());
        for (auto i : left_indices) {
            out.first.push_back(combined[i]);
        }
        for (auto i : right_indices) {
            out.second.push_back(combined[i]);
        }
        return out;
    }

    friend bool operator==(const DistributionPlan&, const DistributionPlan&) = default;
};

/// Builds the plan from the two variable sequences. Also yields the
/// combined sequence when `combined` is non-null.
[[nodiscard]] DistributionPlan plan_distribution(const VariableSequence& left, const VariableSequence& right,
                                                 VariableSequence* combined = nullptr);

} // namespace sival
