#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace algorec {

struct AlgorithmInfo {
    std::string_view id;
    std::string_view display_name;
};

/// The seven functionalities the pipeline is evaluated on, in report order.
inline constexpr std::array<AlgorithmInfo, 7> kAlgorithms{{
    {"prime_factors", "Prime Factors"},
    {"gcd", "GCD"},
    {"fibonacci", "Fibonacci"},
    {"palindrome", "Palindrome"},
    {"bubble_sort", "Bubble Sort"},
    {"binary_search", "Binary Search"},
    {"transpose_matrix", "Transpose Matrix"},
}};

/// Accepts an id ("bubble_sort") or a display name in any case ("bubble sort",
/// "Bubble-Sort"). Returns the canonical id.
std::optional<std::string> resolve_algorithm(std::string_view name);

/// Canonical id → display name used in prompts. Throws DataError on unknown id.
std::string_view display_name(std::string_view id);

/// Position in kAlgorithms; used for deterministic ordering.
std::size_t algorithm_rank(std::string_view id);

}  // namespace algorec
