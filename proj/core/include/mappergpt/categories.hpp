#pragma once

#include <optional>
#include <string_view>

namespace mappergpt {

/// Mapping category a review can assign to a candidate pair.
enum class Category { ExactMatch, BroaderThan, NarrowerThan, RelatedTo, Different };

/// Reviewer-stated qualitative confidence.
enum class Confidence { Low, Medium, High };

std::string_view to_string(Category c);   // "EXACT_MATCH", ...
std::string_view to_string(Confidence c); // "LOW", ...

/// Case-insensitive token match after trimming; nullopt when unrecognized.
std::optional<Category> parse_category(std::string_view token);
std::optional<Confidence> parse_confidence(std::string_view token);

} // namespace mappergpt
