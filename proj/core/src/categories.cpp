#include "mappergpt/categories.hpp"

#include "mappergpt/util.hpp"

namespace mappergpt {

std::string_view to_string(Category c) {
    switch (c) {
        case Category::ExactMatch: return "EXACT_MATCH";
        case Category::BroaderThan: return "BROADER_THAN";
        case Category::NarrowerThan: return "NARROWER_THAN";
        case Category::RelatedTo: return "RELATED_TO";
        case Category::Different: return "DIFFERENT";
    }
    return "DIFFERENT";
}

std::string_view to_string(Confidence c) {
    switch (c) {
        case Confidence::Low: return "LOW";
        case Confidence::Medium: return "MEDIUM";
        case Confidence::High: return "HIGH";
    }
    return "LOW";
}

std::optional<Category> parse_category(std::string_view token) {
    const std::string_view t = trim(token);
    for (const Category c : {Category::ExactMatch, Category::BroaderThan,
                             Category::NarrowerThan, Category::RelatedTo,
                             Category::Different}) {
        if (iequals(t, to_string(c))) return c;
    }
    return std::nullopt;
}

std::optional<Confidence> parse_confidence(std::string_view token) {
    const std::string_view t = trim(token);
    for (const Confidence c : {Confidence::Low, Confidence::Medium, Confidence::High}) {
        if (iequals(t, to_string(c))) return c;
    }
    return std::nullopt;
}

} // namespace mappergpt
