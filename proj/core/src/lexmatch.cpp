#include "mappergpt/lexmatch.hpp"

#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mappergpt {

std::string normalize_label(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (const unsigned char c : s) {
        // bytes >= 0x80 belong to multi-byte UTF-8 sequences: pass through
        const bool keep = c >= 0x80 || std::isalnum(c);
        if (keep) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(c >= 0x80 ? static_cast<char>(c)
                                    : static_cast<char>(std::tolower(c)));
        } else {
            pending_space = true;
        }
    }
    return out;
}

namespace {

// normalized string -> smallest original string it came from, per concept
using NormStrings = std::unordered_map<std::string, std::string>;

NormStrings concept_strings(const Concept& c) {
    NormStrings out;
    const auto consider = [&](const std::string& original) {
        std::string norm = normalize_label(original);
        if (norm.empty()) return;
        auto [it, inserted] = out.emplace(std::move(norm), original);
        if (!inserted && original < it->second) it->second = original;
    };
    consider(c.name);
    for (const Synonym& s : c.synonyms) consider(s.text);
    return out;
}

} // namespace

MappingSet lexical_match(const Ontology& source, const Ontology& target) {
    // inverted index over the target: normalized string -> concepts carrying it
    struct IndexEntry {
        std::string concept_id;
        std::string original; // smallest original spelling in that concept
    };
    std::unordered_map<std::string, std::vector<IndexEntry>> index;
    for (const std::string& id : target.ids()) {
        const Concept* c = target.find(id);
        for (auto& [norm, original] : concept_strings(*c)) {
            index[norm].push_back({id, original});
        }
    }

    struct Shared {
        std::string norm;
        std::string source_original;
        std::string target_original;
    };
    std::map<std::pair<std::string, std::string>, Shared> pairs;
    for (const std::string& sid : source.ids()) {
        const Concept* a = source.find(sid);
        for (const auto& [norm, source_original] : concept_strings(*a)) {
            const auto hit = index.find(norm);
            if (hit == index.end()) continue;
            for (const IndexEntry& entry : hit->second) {
                const Shared candidate{norm, source_original, entry.original};
                auto [it, inserted] =
                    pairs.emplace(std::make_pair(sid, entry.concept_id), candidate);
                if (inserted) continue;
                Shared& kept = it->second;
                const auto key = [](const Shared& s) {
                    return std::tie(s.norm, s.source_original, s.target_original);
                };
                if (key(candidate) < key(kept)) kept = candidate;
            }
        }
    }

    MappingSet out;
    out.set_metadata("mapping_tool", "mappergpt-lexmatch");
    if (!source.source_name().empty())
        out.set_metadata("subject_source", source.source_name());
    if (!target.source_name().empty())
        out.set_metadata("object_source", target.source_name());
    for (const auto& [key, shared] : pairs) {
        MappingRecord rec;
        rec.subject_id = key.first;
        rec.subject_label = source.find(key.first)->name;
        rec.predicate_id = std::string(predicates::kExactMatch);
        rec.object_id = key.second;
        rec.object_label = target.find(key.second)->name;
        rec.mapping_justification = std::string(justifications::kLexicalMatching);
        rec.comment = "lexical match: \"" + shared.source_original + "\" = \"" +
                      shared.target_original + "\"";
        out.add(std::move(rec));
    }
    return out;
}

} // namespace mappergpt
