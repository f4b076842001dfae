#include "mappergpt/ontology.hpp"

#include <algorithm>

#include "mappergpt/util.hpp"

namespace mappergpt {

std::string_view to_string(SynonymScope scope) {
    switch (scope) {
        case SynonymScope::Exact: return "EXACT";
        case SynonymScope::Broad: return "BROAD";
        case SynonymScope::Narrow: return "NARROW";
        case SynonymScope::Related: return "RELATED";
        case SynonymScope::Unscoped: return "UNSCOPED";
    }
    return "UNSCOPED";
}

bool is_curie(std::string_view s) {
    const size_t colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size()) return false;
    return s.find(':', colon + 1) == std::string_view::npos;
}

void Ontology::add(Concept term) {
    if (!is_curie(term.id)) throw DataError("invalid concept id: '" + term.id + "'");
    if (term.name.empty()) throw DataError("concept " + term.id + " has an empty name");
    if (concepts_.count(term.id)) throw DataError("duplicate concept id: " + term.id);
    order_.push_back(term.id);
    concepts_.emplace(term.id, std::move(term));
}

const Concept* Ontology::find(const std::string& id) const {
    auto it = concepts_.find(id);
    return it == concepts_.end() ? nullptr : &it->second;
}

bool Ontology::operator==(const Ontology& other) const {
    return source_name_ == other.source_name_ && order_ == other.order_ &&
           concepts_ == other.concepts_;
}

namespace {

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

// Extracts the first double-quoted string, honoring backslash escapes.
// Returns false when the line holds no complete quoted string.
bool parse_quoted(std::string_view value, std::string& out) {
    const size_t open = value.find('"');
    if (open == std::string_view::npos) return false;
    out.clear();
    for (size_t i = open + 1; i < value.size(); ++i) {
        const char c = value[i];
        if (c == '\\' && i + 1 < value.size()) {
            out.push_back(value[++i]);
        } else if (c == '"') {
            return true;
        } else {
            out.push_back(c);
        }
    }
    return false;
}

// Text following the closing quote, e.g. a synonym scope keyword and xrefs.
std::string_view after_quoted(std::string_view value) {
    const size_t open = value.find('"');
    if (open == std::string_view::npos) return {};
    for (size_t i = open + 1; i < value.size(); ++i) {
        if (value[i] == '\\') {
            ++i;
        } else if (value[i] == '"') {
            return value.substr(i + 1);
        }
    }
    return {};
}

std::string_view strip_obo_comment(std::string_view value) {
    const size_t bang = value.find('!');
    if (bang != std::string_view::npos) value = value.substr(0, bang);
    return trim(value);
}

std::optional<SynonymScope> parse_scope(std::string_view token) {
    if (token == "EXACT") return SynonymScope::Exact;
    if (token == "BROAD") return SynonymScope::Broad;
    if (token == "NARROW") return SynonymScope::Narrow;
    if (token == "RELATED") return SynonymScope::Related;
    return std::nullopt;
}

struct PendingTerm {
    Concept draft;
    size_t start_line = 0; // 1-based line of the [Term] header
    bool has_id = false;
    bool has_name = false;
};

void finish_term(Ontology& onto, PendingTerm& term, std::vector<std::string>* warnings) {
    if (!term.has_id)
        throw DataError("[Term] stanza at line " + std::to_string(term.start_line) +
                        " has no id");
    if (!term.has_name) {
        warn(warnings, "term " + term.draft.id + " has no name; skipped");
        return;
    }
    onto.add(std::move(term.draft));
}

} // namespace

Ontology parse_obo(std::string_view text, std::vector<std::string>* warnings) {
    Ontology onto;
    const auto lines = split_lines(text);

    enum class Section { Header, Term, Skipped } section = Section::Header;
    PendingTerm term;

    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string_view line = trim(lines[i]);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (section == Section::Term) finish_term(onto, term, warnings);
            if (line == "[Term]") {
                section = Section::Term;
                term = PendingTerm{};
                term.start_line = i + 1;
            } else {
                section = Section::Skipped;
            }
            continue;
        }

        const size_t colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        const std::string_view tag = trim(line.substr(0, colon));
        const std::string_view value = trim(line.substr(colon + 1));

        if (section == Section::Header) {
            if (tag == "ontology") onto.set_source_name(std::string(value));
            continue;
        }
        if (section != Section::Term) continue;

        if (tag == "id") {
            term.draft.id = std::string(value);
            term.has_id = true;
        } else if (tag == "name") {
            term.draft.name = std::string(value);
            term.has_name = !value.empty();
        } else if (tag == "def") {
            std::string def;
            if (parse_quoted(value, def)) {
                term.draft.definition = std::move(def);
            } else {
                warn(warnings, "line " + std::to_string(i + 1) +
                                   ": def has no quoted string; ignored");
            }
        } else if (tag == "synonym") {
            std::string syn_text;
            if (!parse_quoted(value, syn_text)) {
                warn(warnings, "line " + std::to_string(i + 1) +
                                   ": synonym has no quoted string; ignored");
                continue;
            }
            SynonymScope scope = SynonymScope::Unscoped;
            const auto rest = split(trim(after_quoted(value)), ' ');
            if (!rest.empty()) {
                if (auto s = parse_scope(rest.front())) scope = *s;
            }
            const Synonym syn{std::move(syn_text), scope};
            auto& syns = term.draft.synonyms;
            if (std::find(syns.begin(), syns.end(), syn) != syns.end()) {
                warn(warnings, "line " + std::to_string(i + 1) +
                                   ": duplicate synonym \"" + syn.text + "\"; ignored");
            } else {
                syns.push_back(syn);
            }
        } else if (tag == "is_a") {
            const std::string_view target = strip_obo_comment(value);
            if (!target.empty()) term.draft.parents.emplace_back(target);
        } else if (tag == "relationship") {
            const std::string_view body = strip_obo_comment(value);
            const size_t sp = body.find(' ');
            if (sp == std::string_view::npos || trim(body.substr(sp + 1)).empty()) {
                warn(warnings, "line " + std::to_string(i + 1) +
                                   ": relationship needs a predicate and a target; ignored");
                continue;
            }
            term.draft.relationships.push_back(
                {std::string(body.substr(0, sp)), std::string(trim(body.substr(sp + 1)))});
        }
        // every other tag is ignored
    }
    if (section == Section::Term) finish_term(onto, term, warnings);
    return onto;
}

Ontology load_obo_file(const std::filesystem::path& path,
                       std::vector<std::string>* warnings) {
    Ontology onto = parse_obo(read_file(path), warnings);
    if (onto.source_name().empty()) onto.set_source_name(path.stem().string());
    return onto;
}

} // namespace mappergpt
