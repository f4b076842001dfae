#include "mappergpt/sssom.hpp"

#include <cstdlib>
#include <map>

#include "mappergpt/ontology.hpp" // is_curie
#include "mappergpt/util.hpp"

namespace mappergpt {

namespace {

constexpr std::string_view kColumns[] = {
    "subject_id",     "subject_label",         "predicate_id",
    "object_id",      "object_label",          "mapping_justification",
    "confidence",     "similarity_score",      "comment",
};
constexpr size_t kColumnCount = std::size(kColumns);

std::string header_line() {
    std::string out;
    for (size_t i = 0; i < kColumnCount; ++i) {
        if (i) out.push_back('\t');
        out += kColumns[i];
    }
    return out;
}

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

double parse_number(std::string_view cell, std::string_view column, size_t row) {
    const std::string s{trim(cell)};
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw DataError("row " + std::to_string(row) + ": non-numeric " +
                        std::string(column) + ": '" + s + "'");
    return v;
}

} // namespace

bool is_mapping_predicate(std::string_view predicate) {
    return predicate == predicates::kExactMatch || predicate == predicates::kCloseMatch ||
           predicate == predicates::kBroadMatch || predicate == predicates::kNarrowMatch ||
           predicate == predicates::kRelatedMatch || predicate == predicates::kDifferentFrom;
}

void validate(const MappingRecord& record) {
    if (!is_curie(record.subject_id))
        throw DataError("invalid subject_id: '" + record.subject_id + "'");
    if (!is_curie(record.object_id))
        throw DataError("invalid object_id: '" + record.object_id + "'");
    if (!is_mapping_predicate(record.predicate_id))
        throw DataError("invalid predicate_id: '" + record.predicate_id + "'");
    if (!is_curie(record.mapping_justification))
        throw DataError("invalid mapping_justification: '" + record.mapping_justification +
                        "'");
    if (record.subject_id == record.object_id &&
        record.predicate_id != predicates::kExactMatch)
        throw DataError("self-map " + record.subject_id + " only allowed as " +
                        std::string(predicates::kExactMatch) + ", got " +
                        record.predicate_id);
    if (record.confidence && (*record.confidence < 0.0 || *record.confidence > 1.0))
        throw DataError("confidence out of [0,1] for " + record.subject_id + " -> " +
                        record.object_id + ": " + std::to_string(*record.confidence));
}

void MappingSet::set_metadata(std::string key, std::string value) {
    for (auto& [k, v] : metadata_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    metadata_.emplace_back(std::move(key), std::move(value));
}

void MappingSet::add(MappingRecord record) {
    validate(record);
    std::array<std::string, 3> triple{record.subject_id, record.predicate_id,
                                      record.object_id};
    if (!triples_.insert(std::move(triple)).second)
        throw DataError("duplicate mapping: " + record.subject_id + " " +
                        record.predicate_id + " " + record.object_id);
    records_.push_back(std::move(record));
}

MappingSet parse_sssom(std::string_view text, std::vector<std::string>* warnings) {
    MappingSet set;
    const auto lines = split_lines(text);

    size_t i = 0;
    for (; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (line.empty() || line.front() != '#') break;
        const std::string_view body = line.substr(1);
        const size_t colon = body.find(':');
        if (colon == std::string_view::npos) {
            warn(warnings, "line " + std::to_string(i + 1) +
                               ": metadata line without ':'; ignored");
            continue;
        }
        set.set_metadata(std::string(trim(body.substr(0, colon))),
                         std::string(trim(body.substr(colon + 1))));
    }
    if (i >= lines.size()) throw DataError("missing column header");

    // header
    const auto header = split(lines[i], '\t');
    std::map<std::string_view, size_t> col_index;
    for (size_t c = 0; c < header.size(); ++c) {
        const std::string_view name = trim(header[c]);
        bool known = false;
        for (const auto& k : kColumns) known = known || (name == k);
        if (!known) {
            warn(warnings, "ignoring unknown column: " + std::string(name));
            continue;
        }
        if (!col_index.emplace(name, c).second)
            throw DataError("duplicate column: " + std::string(name));
    }
    for (const std::string_view required :
         {"subject_id", "predicate_id", "object_id", "mapping_justification"}) {
        if (!col_index.count(required))
            throw DataError("missing required column: " + std::string(required));
    }
    ++i;

    const auto cell = [&](const std::vector<std::string_view>& cells,
                          std::string_view column) -> std::string_view {
        const auto it = col_index.find(column);
        if (it == col_index.end() || it->second >= cells.size()) return {};
        return cells[it->second];
    };

    std::map<std::array<std::string, 3>, size_t> seen; // triple -> data-row number
    size_t row = 0;
    for (; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (line.empty()) {
            warn(warnings, "line " + std::to_string(i + 1) + ": empty row; ignored");
            continue;
        }
        ++row;
        const auto cells = split(line, '\t');
        if (cells.size() > header.size())
            throw DataError("row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()));

        MappingRecord rec;
        rec.subject_id = std::string(cell(cells, "subject_id"));
        rec.predicate_id = std::string(cell(cells, "predicate_id"));
        rec.object_id = std::string(cell(cells, "object_id"));
        rec.mapping_justification = std::string(cell(cells, "mapping_justification"));
        if (const auto v = cell(cells, "subject_label"); !v.empty())
            rec.subject_label = std::string(v);
        if (const auto v = cell(cells, "object_label"); !v.empty())
            rec.object_label = std::string(v);
        if (const auto v = cell(cells, "comment"); !v.empty()) rec.comment = std::string(v);
        if (const auto v = cell(cells, "confidence"); !v.empty())
            rec.confidence = parse_number(v, "confidence", row);
        if (const auto v = cell(cells, "similarity_score"); !v.empty())
            rec.similarity_score = parse_number(v, "similarity_score", row);

        const std::array<std::string, 3> triple{rec.subject_id, rec.predicate_id,
                                                rec.object_id};
        if (const auto it = seen.find(triple); it != seen.end())
            throw DataError("duplicate mapping " + rec.subject_id + " " + rec.predicate_id +
                            " " + rec.object_id + " at rows " + std::to_string(it->second) +
                            " and " + std::to_string(row));
        seen.emplace(triple, row);

        try {
            set.add(std::move(rec));
        } catch (const DataError& e) {
            throw DataError("row " + std::to_string(row) + ": " + e.what());
        }
    }
    return set;
}

std::string write_sssom(const MappingSet& set) {
    std::string out;
    for (const auto& [key, value] : set.metadata()) {
        out += "#" + key + ": " + value + "\n";
    }
    out += header_line();
    out.push_back('\n');
    for (const MappingRecord& r : set.records()) {
        out += r.subject_id;
        out.push_back('\t');
        out += r.subject_label.value_or("");
        out.push_back('\t');
        out += r.predicate_id;
        out.push_back('\t');
        out += r.object_id;
        out.push_back('\t');
        out += r.object_label.value_or("");
        out.push_back('\t');
        out += r.mapping_justification;
        out.push_back('\t');
        if (r.confidence) out += format_trimmed(*r.confidence, 4);
        out.push_back('\t');
        if (r.similarity_score) out += format_trimmed(*r.similarity_score, 4);
        out.push_back('\t');
        out += r.comment.value_or("");
        out.push_back('\n');
    }
    return out;
}

std::pair<std::string, std::string> canonical_key(const MappingRecord& record,
                                                  bool source_first) {
    if (source_first || record.subject_id <= record.object_id)
        return {record.subject_id, record.object_id};
    return {record.object_id, record.subject_id};
}

MappingSet load_sssom_file(const std::filesystem::path& path,
                           std::vector<std::string>* warnings) {
    try {
        return parse_sssom(read_file(path), warnings);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_sssom_file(const std::filesystem::path& path, const MappingSet& set) {
    write_file_atomic(path, write_sssom(set));
}

} // namespace mappergpt
