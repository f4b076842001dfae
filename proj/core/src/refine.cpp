#include "mappergpt/refine.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include "mappergpt/util.hpp"

namespace mappergpt {

namespace {

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    for (const std::string_view item : split(value, ';')) {
        const std::string_view t = trim(item);
        if (t.empty() || iequals(t, "NONE")) continue;
        out.emplace_back(t);
    }
    return out;
}

} // namespace

RefinementResult parse_response(std::string_view text,
                                std::vector<std::string>* warnings) {
    std::optional<std::string> category, confidence, similarities, differences;
    for (const std::string_view line : split_lines(text)) {
        const size_t colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        const std::string_view key = trim(line.substr(0, colon));
        const std::string_view value = trim(line.substr(colon + 1));
        // first occurrence of each key wins; everything else is ignored
        if (iequals(key, "category")) {
            if (!category) category = std::string(value);
        } else if (iequals(key, "confidence")) {
            if (!confidence) confidence = std::string(value);
        } else if (iequals(key, "similarities")) {
            if (!similarities) similarities = std::string(value);
        } else if (iequals(key, "differences")) {
            if (!differences) differences = std::string(value);
        }
    }

    RefinementResult result;
    result.raw_response = std::string(text);
    if (!category)
        throw ResponseParseError("response has no category line", result.raw_response);
    const auto cat = parse_category(*category);
    if (!cat)
        throw ResponseParseError("unrecognized category: '" + *category + "'",
                                 result.raw_response);
    result.category = *cat;

    if (!confidence) {
        warn(warnings, "response has no confidence line; defaulting to LOW");
        result.confidence = Confidence::Low;
    } else if (const auto conf = parse_confidence(*confidence)) {
        result.confidence = *conf;
    } else {
        warn(warnings,
             "unrecognized confidence '" + *confidence + "'; defaulting to LOW");
        result.confidence = Confidence::Low;
    }

    result.similarities = split_list(similarities.value_or(""));
    result.differences = split_list(differences.value_or(""));
    return result;
}

std::string_view category_to_predicate(Category c) {
    switch (c) {
        case Category::ExactMatch: return predicates::kExactMatch;
        case Category::RelatedTo: return predicates::kRelatedMatch;
        case Category::Different: return predicates::kDifferentFrom;
        case Category::BroaderThan: return predicates::kNarrowMatch;
        case Category::NarrowerThan: return predicates::kBroadMatch;
    }
    return predicates::kDifferentFrom;
}

double confidence_to_score(Confidence c) {
    switch (c) {
        case Confidence::High: return 0.9;
        case Confidence::Medium: return 0.6;
        case Confidence::Low: return 0.3;
    }
    return 0.3;
}

namespace {

void append_comment(MappingRecord& record, const std::string& note) {
    record.comment = record.comment ? *record.comment + " | " + note : note;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += "; ";
        out += items[i];
    }
    return out;
}

std::optional<std::string> review_comment(const RefinementResult& parsed) {
    std::string out;
    if (!parsed.similarities.empty()) out += "similarities: " + join(parsed.similarities);
    if (!parsed.differences.empty()) {
        if (!out.empty()) out += " | ";
        out += "differences: " + join(parsed.differences);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

} // namespace

RefineOutcome refine_mappings(const MappingSet& input, const Ontology& o1,
                              const Ontology& o2, CompletionBackend& backend,
                              const RefineConfig& config,
                              std::vector<std::string>* warnings) {
    const auto& records = input.records();
    const size_t n = records.size();

    RefineOutcome out;
    out.summary.total = n;
    for (const auto& [key, value] : input.metadata()) out.mappings.set_metadata(key, value);
    out.mappings.set_metadata("mapping_tool", "mappergpt-categorize-mappings");
    out.mappings.set_metadata("model", config.model_name);

    std::vector<std::optional<MappingRecord>> results(n);
    std::mutex mu; // guards summary counters and the caller's warnings sink

    const auto process = [&](size_t i) {
        const MappingRecord& rec = records[i];
        MappingRecord result = rec;
        std::vector<std::string> local_warnings;

        const Concept* a = o1.find(rec.subject_id);
        const Concept* b = o2.find(rec.object_id);
        if (!a || !b) {
            std::string note = "not_reviewed:";
            if (!a) note += " subject " + rec.subject_id + " not in source ontology";
            if (!a && !b) note += ";";
            if (!b) note += " object " + rec.object_id + " not in target ontology";
            append_comment(result, note);
            std::lock_guard lock(mu);
            ++out.summary.unresolved_passthrough;
            results[i] = std::move(result);
            return;
        }

        CompletionRequest request;
        request.model_name = config.model_name;
        request.prompt = generate_prompt(*a, *b, o1, o2, config.examples);
        request.temperature = config.temperature;
        request.max_output_tokens = config.max_output_tokens;

        std::string response;
        bool have_response = true;
        try {
            response = config.cache_dir.empty()
                           ? complete(backend, request)
                           : cached_complete(backend, config.cache_dir, request,
                                             &local_warnings);
        } catch (const BackendError& e) {
            if (!config.lenient) throw; // abort the whole run
            append_comment(result, std::string("review_failed: backend: ") + e.what());
            have_response = false;
        }

        {
            std::lock_guard lock(mu);
            if (!have_response) {
                ++out.summary.backend_failures;
            } else {
                try {
                    const RefinementResult parsed =
                        parse_response(response, &local_warnings);
                    result.predicate_id = std::string(category_to_predicate(parsed.category));
                    result.confidence = confidence_to_score(parsed.confidence);
                    result.mapping_justification =
                        std::string(justifications::kMappingReview);
                    result.comment = review_comment(parsed);
                    ++out.summary.reviewed;
                } catch (const ResponseParseError& e) {
                    append_comment(result, std::string("review_failed: ") + e.what());
                    ++out.summary.parse_failures;
                }
            }
            if (warnings)
                for (auto& w : local_warnings) warnings->push_back(std::move(w));
            results[i] = std::move(result);
        }
    };

    const int threads = std::max(1, config.parallel);
    if (threads == 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) process(i);
    } else {
        std::atomic<size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mu;
        const auto worker = [&] {
            while (!failed.load()) {
                const size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    process(i);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    break;
                }
            }
        };
        std::vector<std::thread> pool;
        const size_t count = std::min<size_t>(threads, n);
        pool.reserve(count);
        for (size_t t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (size_t i = 0; i < n; ++i) {
        try {
            out.mappings.add(std::move(*results[i]));
        } catch (const DataError& e) {
            throw DataError(std::string("refinement produced an invalid output mapping: ") +
                            e.what());
        }
    }
    return out;
}

} // namespace mappergpt
