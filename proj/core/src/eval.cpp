#include "mappergpt/eval.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "mappergpt/errors.hpp"
#include "mappergpt/util.hpp"

namespace mappergpt {

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn) {
    EvalReport report;
    report.true_positives = tp;
    report.false_positives = fp;
    report.false_negatives = fn;
    if (tp + fp > 0) report.precision = static_cast<double>(tp) / (tp + fp);
    if (tp + fn > 0) report.recall = static_cast<double>(tp) / (tp + fn);
    report.f1 = f1_score(report.precision, report.recall);
    return report;
}

double f1_score(double precision, double recall) {
    if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0)
        throw DataError("precision/recall out of [0,1]");
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

namespace {

std::set<std::pair<std::string, std::string>> pair_keys(const MappingSet& set,
                                                        const CompareOptions& options) {
    std::set<std::pair<std::string, std::string>> keys;
    for (const MappingRecord& r : set.records()) {
        if (options.exact_only && r.predicate_id != predicates::kExactMatch) continue;
        keys.insert(canonical_key(r, /*source_first=*/!options.undirected));
    }
    return keys;
}

} // namespace

EvalReport compare(const MappingSet& predicted, const MappingSet& gold,
                   const CompareOptions& options) {
    const auto gold_keys = pair_keys(gold, options);
    if (gold_keys.empty())
        throw DataError(gold.empty() ? "gold set is empty"
                                     : "gold set has no skos:exactMatch records");
    const auto predicted_keys = pair_keys(predicted, options);

    std::size_t tp = 0;
    for (const auto& key : predicted_keys) tp += gold_keys.count(key);
    return make_report(tp, predicted_keys.size() - tp, gold_keys.size() - tp);
}

ThresholdCurve threshold_scan(const MappingSet& scored, const MappingSet& gold) {
    CompareOptions options;
    options.exact_only = true;

    const auto& records = scored.records();
    for (size_t i = 0; i < records.size(); ++i) {
        if (!records[i].similarity_score)
            throw DataError("record " + std::to_string(i + 1) + " (" +
                            records[i].subject_id + " -> " + records[i].object_id +
                            ") has no similarity_score");
    }
    if (pair_keys(gold, options).empty())
        throw DataError(gold.empty() ? "gold set is empty"
                                     : "gold set has no skos:exactMatch records");

    std::set<double> thresholds;
    for (const MappingRecord& r : records) thresholds.insert(*r.similarity_score);

    ThresholdCurve curve;
    for (const double t : thresholds) {
        MappingSet subset;
        for (const MappingRecord& r : records)
            if (*r.similarity_score >= t) subset.add(r);
        const EvalReport report = compare(subset, gold, options);
        curve.points.push_back({t, report.true_positives, report.false_positives,
                                report.false_negatives, report.precision, report.recall,
                                report.f1});
        // strictly-greater keeps the smallest threshold on an F1 tie
        if (curve.points.size() == 1 || report.f1 > curve.best_f1) {
            curve.best_f1 = report.f1;
            curve.best_threshold = t;
        }
    }
    return curve;
}

MappingSet bridge_testset(const MappingSet& left, const MappingSet& right,
                          std::vector<std::string>* warnings) {
    std::unordered_map<std::string, std::vector<const MappingRecord*>> right_by_bridge;
    for (const MappingRecord& r : right.records())
        if (r.predicate_id == predicates::kExactMatch)
            right_by_bridge[r.object_id].push_back(&r);

    std::map<std::pair<std::string, std::string>, MappingRecord> joined;
    bool any_bridge = false;
    for (const MappingRecord& l : left.records()) {
        if (l.predicate_id != predicates::kExactMatch) continue;
        const auto hit = right_by_bridge.find(l.object_id);
        if (hit == right_by_bridge.end()) continue;
        any_bridge = true;
        for (const MappingRecord* r : hit->second) {
            const std::pair<std::string, std::string> key{l.subject_id, r->subject_id};
            if (joined.count(key)) continue; // first bridge wins
            MappingRecord g;
            g.subject_id = l.subject_id;
            g.subject_label = l.subject_label;
            g.predicate_id = std::string(predicates::kExactMatch);
            g.object_id = r->subject_id;
            g.object_label = r->subject_label;
            g.mapping_justification = std::string(justifications::kManualMappingCuration);
            g.comment = "bridge: " + l.object_id;
            joined.emplace(std::move(key), std::move(g));
        }
    }
    if (!any_bridge && warnings)
        warnings->push_back("no shared bridge ids between the two mapping sets");

    MappingSet out;
    out.set_metadata("mapping_tool", "mappergpt-make-testset");
    for (auto& [key, record] : joined) out.add(std::move(record));
    return out;
}

std::string write_curve_csv(const ThresholdCurve& curve) {
    std::string out = "threshold,tp,fp,fn,precision,recall,f1\n";
    for (const ThresholdPoint& p : curve.points) {
        out += format_fixed(p.threshold, 6) + "," + std::to_string(p.tp) + "," +
               std::to_string(p.fp) + "," + std::to_string(p.fn) + "," +
               format_fixed(p.precision, 6) + "," + format_fixed(p.recall, 6) + "," +
               format_fixed(p.f1, 6) + "\n";
    }
    return out;
}

std::string write_report(const EvalReport& report) {
    return "true_positives: " + std::to_string(report.true_positives) +
           "\nfalse_positives: " + std::to_string(report.false_positives) +
           "\nfalse_negatives: " + std::to_string(report.false_negatives) +
           "\nprecision: " + format_fixed(report.precision, 6) +
           "\nrecall: " + format_fixed(report.recall, 6) +
           "\nf1: " + format_fixed(report.f1, 6) + "\n";
}

std::string write_report_tsv(const EvalReport& report) {
    return "true_positives\tfalse_positives\tfalse_negatives\tprecision\trecall\tf1\n" +
           std::to_string(report.true_positives) + "\t" +
           std::to_string(report.false_positives) + "\t" +
           std::to_string(report.false_negatives) + "\t" +
           format_fixed(report.precision, 6) + "\t" + format_fixed(report.recall, 6) +
           "\t" + format_fixed(report.f1, 6) + "\n";
}

} // namespace mappergpt
