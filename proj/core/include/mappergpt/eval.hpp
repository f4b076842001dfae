#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mappergpt/sssom.hpp"

namespace mappergpt {

struct EvalReport {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const EvalReport&) const = default;
};

/// Fills in P/R/F1 from the three counts. Zero denominators yield 0.
EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn);

/// Harmonic mean; 0 when both inputs are 0.
double f1_score(double precision, double recall);

struct CompareOptions {
    /// Compare (subject, object) pairs without regard to direction by
    /// sorting each pair lexicographically first.
    bool undirected = false;
    /// Restrict both sets to skos:exactMatch records before counting.
    bool exact_only = false;
};

/// Scores predicted against gold over (subject_id, object_id) pairs.
/// Duplicates collapse; predicates other than the gold filter do not matter
/// on the predicted side. Throws DataError when the effective gold set is
/// empty.
EvalReport compare(const MappingSet& predicted, const MappingSet& gold,
                   const CompareOptions& options = {});

struct ThresholdPoint {
    double threshold = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct ThresholdCurve {
    std::vector<ThresholdPoint> points; // ascending threshold
    double best_threshold = 0.0;        // highest F1, smallest threshold wins ties
    double best_f1 = 0.0;
};

/// Sweeps every distinct similarity_score in `scored` as a cutoff, keeping
/// records with score >= threshold, and scores each subset against gold
/// with compare(..., exact_only). A record without a similarity_score is an
/// error (the message names its position).
ThresholdCurve threshold_scan(const MappingSet& scored, const MappingSet& gold);

/// Joins two mapping sets that share a bridge vocabulary on the object
/// side: for every object_id appearing in exactMatch records of both, emits
/// one record per (left subject, right subject) pair, predicate
/// skos:exactMatch, justification semapv:ManualMappingCuration, with a
/// comment naming the bridge id. Output is deduplicated (first bridge wins)
/// and sorted by (subject_id, object_id). Disjoint bridge ids yield an
/// empty set with a recorded warning.
MappingSet bridge_testset(const MappingSet& left, const MappingSet& right,
                          std::vector<std::string>* warnings = nullptr);

/// CSV: header threshold,tp,fp,fn,precision,recall,f1; counts as integers,
/// ratios with six decimals.
std::string write_curve_csv(const ThresholdCurve& curve);

/// Flat key: value block, one metric per line, ratios with six decimals.
std::string write_report(const EvalReport& report);

/// Single-row TSV: a header line then one value row.
std::string write_report_tsv(const EvalReport& report);

} // namespace mappergpt
