#pragma once

#include <map>
#include <string>
#include <vector>

#include "algorec/eval/ground_truth.hpp"
#include "algorec/eval/pipeline.hpp"

namespace algorec::eval {

inline constexpr int kMinThreshold = 1;
inline constexpr int kMaxThreshold = 4;

struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    bool operator==(const Confusion&) const = default;
};

/// 0/0 counts as 0 in all three.
double precision(const Confusion& c);
double recall(const Confusion& c);
double f1_score(double precision, double recall);

/// Unweighted mean; 0 for an empty list.
double macro_f1(const std::vector<double>& f1s);

struct AlgorithmMetrics {
    std::string algorithm;
    Confusion confusion;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const AlgorithmMetrics&) const = default;
};

struct ThresholdMetrics {
    int st = kMinThreshold;
    std::vector<AlgorithmMetrics> per_algorithm;  ///< report order
    double macro_f1 = 0.0;

    bool operator==(const ThresholdMetrics&) const = default;
};

struct MetricsReport {
    std::string filter;
    std::string style;
    std::string backend;
    Mode mode = Mode::standard;
    std::vector<ThresholdMetrics> thresholds;  ///< ST 1..4
    int best_threshold = kMaxThreshold;        ///< argmax macro-F1, ties to the higher ST
    std::map<std::string, int> best_threshold_per_algorithm;
    double reduction_micro = 0.0;
    double reduction_macro = 0.0;
    std::map<std::string, double> reduction_per_algorithm;
    std::map<std::string, std::size_t> excluded_true_positives;
    std::map<std::string, std::size_t> errored;

    const ThresholdMetrics& at(int st) const;
    bool operator==(const MetricsReport&) const = default;
};

/// Confusion matrix of one algorithm at one threshold. A row is predicted
/// positive iff it was not excluded and raw_score >= st. Unlabeled rows are
/// ignored in standard mode and count as FP when predicted in lower-bound mode.
Confusion confusion_at(const std::vector<ResultRow>& rows, const std::string& algorithm, int st,
                       Mode mode);

/// Metrics for ST 1..4 under the run's own mode.
MetricsReport sweep_thresholds(const RunResults& results);

/// Relabels from `truth` and scores predictions on unknown methods as false
/// positives; precision and F1 become lower bounds.
MetricsReport lower_bound_mode(RunResults results, const GroundTruth& truth);

}  // namespace algorec::eval
