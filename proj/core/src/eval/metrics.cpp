#include "algorec/eval/metrics.hpp"

#include <cmath>
#include <set>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"

namespace algorec::eval {

double precision(const Confusion& c) {
    const auto d = c.tp + c.fp;
    return d == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(d);
}

double recall(const Confusion& c) {
    const auto d = c.tp + c.fn;
    return d == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(d);
}

double f1_score(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

namespace {

double mean(const std::vector<double>& v) {
    if (v.empty()) {
        return 0.0;
    }
    // Neumaier compensated summation.
    double sum = 0.0;
    double carry = 0.0;
    for (double x : v) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return (sum + carry) / static_cast<double>(v.size());
}

}  // namespace

double macro_f1(const std::vector<double>& f1s) { return mean(f1s); }

const ThresholdMetrics& MetricsReport::at(int st) const {
    for (const auto& t : thresholds) {
        if (t.st == st) {
            return t;
        }
    }
    throw Error("no metrics for score threshold " + std::to_string(st));
}

Confusion confusion_at(const std::vector<ResultRow>& rows, const std::string& algorithm, int st,
                       Mode mode) {
    Confusion c;
    for (const auto& r : rows) {
        if (r.algorithm != algorithm) {
            continue;
        }
        const bool predicted = !r.excluded && r.raw_score && *r.raw_score >= st;
        if (!r.label) {
            if (mode == Mode::lower_bound && predicted) {
                ++c.fp;
            }
            continue;
        }
        if (*r.label == Label::positive) {
            ++(predicted ? c.tp : c.fn);
        } else {
            ++(predicted ? c.fp : c.tn);
        }
    }
    return c;
}

MetricsReport sweep_thresholds(const RunResults& results) {
    MetricsReport report;
    report.filter = results.filter;
    report.style = results.style;
    report.backend = results.backend;
    report.mode = results.mode;

    std::set<std::string> present;
    for (const auto& r : results.rows) {
        present.insert(r.algorithm);
    }
    std::vector<std::string> algorithms;
    for (const auto& a : kAlgorithms) {
        if (present.count(std::string(a.id))) {
            algorithms.emplace_back(a.id);
        }
    }

    for (int st = kMinThreshold; st <= kMaxThreshold; ++st) {
        ThresholdMetrics t;
        t.st = st;
        std::vector<double> f1s;
        for (const auto& algo : algorithms) {
            AlgorithmMetrics m;
            m.algorithm = algo;
            m.confusion = confusion_at(results.rows, algo, st, results.mode);
            m.precision = precision(m.confusion);
            m.recall = recall(m.confusion);
            m.f1 = f1_score(m.precision, m.recall);
            f1s.push_back(m.f1);
            t.per_algorithm.push_back(std::move(m));
        }
        t.macro_f1 = macro_f1(f1s);
        report.thresholds.push_back(std::move(t));
    }

    report.best_threshold = kMaxThreshold;
    double best = report.at(kMaxThreshold).macro_f1;
    for (int st = kMaxThreshold - 1; st >= kMinThreshold; --st) {
        if (report.at(st).macro_f1 > best) {
            best = report.at(st).macro_f1;
            report.best_threshold = st;
        }
    }
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        int best_st = kMaxThreshold;
        double best_f1 = report.at(kMaxThreshold).per_algorithm[i].f1;
        for (int st = kMaxThreshold - 1; st >= kMinThreshold; --st) {
            if (report.at(st).per_algorithm[i].f1 > best_f1) {
                best_f1 = report.at(st).per_algorithm[i].f1;
                best_st = st;
            }
        }
        report.best_threshold_per_algorithm[algorithms[i]] = best_st;
    }

    std::map<std::string, std::size_t> total;
    std::map<std::string, std::size_t> excluded;
    for (const auto& r : results.rows) {
        ++total[r.algorithm];
        if (r.excluded) {
            ++excluded[r.algorithm];
            if (r.label == Label::positive) {
                ++report.excluded_true_positives[r.algorithm];
            }
        }
        if (!r.error_kind.empty()) {
            ++report.errored[r.algorithm];
        }
    }
    std::size_t all = 0;
    std::size_t all_excluded = 0;
    std::vector<double> per_algo;
    for (const auto& algo : algorithms) {
        const double red =
            static_cast<double>(excluded[algo]) / static_cast<double>(total[algo]);
        report.reduction_per_algorithm[algo] = red;
        report.excluded_true_positives.try_emplace(algo, 0);
        per_algo.push_back(red);
        all += total[algo];
        all_excluded += excluded[algo];
    }
    report.reduction_micro =
        all == 0 ? 0.0 : static_cast<double>(all_excluded) / static_cast<double>(all);
    report.reduction_macro = mean(per_algo);
    return report;
}

MetricsReport lower_bound_mode(RunResults results, const GroundTruth& truth) {
    relabel(results, truth);
    results.mode = Mode::lower_bound;
    return sweep_thresholds(results);
}

}  // namespace algorec::eval
