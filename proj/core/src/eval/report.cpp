#include "algorec/eval/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <tuple>

#include <fmt/format.h>

#include "algorec/errors.hpp"

namespace algorec::eval {

namespace {

void sort_reports(std::vector<MetricsReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const MetricsReport& a, const MetricsReport& b) {
                         return std::tie(a.filter, a.style, a.backend, a.mode) <
                                std::tie(b.filter, b.style, b.backend, b.mode);
                     });
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

nlohmann::json confusion_json(const Confusion& c) {
    return {{"TP", c.tp}, {"FP", c.fp}, {"FN", c.fn}, {"TN", c.tn}};
}

}  // namespace

void write_report_csv(std::vector<MetricsReport> reports, std::ostream& out) {
    sort_reports(reports);
    for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
        out << (i ? "," : "") << kReportColumns[i];
    }
    out << '\n';
    for (const auto& r : reports) {
        if (r.thresholds.empty()) {
            continue;
        }
        const auto& algorithms = r.thresholds.front().per_algorithm;
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            const std::string& algo = algorithms[a].algorithm;
            auto tps = r.excluded_true_positives.find(algo);
            for (const auto& t : r.thresholds) {
                const auto& m = t.per_algorithm[a];
                out << fmt::format("{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{}\n",
                                   csv_field(r.filter), csv_field(r.style), csv_field(r.backend),
                                   algo, t.st, m.precision, m.recall, m.f1, t.macro_f1,
                                   r.reduction_micro, r.reduction_macro,
                                   tps == r.excluded_true_positives.end() ? 0 : tps->second);
            }
        }
    }
}

nlohmann::json report_to_json(const MetricsReport& r) {
    nlohmann::json thresholds = nlohmann::json::array();
    for (const auto& t : r.thresholds) {
        nlohmann::json per = nlohmann::json::array();
        for (const auto& m : t.per_algorithm) {
            per.push_back({{"algorithm", m.algorithm},
                           {"confusion", confusion_json(m.confusion)},
                           {"precision", m.precision},
                           {"recall", m.recall},
                           {"f1", m.f1}});
        }
        thresholds.push_back({{"ST", t.st}, {"macro_f1", t.macro_f1}, {"per_algorithm", per}});
    }
    return {{"filter", r.filter},
            {"style", r.style},
            {"backend", r.backend},
            {"mode", std::string(to_string(r.mode))},
            {"thresholds", thresholds},
            {"best_threshold", r.best_threshold},
            {"best_threshold_per_algorithm", r.best_threshold_per_algorithm},
            {"reduction_micro", r.reduction_micro},
            {"reduction_macro", r.reduction_macro},
            {"reduction_per_algorithm", r.reduction_per_algorithm},
            {"excluded_true_positives", r.excluded_true_positives},
            {"errored", r.errored}};
}

MetricsReport report_from_json(const nlohmann::json& j) {
    MetricsReport r;
    try {
        r.filter = j.at("filter").get<std::string>();
        r.style = j.at("style").get<std::string>();
        r.backend = j.at("backend").get<std::string>();
        r.mode = parse_mode(j.at("mode").get<std::string>());
        for (const auto& tj : j.at("thresholds")) {
            ThresholdMetrics t;
            t.st = tj.at("ST").get<int>();
            t.macro_f1 = tj.at("macro_f1").get<double>();
            for (const auto& mj : tj.at("per_algorithm")) {
                AlgorithmMetrics m;
                m.algorithm = mj.at("algorithm").get<std::string>();
                const auto& c = mj.at("confusion");
                m.confusion = {c.at("TP").get<std::size_t>(), c.at("FP").get<std::size_t>(),
                               c.at("FN").get<std::size_t>(), c.at("TN").get<std::size_t>()};
                m.precision = mj.at("precision").get<double>();
                m.recall = mj.at("recall").get<double>();
                m.f1 = mj.at("f1").get<double>();
                t.per_algorithm.push_back(std::move(m));
            }
            r.thresholds.push_back(std::move(t));
        }
        r.best_threshold = j.at("best_threshold").get<int>();
        r.best_threshold_per_algorithm =
            j.at("best_threshold_per_algorithm").get<std::map<std::string, int>>();
        r.reduction_micro = j.at("reduction_micro").get<double>();
        r.reduction_macro = j.at("reduction_macro").get<double>();
        r.reduction_per_algorithm =
            j.at("reduction_per_algorithm").get<std::map<std::string, double>>();
        r.excluded_true_positives =
            j.at("excluded_true_positives").get<std::map<std::string, std::size_t>>();
        r.errored = j.value("errored", std::map<std::string, std::size_t>{});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
    return r;
}

nlohmann::json reports_to_json(std::vector<MetricsReport> reports) {
    sort_reports(reports);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back(report_to_json(r));
    }
    return {{"columns", kReportColumns}, {"reports", arr}};
}

std::vector<MetricsReport> reports_from_json(const nlohmann::json& j) {
    std::vector<MetricsReport> out;
    if (!j.contains("reports") || !j.at("reports").is_array()) {
        throw DataError("malformed report: missing 'reports' array");
    }
    for (const auto& r : j.at("reports")) {
        out.push_back(report_from_json(r));
    }
    return out;
}

void write_report_files(const std::vector<MetricsReport>& reports,
                        const std::filesystem::path& csv_path,
                        const std::filesystem::path& json_path) {
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) {
            throw DataError("cannot write " + csv_path.string());
        }
        write_report_csv(reports, csv);
        if (!csv) {
            throw DataError("cannot write " + csv_path.string());
        }
    }
    std::ofstream js(json_path, std::ios::binary);
    if (!js) {
        throw DataError("cannot write " + json_path.string());
    }
    js << reports_to_json(reports).dump(2) << '\n';
    if (!js) {
        throw DataError("cannot write " + json_path.string());
    }
}

}  // namespace algorec::eval
