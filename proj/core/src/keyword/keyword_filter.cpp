#include "algorec/keyword/keyword_filter.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"

namespace algorec::keyword {

namespace fs = std::filesystem;

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

bool is_plain(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return is_word_char(static_cast<unsigned char>(c));
    });
}

/// True when an identifier segment starts or ends between text[p-1] and text[p].
bool segment_boundary(std::string_view text, std::size_t p) {
    if (p == 0 || p >= text.size()) {
        return true;
    }
    const auto a = static_cast<unsigned char>(text[p - 1]);
    const auto b = static_cast<unsigned char>(text[p]);
    if (!std::isalnum(a) || !std::isalnum(b)) {
        return true;
    }
    if (std::isdigit(a) != std::isdigit(b)) {
        return true;
    }
    if (std::islower(a) && std::isupper(b)) {
        return true;
    }
    // "HTTPServer": the segment break sits before the 'S'.
    if (std::isupper(a) && std::isupper(b) && p + 1 < text.size() &&
        std::islower(static_cast<unsigned char>(text[p + 1]))) {
        return true;
    }
    return false;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

/// Rewrites unescaped '.' outside character classes to "[\s\S]".
std::string dot_matches_all(std::string_view re) {
    std::string out;
    bool in_class = false;
    for (std::size_t i = 0; i < re.size(); ++i) {
        const char c = re[i];
        if (c == '\\' && i + 1 < re.size()) {
            out.push_back(c);
            out.push_back(re[++i]);
            continue;
        }
        if (in_class) {
            if (c == ']') {
                in_class = false;
            }
            out.push_back(c);
        } else if (c == '[') {
            in_class = true;
            out.push_back(c);
        } else if (c == '.') {
            out += "[\\s\\S]";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read pattern file " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void append_file(const fs::path& path, std::vector<KeywordPattern>& out) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw PatternError(path.string() + ": malformed JSON: " + e.what());
    }
    try {
        if (doc.is_array()) {
            for (const auto& spec : doc) {
                out.push_back(compile_pattern(spec));
            }
        } else {
            out.push_back(compile_pattern(doc));
        }
    } catch (const PatternError& e) {
        throw PatternError(path.string() + ": " + e.what());
    }
}

}  // namespace

std::string_view to_string(Combinator c) { return c == Combinator::any_of ? "any_of" : "all_of"; }

std::string_view to_string(Family f) {
    return f == Family::recall_focused ? "recall_focused" : "recall_focused_enhanced";
}

KeywordRegex::KeywordRegex(std::string source) : source_(std::move(source)) {
    plain_ = is_plain(source_);
    if (plain_) {
        folded_ = lower(source_);
        return;
    }
    if (source_.empty()) {
        throw PatternError("empty regex");
    }
    try {
        re_ = std::regex(dot_matches_all(source_),
                         std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    } catch (const std::regex_error& e) {
        throw PatternError("invalid regex '" + source_ + "': " + e.what());
    }
}

bool KeywordRegex::matches(std::string_view text) const {
    if (!plain_) {
        return std::regex_search(text.begin(), text.end(), re_);
    }
    const std::string folded = lower(text);
    for (std::size_t pos = folded.find(folded_); pos != std::string::npos;
         pos = folded.find(folded_, pos + 1)) {
        if (segment_boundary(text, pos) && segment_boundary(text, pos + folded_.size())) {
            return true;
        }
    }
    return false;
}

KeywordPattern compile_pattern(const nlohmann::json& spec) {
    if (!spec.is_object()) {
        throw PatternError("keyword pattern must be a JSON object");
    }
    KeywordPattern p;
    const std::string algo = spec.value("algorithm", std::string());
    const auto id = resolve_algorithm(algo);
    if (!id) {
        throw PatternError("unknown algorithm '" + algo + "'");
    }
    p.algorithm = *id;
    const std::string label = "pattern '" + p.algorithm + "'";

    const std::string family = spec.value("family", std::string("recall_focused"));
    if (family == "recall_focused") {
        p.family = Family::recall_focused;
    } else if (family == "recall_focused_enhanced") {
        p.family = Family::recall_focused_enhanced;
    } else {
        throw PatternError(label + ": unknown family '" + family + "'");
    }
    const std::string comb = spec.value("combinator", std::string("any_of"));
    if (comb == "any_of") {
        p.combinator = Combinator::any_of;
    } else if (comb == "all_of") {
        p.combinator = Combinator::all_of;
    } else {
        throw PatternError(label + ": unknown combinator '" + comb + "'");
    }
    p.reconstructed = spec.value("reconstructed", false);

    if (!spec.contains("groups") || !spec.at("groups").is_array() || spec.at("groups").empty()) {
        throw PatternError(label + ": needs at least one group");
    }
    for (const auto& g : spec.at("groups")) {
        KeywordGroup group;
        if (!g.contains("regexes") || !g.at("regexes").is_array() || g.at("regexes").empty()) {
            throw PatternError(label + ": group without regexes");
        }
        for (const auto& r : g.at("regexes")) {
            if (!r.is_string()) {
                throw PatternError(label + ": regexes must be strings");
            }
            try {
                group.regexes.emplace_back(r.get<std::string>());
            } catch (const PatternError& e) {
                throw PatternError(label + ": " + e.what());
            }
        }
        const auto& thr = g.value("threshold", nlohmann::json(1));
        if (!thr.is_number_integer() || thr.get<long long>() < 1 ||
            thr.get<long long>() > static_cast<long long>(group.regexes.size())) {
            throw PatternError(label + ": threshold " + thr.dump() + " outside [1, " +
                               std::to_string(group.regexes.size()) + "]");
        }
        group.threshold = thr.get<std::size_t>();
        p.groups.push_back(std::move(group));
    }
    return p;
}

std::vector<KeywordPattern> load_patterns(const fs::path& path) {
    std::vector<KeywordPattern> out;
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        throw DataError("pattern path does not exist: " + path.string());
    }
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(path)) {
            if (e.is_regular_file() && e.path().extension() == ".json") {
                files.push_back(e.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            append_file(f, out);
        }
    } else {
        append_file(path, out);
    }
    return out;
}

nlohmann::json pattern_to_json(const KeywordPattern& pattern) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : pattern.groups) {
        nlohmann::json regexes = nlohmann::json::array();
        for (const auto& r : g.regexes) {
            regexes.push_back(r.source());
        }
        groups.push_back({{"regexes", regexes}, {"threshold", g.threshold}});
    }
    return {{"algorithm", pattern.algorithm},
            {"family", to_string(pattern.family)},
            {"combinator", to_string(pattern.combinator)},
            {"groups", groups},
            {"reconstructed", pattern.reconstructed}};
}

KeywordDecision evaluate(const KeywordPattern& pattern, std::string_view source) {
    KeywordDecision d;
    for (const auto& g : pattern.groups) {
        std::size_t hits = 0;
        for (const auto& r : g.regexes) {
            if (r.matches(source)) {
                ++hits;
            }
        }
        d.group_hits.push_back(hits);
        d.group_satisfied.push_back(hits >= g.threshold);
    }
    const auto& sat = d.group_satisfied;
    d.passed = pattern.combinator == Combinator::any_of
                   ? std::any_of(sat.begin(), sat.end(), [](bool b) { return b; })
                   : std::all_of(sat.begin(), sat.end(), [](bool b) { return b; });
    return d;
}

std::size_t distinct_hits(const KeywordPattern& pattern, std::string_view source) {
    std::set<std::string> hit;
    for (const auto& g : pattern.groups) {
        for (const auto& r : g.regexes) {
            if (!hit.count(r.source()) && r.matches(source)) {
                hit.insert(r.source());
            }
        }
    }
    return hit.size();
}

FilterResult filter_corpus(const KeywordPattern& pattern,
                           const std::vector<code_model::MethodRecord>& records) {
    FilterResult out;
    out.decisions.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        out.decisions.push_back(evaluate(pattern, records[i]));
        (out.decisions.back().passed ? out.passed : out.excluded).push_back(i);
    }
    out.reduction = records.empty() ? 0.0
                                    : static_cast<double>(out.excluded.size()) /
                                          static_cast<double>(records.size());
    return out;
}

}  // namespace algorec::keyword
