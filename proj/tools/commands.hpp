#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace algorec::cli {

/// Option storage and handlers for every subcommand.
class Commands {
public:
    void setup(CLI::App& app);

    /// Runs the parsed subcommand and returns the process exit code.
    int run(const std::vector<std::string>& argv);

    static const std::vector<std::string>& names();

private:
    int extract(const std::vector<std::string>& argv);
    int filter(const std::vector<std::string>& argv, bool structural);
    int classify(const std::vector<std::string>& argv);
    int obfuscate(const std::vector<std::string>& argv);
    int split(const std::vector<std::string>& argv);
    int evaluate(const std::vector<std::string>& argv);
    int report(const std::vector<std::string>& argv);
    int sweep(const std::vector<std::string>& argv);

    CLI::App* app_ = nullptr;
    CLI::App* extract_ = nullptr;
    CLI::App* filter_ = nullptr;
    CLI::App* filter_keyword_ = nullptr;
    CLI::App* filter_structural_ = nullptr;
    CLI::App* classify_ = nullptr;
    CLI::App* obfuscate_ = nullptr;
    CLI::App* split_ = nullptr;
    CLI::App* evaluate_ = nullptr;
    CLI::App* report_ = nullptr;
    CLI::App* sweep_ = nullptr;

    std::string data_dir_;
    bool quiet_ = false;

    std::string input_;
    std::string corpus_;
    std::string truth_;
    std::string out_ = "out";
    std::string patterns_;
    std::string family_;
    std::vector<std::string> algorithms_;
    std::string style_ = "score";
    std::vector<std::string> styles_;
    std::string backend_ = "mock";
    std::string examples_;
    std::size_t parallelism_ = 1;
    std::string cache_;
    bool lenient_ = false;
    int max_retries_ = 3;
    std::uint64_t seed_ = 1;
    bool strip_comments_ = false;
    double ratio_ = 0.7;
    double keep_fraction_ = 0.0;
    std::vector<std::string> thin_;
    std::string filter_kind_ = "none";
    std::vector<std::string> filters_;
    std::string mode_ = "standard";
    std::string split_part_ = "all";
    std::string split_file_;
    bool per_algorithm_threshold_ = false;
    std::vector<std::string> results_;
};

}  // namespace algorec::cli
