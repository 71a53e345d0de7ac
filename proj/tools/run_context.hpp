#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace algorec::cli {

namespace fs = std::filesystem;

/// Splices values from a JSON config file into the argument list. Keys are
/// long flag names, either at top level or under a section named after the
/// subcommand. Flags given on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args,
                                       const std::vector<std::string>& subcommands);

/// Data directory: --data-dir, then $ALGOREC_DATA_DIR, then the build default.
fs::path resolve_data_dir(const std::string& flag);

/// Collects inputs and outputs of one subcommand run for its manifest.
class RunContext {
public:
    /// `out` is either a directory (manifest.json goes inside) or a file
    /// (the manifest is written next to it as <file>.manifest.json).
    RunContext(std::string command, fs::path out, bool out_is_dir, const CLI::App& sub,
               std::vector<std::string> argv);

    const fs::path& out() const { return out_; }
    /// Registers an output; relative names resolve inside the output directory.
    fs::path output(const fs::path& name);
    void input(const std::string& role, const fs::path& path);
    void set(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }
    void write_manifest() const;

private:
    std::string command_;
    fs::path out_;
    fs::path dir_;
    fs::path manifest_;
    nlohmann::json options_;
    std::vector<std::string> argv_;
    std::vector<std::string> outputs_;
    nlohmann::json inputs_ = nlohmann::json::object();
    nlohmann::json extra_ = nlohmann::json::object();
};

}  // namespace algorec::cli
