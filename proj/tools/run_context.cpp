#include "run_context.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "algorec/errors.hpp"
#include "algorec/hashing.hpp"

namespace algorec::cli {

namespace {

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

void append_flag(std::vector<std::string>& out, const std::string& key, const nlohmann::json& v) {
    const std::string flag = "--" + key;
    if (v.is_boolean()) {
        if (v.get<bool>()) {
            out.push_back(flag);
        }
    } else if (v.is_array()) {
        for (const auto& e : v) {
            out.push_back(flag);
            out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
        }
    } else if (v.is_string()) {
        out.push_back(flag);
        out.push_back(v.get<std::string>());
    } else if (v.is_number()) {
        out.push_back(flag);
        out.push_back(v.dump());
    } else {
        throw ConfigError("config key '" + key + "' must be a string, number, bool or list");
    }
}

}  // namespace

std::vector<std::string> expand_config(std::vector<std::string> args,
                                       const std::vector<std::string>& subcommands) {
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (config_path.empty()) {
        return args;
    }
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + config_path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(config_path + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(config_path + ": config must be a JSON object");
    }

    // The subcommand path is the first run of known subcommand names; global
    // options may come before it.
    auto is_subcommand = [&](const std::string& a) {
        return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
    };
    std::size_t insert_at = 1;
    while (insert_at < args.size() && !is_subcommand(args[insert_at])) {
        ++insert_at;
    }
    if (insert_at == args.size()) {
        insert_at = 1;
    }
    std::vector<std::string> path;
    while (insert_at < args.size() &&
           std::find(subcommands.begin(), subcommands.end(), args[insert_at]) != subcommands.end()) {
        path.push_back(args[insert_at]);
        ++insert_at;
    }
    if (path.empty() && doc.contains("command") && doc.at("command").is_string()) {
        std::string cmd = doc.at("command").get<std::string>();
        std::size_t start = 0;
        while (start < cmd.size()) {
            const auto sp = cmd.find(' ', start);
            const auto word = cmd.substr(start, sp == std::string::npos ? sp : sp - start);
            if (!word.empty()) {
                args.insert(args.begin() + static_cast<long>(insert_at++), word);
                path.push_back(word);
            }
            start = sp == std::string::npos ? cmd.size() : sp + 1;
        }
    }

    std::vector<std::string> injected;
    auto take = [&](const nlohmann::json& section) {
        for (const auto& [key, value] : section.items()) {
            if (key == "command" || value.is_object()) {
                continue;
            }
            if (!flag_given(args, key) && !flag_given(injected, key)) {
                append_flag(injected, key, value);
            }
        }
    };
    // The most specific section is applied first so it wins over top-level keys.
    for (std::size_t depth = path.size(); depth > 0; --depth) {
        const nlohmann::json* section = &doc;
        for (std::size_t k = 0; k < depth && section; ++k) {
            section = section->contains(path[k]) && section->at(path[k]).is_object()
                          ? &section->at(path[k])
                          : nullptr;
        }
        if (section) {
            take(*section);
        }
    }
    take(doc);
    args.insert(args.begin() + static_cast<long>(insert_at), injected.begin(), injected.end());
    return args;
}

fs::path resolve_data_dir(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("ALGOREC_DATA_DIR"); env && *env) {
        return env;
    }
    return ALGOREC_DATA_DIR;
}

RunContext::RunContext(std::string command, fs::path out, bool out_is_dir, const CLI::App& sub,
                       std::vector<std::string> argv)
    : command_(std::move(command)), out_(std::move(out)), argv_(std::move(argv)) {
    dir_ = out_is_dir ? out_ : out_.parent_path();
    manifest_ = out_is_dir ? out_ / "manifest.json"
                           : dir_ / (out_.filename().string() + ".manifest.json");
    if (!dir_.empty()) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) {
            throw DataError("cannot create output directory " + dir_.string());
        }
    }
    options_ = nlohmann::json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") {
            continue;
        }
        if (opt->get_type_size() == 0) {
            options_[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            const auto& r = opt->results();
            options_[name] = opt->get_expected_max() > 1 ? nlohmann::json(r) : nlohmann::json(r.back());
        } else if (!opt->get_default_str().empty()) {
            options_[name] = opt->get_default_str();
        }
    }
}

fs::path RunContext::output(const fs::path& name) {
    const fs::path p = name.is_absolute() || name == out_ ? name : dir_ / name;
    outputs_.push_back(p.string());
    return p;
}

void RunContext::input(const std::string& role, const fs::path& path) {
    nlohmann::json j = {{"path", path.string()}};
    if (fs::is_regular_file(path)) {
        std::ifstream in(path, std::ios::binary);
        const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        j["sha256"] = sha256_hex(bytes);
    }
    inputs_[role] = j;
}

void RunContext::write_manifest() const {
    nlohmann::json m = {{"tool", "algorec"},
                        {"version", ALGOREC_VERSION},
                        {"command", command_},
                        {"argv", argv_},
                        {"options", options_},
                        {"inputs", inputs_},
                        {"outputs", outputs_}};
    for (const auto& [k, v] : extra_.items()) {
        m[k] = v;
    }
    std::ofstream out(manifest_, std::ios::binary);
    out << m.dump(2) << '\n';
    if (!out) {
        throw DataError("cannot write manifest " + manifest_.string());
    }
}

}  // namespace algorec::cli
