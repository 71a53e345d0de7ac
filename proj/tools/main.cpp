#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algorec/errors.hpp"
#include "commands.hpp"
#include "run_context.hpp"

int main(int argc, char** argv) {
    using namespace algorec;
    std::vector<std::string> args(argv, argv + argc);

    CLI::App app{"Algorithm recognition in Java code with static filters and LLM scoring"};
    app.name("algorec");
    cli::Commands commands;
    commands.setup(app);

    try {
        args = cli::expand_config(args, cli::Commands::names());
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        return commands.run(args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BackendError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
