#include "algorec/algorithms.hpp"

#include <cctype>

#include "algorec/errors.hpp"

namespace algorec {

namespace {

std::string fold(std::string_view s) {
    std::string out;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) {
            out.push_back(static_cast<char>(std::tolower(u)));
        }
    }
    return out;
}

}  // namespace

std::optional<std::string> resolve_algorithm(std::string_view name) {
    const std::string key = fold(name);
    for (const auto& a : kAlgorithms) {
        if (key == fold(a.id) || key == fold(a.display_name)) {
            return std::string(a.id);
        }
    }
    if (key == "greatestcommondivisor") {
        return std::string("gcd");
    }
    return std::nullopt;
}

std::string_view display_name(std::string_view id) {
    for (const auto& a : kAlgorithms) {
        if (a.id == id) {
            return a.display_name;
        }
    }
    throw DataError("unknown algorithm '" + std::string(id) + "'");
}

std::size_t algorithm_rank(std::string_view id) {
    for (std::size_t i = 0; i < kAlgorithms.size(); ++i) {
        if (kAlgorithms[i].id == id) {
            return i;
        }
    }
    return kAlgorithms.size();
}

}  // namespace algorec
