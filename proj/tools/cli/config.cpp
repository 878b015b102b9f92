#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>

#include <CLI11.hpp>

namespace khess::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string where(const std::string& source, int line) { return source + ":" + std::to_string(line); }

}  // namespace

std::vector<ConfigEntry> parse_config(std::istream& in, const std::string& source) {
    std::vector<ConfigEntry> entries;
    std::map<std::string, int> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where(source, line) + ": expected 'key = value', got '" + text + "'");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(where(source, line) + ": missing key before '='");
        for (char& c : key) {
            if (c == '_') c = '-';
            const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
            if (!ok) throw ConfigError(where(source, line) + ": invalid character in key '" + key + "'");
        }
        if (value.empty()) throw ConfigError(where(source, line) + ", field '" + key + "': empty value");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (const auto it = seen.find(key); it != seen.end()) {
            throw ConfigError(where(source, line) + ", field '" + key + "': duplicate of line " +
                              std::to_string(it->second));
        }
        seen.emplace(key, line);
        entries.push_back({key, value, line});
    }
    return entries;
}

std::vector<ConfigEntry> load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

void apply_config(CLI::App& app, const std::vector<ConfigEntry>& entries, const std::string& source) {
    for (const ConfigEntry& e : entries) {
        CLI::Option* opt = e.key == "config" || e.key == "help" ? nullptr : app.get_option_no_throw("--" + e.key);
        if (opt == nullptr) {
            throw ConfigError(where(source, e.line) + ": unknown field '" + e.key + "' for '" + app.get_name() + "'");
        }
        if (opt->count() > 0) continue;
        try {
            opt->add_result(e.value);
            opt->run_callback();
        } catch (const CLI::Error& ex) {
            throw ConfigError(where(source, e.line) + ", field '" + e.key + "': " + ex.what());
        }
    }
}

std::filesystem::path resolve_output_dir(const std::string& out, const std::string& fallback) {
    const char* env = std::getenv("KHESS_OUTPUT_ROOT");
    const std::filesystem::path root = env != nullptr && *env != '\0' ? std::filesystem::path(env) : std::filesystem::path(".");
    return root / (out.empty() ? fallback : out);
}

}  // namespace khess::cli
