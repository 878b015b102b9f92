#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace khess::cli {

/// Malformed config file; the message names the source, line and field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid settings detected before any compute.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// `key = value` per line; blank lines and lines starting with '#' or ';' are skipped.
/// Keys are flag names without the leading dashes ('_' and '-' are interchangeable).
std::vector<ConfigEntry> parse_config(std::istream& in, const std::string& source);
std::vector<ConfigEntry> load_config(const std::filesystem::path& path);

/// Feeds config entries into the options of `app` that were not given on the
/// command line, so flags win. Unknown keys and unparsable values raise ConfigError.
void apply_config(CLI::App& app, const std::vector<ConfigEntry>& entries, const std::string& source);

/// KHESS_OUTPUT_ROOT if set, else the working directory; `out` is resolved against it.
std::filesystem::path resolve_output_dir(const std::string& out, const std::string& fallback);

}  // namespace khess::cli
