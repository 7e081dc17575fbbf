#ifndef PCSLAB_CONFIG_HPP
#define PCSLAB_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace pcslab {

/// One key=value line of a plain-text config; '#' starts a comment.
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
    int col = 0;
};

struct ParsedConfig {
    std::vector<ConfigEntry> entries;
};

struct ConfigError : std::runtime_error {
    int line, col;
    ConfigError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

} // namespace pcslab

#endif
