// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pchaos {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::runtime_error naming it when absent.
    std::size_t column(std::string_view name) const;
};

/// Minimal comma-separated reader (no quoting); blank lines are skipped.
CsvTable read_csv(std::istream& in, const std::string& source);
CsvTable read_csv(const std::filesystem::path& path);

/// Parses a whole field as a double; errors carry source and line number.
double parse_double(std::string_view field, const std::string& source, std::size_t line);

/// Shortest round-trippable text for a double ("%.17g").
std::string format_double(double value);

/// Writes `text` to `path`, creating parent directories. Throws with the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pchaos
