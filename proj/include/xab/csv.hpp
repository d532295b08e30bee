#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

namespace xab {

// Fixed notation with 9 significant digits, '.' separator, no grouping, no exponent.
std::string format_number(double v);

// Line-oriented CSV output. Opening throws IoError when the file cannot be created.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void header(std::initializer_list<std::string_view> columns);

    CsvWriter& field(std::string_view text);
    CsvWriter& field(double v);
    CsvWriter& field(std::uint64_t v);
    CsvWriter& field(std::int64_t v);
    CsvWriter& field(unsigned v) { return field(static_cast<std::uint64_t>(v)); }
    CsvWriter& field(int v) { return field(static_cast<std::int64_t>(v)); }
    void end_row();

    // Flushes and throws IoError if any write failed.
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    bool first_{true};
};

// Creates parent directories and checks that `path` can be opened for writing.
void ensure_writable(const std::filesystem::path& path);

} // namespace xab
