#include "xab/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "xab/errors.hpp"

namespace xab {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    const double mag = std::abs(v);
    const int exponent = mag == 0.0 ? 0 : static_cast<int>(std::floor(std::log10(mag)));
    const int decimals = std::max(0, 8 - exponent);
    std::array<char, 400> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
    for (auto c : columns) field(c);
    end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
    if (!first_) out_ << ',';
    first_ = false;
    out_ << text;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(std::string_view(format_number(v))); }

CsvWriter& CsvWriter::field(std::uint64_t v) { return field(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::field(std::int64_t v) { return field(std::string_view(std::to_string(v))); }

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) throw IoError("write to '" + path_.string() + "' failed");
    out_.close();
}

void ensure_writable(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    const bool existed = std::filesystem::exists(path);
    {
        std::ofstream probe(path, std::ios::binary | std::ios::app);
        if (!probe) throw IoError("cannot write to '" + path.string() + "'");
    }
    if (!existed) std::filesystem::remove(path, ec);
}

} // namespace xab
