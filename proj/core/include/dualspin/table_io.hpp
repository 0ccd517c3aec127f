#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dualspin {

/// Plain-text column table with '#'-prefixed header lines. All floating
/// point values are written with 9 significant digits.
class TableWriter {
public:
    TableWriter(const std::filesystem::path& path, const std::vector<std::string>& header_lines,
                const std::vector<std::string>& columns);
    ~TableWriter();

    TableWriter(const TableWriter&) = delete;
    TableWriter& operator=(const TableWriter&) = delete;

    void cell(double v);
    void cell(const std::string& v);
    void cell(long long v);
    void end_row();

private:
    std::string buffer_;
    std::filesystem::path path_;
    bool row_open_ = false;
    void sep();
};

/// Reads a numeric series from a column table: the second column of a
/// (t, value) table, or the only column of a single-column one. '#'
/// comment lines and blank lines are skipped. Returns the sample rate
/// inferred from the t column (1.0 when there is none).
struct SeriesFile {
    std::vector<double> values;
    double sample_rate_hz = 1.0;
};

SeriesFile read_series(const std::filesystem::path& path);

}  // namespace dualspin
