#include "dualspin/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dualspin/errors.hpp"

namespace dualspin {

TableWriter::TableWriter(const std::filesystem::path& path,
                         const std::vector<std::string>& header_lines,
                         const std::vector<std::string>& columns)
    : path_(path) {
    for (const auto& line : header_lines) buffer_ += "# " + line + "\n";
    buffer_ += "#";
    for (const auto& c : columns) buffer_ += " " + c;
    buffer_ += "\n";
}

TableWriter::~TableWriter() {
    if (row_open_) buffer_ += "\n";
    std::ofstream out(path_, std::ios::binary);
    out << buffer_;
}

void TableWriter::sep() {
    if (row_open_) buffer_ += "\t";
    row_open_ = true;
}

void TableWriter::cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    sep();
    buffer_ += buf;
}

void TableWriter::cell(const std::string& v) {
    sep();
    buffer_ += v;
}

void TableWriter::cell(long long v) {
    sep();
    buffer_ += std::to_string(v);
}

void TableWriter::end_row() {
    buffer_ += "\n";
    row_open_ = false;
}

SeriesFile read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input table " + path.string());
    SeriesFile out;
    std::vector<double> t_col;
    std::string line;
    std::size_t n_cols = 0;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        std::vector<double> vals;
        double v;
        while (row >> v) vals.push_back(v);
        std::string trailing;
        if (!row.eof() && row.fail()) {
            row.clear();
            row >> trailing;
        }
        if (vals.empty() || !trailing.empty())
            throw ConfigError("malformed table row in " + path.string() + ": '" + line + "'");
        if (n_cols == 0) n_cols = vals.size();
        if (vals.size() != n_cols)
            throw ConfigError("inconsistent column count in " + path.string());
        if (n_cols == 1) {
            out.values.push_back(vals[0]);
        } else {
            t_col.push_back(vals[0]);
            out.values.push_back(vals[1]);
        }
    }
    if (out.values.empty()) throw ConfigError("no data rows in " + path.string());
    if (t_col.size() >= 2) {
        const double dt = (t_col.back() - t_col.front()) / static_cast<double>(t_col.size() - 1);
        if (dt > 0.0) out.sample_rate_hz = 1.0 / dt;
    }
    return out;
}

}  // namespace dualspin
