#include "amt/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace amt {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
    if (header_written_)
        throw argument_error("CsvWriter: metadata must precede the header row");
    buf_ += "# " + key + " = " + value + "\n";
}

void CsvWriter::metadata(const std::string& key, double value) {
    metadata(key, format_double(value));
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    if (header_written_) throw argument_error("CsvWriter: header already written");
    if (columns.empty()) throw argument_error("CsvWriter: header needs at least one column");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += columns[i];
    }
    buf_ += '\n';
    columns_ = columns.size();
    header_written_ = true;
}

void CsvWriter::cell(double v) { cell(format_double(v)); }

void CsvWriter::cell(const std::string& v) {
    if (!header_written_) throw argument_error("CsvWriter: write the header before cells");
    if (row_cells_ >= columns_) throw argument_error("CsvWriter: too many cells in row");
    if (row_cells_) buf_ += ',';
    buf_ += v;
    ++row_cells_;
}

void CsvWriter::end_row() {
    if (row_cells_ != columns_)
        throw argument_error("CsvWriter: row has " + std::to_string(row_cells_) +
                             " cells, expected " + std::to_string(columns_));
    buf_ += '\n';
    row_cells_ = 0;
}

void CsvWriter::save(const std::string& path) const {
    std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw io_error("cannot create directory " + p.parent_path().string() + ": " +
                               ec.message());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << buf_;
    out.flush();
    if (!out) throw io_error("write failed for " + path);
}

}  // namespace amt
