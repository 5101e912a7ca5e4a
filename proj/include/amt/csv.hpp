#pragma once

#include <string>
#include <vector>

#include "amt/errors.hpp"

namespace amt {

// Builds CSV text deterministically: metadata as leading '#' comment lines,
// one mandatory header row, numeric cells printed with %.17g so every double
// round-trips exactly and reruns are byte-identical.
class CsvWriter {
public:
    // Metadata line "# key = value"; call before header().
    void metadata(const std::string& key, const std::string& value);
    void metadata(const std::string& key, double value);

    void header(const std::vector<std::string>& columns);

    void cell(double v);
    void cell(const std::string& v);
    void end_row();

    const std::string& text() const { return buf_; }

    // Writes text() to path, creating parent directories; io_error on failure.
    void save(const std::string& path) const;

private:
    std::string buf_;
    std::size_t columns_ = 0;
    std::size_t row_cells_ = 0;
    bool header_written_ = false;
};

// %.17g formatting used for every numeric cell.
std::string format_double(double v);

}  // namespace amt
