#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace penalfd {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

// Minimal CSV writer: header plus rows of preformatted cells, '\n' endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string to_string() const;
    void write(const std::string& path) const;

    // Parses the output of to_string (no quoting support needed).
    static CsvTable parse(std::string_view text);
    static CsvTable read(const std::string& path);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace penalfd
