#pragma once
// CSV emission: header row, '.' decimal, 17 significant digits, LF endings,
// fields quoted only when needed.
#include <string>
#include <vector>

namespace fraclab::lab {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
};

/// %.17g, with nan, inf and -inf spelled out.
std::string cell(double v);
std::string cell(long long v);
inline std::string cell(int v) { return cell(static_cast<long long>(v)); }

std::string to_csv(const CsvTable& t);
/// Inverse of to_csv; throws DataError on unbalanced quotes or ragged rows.
CsvTable parse_csv(const std::string& text);
/// Writes the table and returns `path`; throws std::runtime_error on I/O failure.
std::string emit_csv(const CsvTable& t, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& body);

}  // namespace fraclab::lab
