#include "fraclab/lab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fraclab/errors.hpp"

namespace fraclab::lab {

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw DataError("csv: row width differs from the header");
    rows.push_back(std::move(row));
}

std::string cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell(long long v) { return std::to_string(v); }

namespace {

std::string quoted(const std::string& f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
    std::string out = "\"";
    for (char ch : f) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += quoted(fields[i]);
    }
    out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& t) {
    std::string out;
    append_line(out, t.header);
    for (const auto& r : t.rows) append_line(out, r);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch != '"') field += ch;
            else if (i + 1 < text.size() && text[i + 1] == '"') field += '"', ++i;
            else in_quotes = false;
            continue;
        }
        if (ch == '"') in_quotes = true, any = true;
        else if (ch == ',') row.push_back(std::move(field)), field.clear(), any = true;
        else if (ch == '\r') continue;
        else if (ch == '\n') {
            row.push_back(std::move(field));
            field.clear();
            lines.push_back(std::move(row));
            row.clear();
            any = false;
        } else field += ch, any = true;
    }
    if (in_quotes) throw DataError("csv: unbalanced quotes");
    if (any) {
        row.push_back(std::move(field));
        lines.push_back(std::move(row));
    }
    if (lines.empty()) throw DataError("csv: no header row");
    CsvTable t;
    t.header = std::move(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() != t.header.size())
            throw DataError("csv: row " + std::to_string(i) + " has " + std::to_string(lines[i].size()) +
                            " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(lines[i]));
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << body;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string emit_csv(const CsvTable& t, const std::string& path) {
    write_file(path, to_csv(t));
    return path;
}

}  // namespace fraclab::lab
