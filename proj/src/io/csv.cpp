#include "fkg/io/csv.hpp"

#include <cstdio>
#include <sstream>

#include "fkg/errors.hpp"

namespace fkg::io {

std::string format_sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

CsvWriter::CsvWriter(const std::string& path, const ConfigEcho& config,
                     const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size()) {
    if (!out_) throw invalid_config("csv: cannot open '" + path + "' for writing");
    for (const auto& [key, value] : config) out_ << "# " << key << " = " << value << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << quote_if_needed(columns[i]);
    out_ << "\n";
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != n_columns_) throw invalid_config("csv: row width does not match header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>)
                    out_ << format_sci(v);
                else if constexpr (std::is_same_v<T, long long>)
                    out_ << v;
                else
                    out_ << quote_if_needed(v);
            },
            cells[i]);
    }
    out_ << "\n";
}

std::vector<double> CsvTable::column(const std::string& name) const {
    size_t idx = header.size();
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) idx = i;
    if (idx == header.size()) throw invalid_config("csv: no column named '" + name + "'");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (idx >= row.size()) throw invalid_config("csv: ragged row");
        try {
            out.push_back(std::stod(row[idx]));
        } catch (const std::exception&) {
            throw invalid_config("csv: non-numeric cell '" + row[idx] + "' in column " + name);
        }
    }
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_config("csv: cannot open '" + path + "'");
    CsvTable t;
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        // Unquoted split is enough for the numeric tables this tool emits.
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header_done) {
            t.header = std::move(cells);
            header_done = true;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (!header_done) throw invalid_config("csv: '" + path + "' has no header row");
    return t;
}

} // namespace fkg::io
