#ifndef FKG_IO_CSV_HPP
#define FKG_IO_CSV_HPP

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace fkg::io {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;
using Cell = std::variant<double, long long, std::string>;

// Scientific notation with 17 significant digits, '.' decimal point.
std::string format_sci(double v);

// RFC-4180-style CSV: the resolved configuration echoed as leading '#'
// comment lines, then the header row, then data rows. Doubles are written
// with format_sci so identical runs produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const ConfigEcho& config,
              const std::vector<std::string>& columns);
    void row(const std::vector<Cell>& cells);

private:
    std::ofstream out_;
    size_t n_columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Numeric column by name; throws when missing or non-numeric.
    std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

} // namespace fkg::io

#endif
