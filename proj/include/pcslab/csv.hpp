#ifndef PCSLAB_CSV_HPP
#define PCSLAB_CSV_HPP

#include <string>
#include <vector>

namespace pcslab::csv {

/// 17 significant digits, C locale, shortest-faithful form via %.17g.
std::string format_double(double v);

/// UTF-8, comma delimiter, LF endings. First line is the comment header,
/// then the column row, then one data row per entry.
void write_file(const std::string& path, const std::string& comment,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows);

} // namespace pcslab::csv

#endif
