#ifndef SHC_CSV_HPP
#define SHC_CSV_HPP

#include <string>
#include <vector>

namespace shc {

// Number formatted with 17 significant digits, which round-trips double
// precision exactly.
std::string csv_number(double v);

// Minimal CSV reader for the report schemas emitted by this project:
// a header row plus numeric rows (no quoting).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 if absent
};
CsvTable read_csv(const std::string& path);

}  // namespace shc

#endif  // SHC_CSV_HPP
