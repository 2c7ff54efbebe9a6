#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "rydmoc/conversion.hpp"
#include "rydmoc/coupling_rates.hpp"
#include "rydmoc/scattering.hpp"
#include "rydmoc/sweep.hpp"
#include "rydmoc/system_config.hpp"

namespace rydmoc {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Column-labelled rows; the common form behind CSV and JSON output.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal that parses back to the same double; nan / inf / -inf otherwise.
std::string format_number(double value);

/// Inverse of format_number. Throws std::invalid_argument on malformed text.
double parse_number(std::string_view text);

/// Header row then data rows, RFC 4180 quoting where needed, '\n' line ends.
void write_csv(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);

/// Array of row objects keyed by column. Non-finite numbers become null.
nlohmann::json to_json(const Table& table);

struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads what write_csv produces.
CsvDocument parse_csv(std::string_view text);

Table to_table(const ScanResult& scan);
Table to_table(const BoundCurve& curve);
Table to_table(const RateSet& rates);
Table to_table(const ValidationReport& report);
Table to_table(const Spectrum& spectrum);
Table to_table(double delta, const ConversionResult& result);
Table to_table(SweepAxis axis, const AxisOptimum& optimum);

}  // namespace rydmoc
