#include "rydmoc/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rydmoc {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buf.data(), end);
}

double parse_number(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

void write_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  write_line(out, table.columns);
  std::vector<std::string> fields;
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("write_csv: row width does not match header");
    }
    fields.clear();
    for (const Cell& c : row) fields.push_back(cell_text(c));
    write_line(out, fields);
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  write_csv(table, os);
  return os.str();
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              obj[table.columns[i]] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
            } else {
              obj[table.columns[i]] = v;
            }
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

CsvDocument parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool line_has_content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      line_has_content = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      line_has_content = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (line_has_content || !field.empty()) {
        fields.push_back(std::move(field));
        lines.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      line_has_content = false;
    } else {
      field += c;
      line_has_content = true;
    }
  }
  if (quoted) throw std::invalid_argument("parse_csv: unterminated quoted field");
  if (line_has_content || !field.empty()) {
    fields.push_back(std::move(field));
    lines.push_back(std::move(fields));
  }
  if (lines.empty()) throw std::invalid_argument("parse_csv: no header row");

  CsvDocument doc;
  doc.header = std::move(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != doc.header.size()) {
      throw std::invalid_argument("parse_csv: row " + std::to_string(i) + " has " +
                                  std::to_string(lines[i].size()) + " fields, header has " +
                                  std::to_string(doc.header.size()));
    }
    doc.rows.push_back(std::move(lines[i]));
  }
  return doc;
}

namespace {

const std::vector<std::string> kResultColumns{"eta", "cooperativity", "fwhm_rad_per_s",
                                              "extraction_mw", "extraction_opt"};

void append_result(std::vector<Cell>& row, const std::optional<ConversionResult>& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.emplace_back(r ? r->eta : nan);
  row.emplace_back(r ? r->cooperativity : nan);
  row.emplace_back(r ? r->fwhm : nan);
  row.emplace_back(r ? r->extraction_mw : nan);
  row.emplace_back(r ? r->extraction_opt : nan);
}

}  // namespace

Table to_table(const ScanResult& scan) {
  Table t;
  t.columns.emplace_back(axis_column(scan.axis));
  t.columns.insert(t.columns.end(), kResultColumns.begin(), kResultColumns.end());
  for (std::size_t i = 0; i < scan.axis_values.size(); ++i) {
    std::vector<Cell> row{scan.axis_values[i]};
    append_result(row, scan.points[i].result);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const BoundCurve& curve) {
  Table t{{"waist_mw_m", "eta_bound", "forbidden"}, {}};
  for (std::size_t i = 0; i < curve.waists.size(); ++i) {
    t.rows.push_back({curve.waists[i], curve.eta_bound[i], static_cast<bool>(curve.forbidden[i])});
  }
  return t;
}

Table to_table(const RateSet& r) {
  return Table{{"gamma_R_rad_per_s", "gamma_mw_1_rad_per_s", "gamma_r_prime_rad_per_s",
                "kappa_opt_1_rad_per_s", "kappa_opt_0_rad_per_s", "gamma_mw_total_rad_per_s",
                "kappa_opt_total_rad_per_s", "extraction_mw", "extraction_opt", "od_mean"},
               {{r.gamma_R, r.gamma_mw_1, r.gamma_r_prime, r.kappa_opt_1, r.kappa_opt_0,
                 r.gamma_mw_total, r.kappa_opt_total, r.extraction_mw, r.extraction_opt,
                 r.od_mean}}};
}

Table to_table(const ValidationReport& report) {
  Table t{{"check", "status", "message"}, {}};
  for (const CheckResult& c : report.checks) {
    t.rows.push_back({c.name, std::string(to_string(c.status)), c.message});
  }
  return t;
}

Table to_table(const Spectrum& spectrum) {
  Table t;
  t.columns.emplace_back("omega_rad_per_s");
  for (const auto& [name, values] : spectrum.quantities) {
    t.columns.push_back(name + "_re");
    t.columns.push_back(name + "_im");
  }
  for (std::size_t i = 0; i < spectrum.omega_grid.size(); ++i) {
    std::vector<Cell> row{spectrum.omega_grid[i]};
    for (const auto& [name, values] : spectrum.quantities) {
      row.emplace_back(values.at(i).real());
      row.emplace_back(values.at(i).imag());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(double delta, const ConversionResult& result) {
  Table t;
  t.columns.emplace_back("delta_rad_per_s");
  t.columns.insert(t.columns.end(), kResultColumns.begin(), kResultColumns.end());
  t.columns.emplace_back("internal_factor");
  t.columns.emplace_back("method");
  std::vector<Cell> row{delta};
  append_result(row, result);
  row.emplace_back(result.internal_factor);
  row.emplace_back(std::string(to_string(result.method)));
  t.rows.push_back(std::move(row));
  return t;
}

Table to_table(SweepAxis axis, const AxisOptimum& opt) {
  return Table{{std::string(axis_column(axis)), "eta", "cooperativity", "boundary", "multimodal",
                "evaluations"},
               {{opt.axis_value, opt.eta, opt.cooperativity, opt.boundary, opt.multimodal,
                 static_cast<std::int64_t>(opt.evaluations)}}};
}

}  // namespace rydmoc
