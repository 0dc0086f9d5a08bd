#include "dlab/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

namespace dlab {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else if constexpr (std::is_same_v<T, ExactValue>) {
          return v.fraction;
        } else {
          return v;
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string to_csv(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_escape(v);
        } else if constexpr (std::is_same_v<T, ExactValue>) {
          return format_real(v.value);
        } else {
          return fmt::format("{}", v);
        }
      },
      c);
}

void write_csv_line(const std::vector<std::string>& cells, std::ostream& os) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

void write_csv(const Document& doc, std::ostream& os) {
  std::vector<std::string> line;
  if (!doc.columns.empty()) {
    for (const auto& c : doc.columns) line.push_back(csv_escape(c));
    write_csv_line(line, os);
    for (const auto& row : doc.rows) {
      line.clear();
      for (const auto& cell : row) line.push_back(to_csv(cell));
      write_csv_line(line, os);
    }
    return;
  }
  for (const auto& [key, _] : doc.fields) line.push_back(csv_escape(key));
  write_csv_line(line, os);
  line.clear();
  for (const auto& [_, value] : doc.fields) line.push_back(to_csv(value));
  write_csv_line(line, os);
}

void write_json(const Document& doc, std::ostream& os) {
  Json j;
  j["command"] = doc.command;
  for (const auto& [key, value] : doc.fields) j[key] = to_json(value);
  if (!doc.columns.empty()) {
    Json rows = Json::array();
    for (const auto& row : doc.rows) {
      Json r = Json::object();
      for (std::size_t i = 0; i < doc.columns.size() && i < row.size(); ++i)
        r[doc.columns[i]] = to_json(row[i]);
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
  }
  os << j.dump(2) << '\n';
}

void write_document(const Document& doc, Format format, std::ostream& os) {
  if (format == Format::Json)
    write_json(doc, os);
  else
    write_csv(doc, os);
}

Cell quantity_cell(const Quantity& q) {
  if (q.exact) return ExactValue{to_fraction_string(*q.exact), q.value};
  return q.value;
}

Document convergence_document(std::string command, const std::vector<ConvergenceRow>& rows) {
  Document doc;
  doc.command = std::move(command);
  doc.columns = {"N", "lhs", "rhs", "ratio", "target", "gap"};
  for (const auto& r : rows)
    doc.rows.push_back({r.n, quantity_cell(r.lhs), quantity_cell(r.rhs), r.ratio, r.target, r.gap});
  return doc;
}

Document dickman_table_document(const DickmanSolution& sol, std::size_t every) {
  Document doc;
  doc.command = "dickman table";
  doc.set("theta", sol.theta());
  doc.set("h", sol.step());
  doc.set("x_max", sol.x_max());
  doc.set("norm_const", sol.norm_const());
  doc.columns = {"x", "rho", "density", "cdf"};
  const auto rho = sol.rho_values();
  const auto cdf = sol.cdf_values();
  const double per_unit = std::round(1.0 / sol.step());
  if (every == 0) every = 1;
  for (std::size_t i = 0; i < rho.size(); i += every) {
    const double x = static_cast<double>(i) / per_unit;
    doc.rows.push_back({x, rho[i], sol.norm_const() * rho[i], cdf[i]});
  }
  return doc;
}

Document ks_document(const KSReport& report) {
  Document doc;
  doc.command = "ks";
  doc.set("model_id", static_cast<std::int64_t>(report.model_id));
  doc.set("theta", report.theta);
  doc.set("N", static_cast<std::uint64_t>(report.n));
  doc.set("sample_count", static_cast<std::uint64_t>(report.sample_count));
  doc.set("seed", report.seed);
  doc.set("ks_statistic", report.ks_statistic);
  return doc;
}

}  // namespace dlab
