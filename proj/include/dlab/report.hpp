#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dlab/dickman.hpp"
#include "dlab/experiments.hpp"
#include "dlab/rational.hpp"

namespace dlab {

/// An exact rational: "num/den" in JSON, its nearest double in CSV.
struct ExactValue {
  std::string fraction;
  double value;
};

using Cell =
    std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string, ExactValue>;

/// A command result: named scalar fields plus an optional table.
///
/// JSON renders the fields in insertion order, then "rows" as an array of
/// objects. CSV renders the table with a header row, or, when there is no
/// table, the fields as a single row.
struct Document {
  std::string command;
  std::vector<std::pair<std::string, Cell>> fields;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void set(std::string key, Cell value) { fields.emplace_back(std::move(key), std::move(value)); }
};

enum class Format { Csv, Json };

void write_csv(const Document& doc, std::ostream& os);
void write_json(const Document& doc, std::ostream& os);
void write_document(const Document& doc, Format format, std::ostream& os);

/// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double x);

/// The exact form when present, else the floating value.
Cell quantity_cell(const Quantity& q);

Document convergence_document(std::string command, const std::vector<ConvergenceRow>& rows);
Document dickman_table_document(const DickmanSolution& sol, std::size_t every = 1);
Document ks_document(const KSReport& report);

}  // namespace dlab
