#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace bivarq {

enum class OutputFormat { csv, json, human };

/// Shortest-field rendering of a double at full round-trip precision
/// (17 significant digits, locale-independent). parse(format_double(v)) == v
/// bitwise for every finite double.
std::string format_double(double v);

/// Same, at reduced precision (used by the human format, 10 digits).
std::string format_double(double v, int significant_digits);

// One output cell. The monostate alternative renders as an empty field (CSV)
// or null (JSON); it carries "not applicable", e.g. a suppressed relative
// error.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct KV {
    std::string key;
    Cell value;
};

struct SummaryBlock {
    std::string title;
    std::vector<KV> items;
};

// Self-describing tabular report: metadata (defaults, tolerances, grid bounds),
// a rectangular data block, and zero or more summary blocks. All three output
// formats are rendered from this one structure, deterministically.
struct Table {
    std::vector<KV> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<SummaryBlock> summaries;
};

/// CSV: '#'-prefixed metadata lines, a header row, data rows, then
/// '#'-prefixed summary lines. '.' decimal separator, 17 significant digits,
/// LF line endings.
/// JSON: {"meta": {...}, "columns": [...], "rows": [[...]],
///        "summaries": [{"title": ..., <items>}]}, numbers at 17 significant
/// digits.
/// Human: aligned columns at 10 significant digits.
std::string render(const Table& table, OutputFormat format);

}  // namespace bivarq
