#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

// Result tables and their serialization.  Every table carries metadata
// recording the conventions needed to interpret the numbers (linewidth
// convention, noise model, code version) so emitted files are
// self-describing.

namespace cavcool {

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    /// One entry per column; an empty optional marks an undefined value
    /// (e.g. no equilibrium temperature because the motion is anti-damped).
    std::vector<std::vector<std::optional<double>>> rows;

    void add_metadata(std::string key, std::string value);
    /// Append a row; throws DomainError if the width does not match.
    void add_row(std::vector<std::optional<double>> row);
};

/// Standard metadata stamped on every table: code version, the sign and
/// linewidth conventions, and the force-noise model tag.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> standard_metadata();

/// Format with `precision` significant digits in scientific notation.
[[nodiscard]] std::string format_scientific(double value, int precision);

/// CSV: '# key = value' metadata lines, a header row, then data rows.
/// Undefined values become empty fields.
void write_csv(std::ostream& out, const Table& table, int precision = 9);

/// JSON: {"metadata": {...}, "columns": [...], "rows": [[...]]} with
/// undefined values as null.  Numbers are emitted as strings formatted to
/// `precision` significant digits so the two formats agree digit-for-digit.
void write_json(std::ostream& out, const Table& table, int precision = 9);

/// Dispatch on format ("csv" or "json"); empty path writes to stdout.
void write_table(const Table& table, const std::string& path, const std::string& format,
                 int precision = 9);

} // namespace cavcool
