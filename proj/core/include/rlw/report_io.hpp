#pragma once

#include "rlw/diagnostics.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rlw {

/// Nine significant digits; scientific notation below 1e-3 in magnitude.
std::string format_number(double value);

/// Streams a RunReport as CSV: t,Linf,C1,C2,C3,amp1..ampK.
///
/// Rows are flushed as they are written so a failed run leaves a usable
/// prefix; write_truncation() appends a `#` marker line.
class ReportCsvWriter {
public:
    ReportCsvWriter(std::ostream& out, std::size_t amplitude_columns);

    void write_header();
    void write_row(const ReportRow& row);
    void write_truncation(double t, std::string_view reason);

private:
    std::ostream& out_;
    std::size_t amplitude_columns_;
};

/// Numeric CSV with a header line. Blank cells are nullopt; lines starting
/// with '#' are kept in `comments`.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::string> comments;

    std::optional<std::size_t> column(std::string_view name) const;
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CsvTable parse_csv_table(std::istream& in);
CsvTable read_csv_table(const std::filesystem::path& path);

/// A cell passes when |got - ref| <= max(abs, rel * |ref|).
struct Tolerance {
    double rel = 0.0;
    double abs = 0.0;

    double allowed(double reference) const;
};

using ToleranceMap = std::map<std::string, Tolerance, std::less<>>;

/// Reads `# tol <column> rel <x> abs <y>` comment lines.
ToleranceMap tolerances_from_comments(const CsvTable& table);

/// Parses `column=rel:0.2,abs:1e-9`.
std::pair<std::string, Tolerance> parse_tolerance(std::string_view spec);

struct ColumnSummary {
    std::string column;
    std::size_t compared = 0;
    double worst_abs = 0.0;
    double worst_rel = 0.0;
    double worst_t = 0.0;
    double worst_reference = 0.0;
    double worst_value = 0.0;
    bool pass = true;
};

struct ComparisonResult {
    bool pass = true;
    std::vector<ColumnSummary> columns;
    std::vector<std::string> failures; ///< one message per failing cell
};

/// Compares every non-blank reference cell against the report row with the
/// same `t`. Columns without an entry in `tolerances` must match to 1e-12
/// relative. Throws SchemaError when a reference column is missing from the
/// report or either table lacks a `t` column.
ComparisonResult compare_tables(const CsvTable& report, const CsvTable& reference,
                                const ToleranceMap& tolerances);

void print_comparison(std::ostream& out, const ComparisonResult& result);

} // namespace rlw
