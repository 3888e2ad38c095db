#include "rlw/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rlw {

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    if (std::abs(value) < 1e-3) {
        std::snprintf(buf, sizeof buf, "%.8e", value);
    } else {
        std::snprintf(buf, sizeof buf, "%.9g", value);
    }
    return buf;
}

ReportCsvWriter::ReportCsvWriter(std::ostream& out, std::size_t amplitude_columns)
    : out_(out), amplitude_columns_(amplitude_columns) {}

void ReportCsvWriter::write_header() {
    out_ << "t,Linf,C1,C2,C3";
    for (std::size_t k = 1; k <= amplitude_columns_; ++k) {
        out_ << ",amp" << k;
    }
    out_ << '\n';
    out_.flush();
}

void ReportCsvWriter::write_row(const ReportRow& row) {
    out_ << format_number(row.t) << ',';
    if (row.linf) {
        out_ << format_number(*row.linf);
    }
    out_ << ',' << format_number(row.invariants.c1) << ',' << format_number(row.invariants.c2)
         << ',' << format_number(row.invariants.c3);
    for (std::size_t k = 0; k < amplitude_columns_; ++k) {
        out_ << ',';
        if (k < row.crests.size()) {
            out_ << format_number(row.crests[k].amplitude);
        }
    }
    out_ << '\n';
    out_.flush();
}

void ReportCsvWriter::write_truncation(double t, std::string_view reason) {
    out_ << "# truncated at t=" << format_number(t) << ": " << reason << '\n';
    out_.flush();
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::string_view what) {
    // strtod accepts the same forms format_number produces
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
        throw SchemaError("csv: cannot parse '" + tmp + "' as a number in " + std::string(what));
    }
    return v;
}

} // namespace

CsvTable parse_csv_table(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = trim(line);
        if (view.empty()) {
            continue;
        }
        if (view.front() == '#') {
            table.comments.emplace_back(view);
            continue;
        }
        const auto cells = split(view, ',');
        if (table.header.empty()) {
            for (auto c : cells) {
                table.header.emplace_back(c);
            }
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw SchemaError("csv: line " + std::to_string(line_no) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(table.header.size()));
        }
        std::vector<std::optional<double>> row;
        row.reserve(cells.size());
        for (auto c : cells) {
            if (c.empty()) {
                row.emplace_back(std::nullopt);
            } else {
                row.emplace_back(parse_double(c, "line " + std::to_string(line_no)));
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) {
        throw SchemaError("csv: no header line");
    }
    return table;
}

CsvTable read_csv_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("csv: cannot open " + path.string());
    }
    return parse_csv_table(in);
}

double Tolerance::allowed(double reference) const {
    return std::max(abs, rel * std::abs(reference));
}

ToleranceMap tolerances_from_comments(const CsvTable& table) {
    ToleranceMap map;
    for (const auto& comment : table.comments) {
        std::istringstream in(comment);
        std::string hash;
        std::string tag;
        std::string column;
        in >> hash >> tag >> column;
        if (hash != "#" || tag != "tol" || column.empty()) {
            continue;
        }
        Tolerance tol;
        std::string kind;
        double value = 0.0;
        while (in >> kind >> value) {
            if (kind == "rel") {
                tol.rel = value;
            } else if (kind == "abs") {
                tol.abs = value;
            } else {
                throw SchemaError("csv: unknown tolerance kind '" + kind + "'");
            }
        }
        map[column] = tol;
    }
    return map;
}

std::pair<std::string, Tolerance> parse_tolerance(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw SchemaError("tolerance: expected column=rel:x,abs:y, got '" + std::string(spec) + "'");
    }
    Tolerance tol;
    for (auto part : split(spec.substr(eq + 1), ',')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) {
            throw SchemaError("tolerance: malformed entry '" + std::string(part) + "'");
        }
        const auto kind = part.substr(0, colon);
        const double v = parse_double(part.substr(colon + 1), "tolerance");
        if (kind == "rel") {
            tol.rel = v;
        } else if (kind == "abs") {
            tol.abs = v;
        } else {
            throw SchemaError("tolerance: unknown kind '" + std::string(kind) + "'");
        }
    }
    return {std::string(trim(spec.substr(0, eq))), tol};
}

ComparisonResult compare_tables(const CsvTable& report, const CsvTable& reference,
                                const ToleranceMap& tolerances) {
    const auto rt = report.column("t");
    const auto ft = reference.column("t");
    if (!rt || !ft) {
        throw SchemaError("compare: both tables need a 't' column");
    }
    ComparisonResult result;
    for (std::size_t col = 0; col < reference.header.size(); ++col) {
        if (col == *ft) {
            continue;
        }
        const std::string& name = reference.header[col];
        const auto rcol = report.column(name);
        if (!rcol) {
            throw SchemaError("compare: report has no column '" + name + "'");
        }
        const auto tol_it = tolerances.find(name);
        const Tolerance tol = tol_it != tolerances.end() ? tol_it->second : Tolerance{1e-12, 0.0};

        ColumnSummary summary;
        summary.column = name;
        double worst_ratio = -1.0;
        for (const auto& ref_row : reference.rows) {
            const auto& ref_cell = ref_row[col];
            if (!ref_cell || !ref_row[*ft]) {
                continue;
            }
            const double t = *ref_row[*ft];
            const auto match = std::find_if(report.rows.begin(), report.rows.end(), [&](const auto& r) {
                return r[*rt] && std::abs(*r[*rt] - t) <= 1e-9 * std::max(1.0, std::abs(t));
            });
            ++summary.compared;
            std::ostringstream msg;
            if (match == report.rows.end() || !(*match)[*rcol]) {
                msg << name << " at t=" << format_number(t) << ": missing in report";
                result.failures.push_back(msg.str());
                summary.pass = false;
                continue;
            }
            const double got = *(*match)[*rcol];
            const double ref = *ref_cell;
            const double dev = std::abs(got - ref);
            const double allowed = tol.allowed(ref);
            const double ratio = allowed > 0.0 ? dev / allowed : (dev > 0.0 ? HUGE_VAL : 0.0);
            const bool ok = dev <= allowed && std::isfinite(got);
            summary.worst_abs = std::max(summary.worst_abs, dev);
            if (ref != 0.0) {
                summary.worst_rel = std::max(summary.worst_rel, dev / std::abs(ref));
            }
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                summary.worst_t = t;
                summary.worst_reference = ref;
                summary.worst_value = got;
            }
            if (!ok) {
                summary.pass = false;
                msg << name << " at t=" << format_number(t) << ": got " << format_number(got)
                    << ", reference " << format_number(ref) << " (|diff| " << format_number(dev)
                    << " > " << format_number(allowed) << ")";
                result.failures.push_back(msg.str());
            }
        }
        result.pass = result.pass && summary.pass;
        result.columns.push_back(summary);
    }
    return result;
}

void print_comparison(std::ostream& out, const ComparisonResult& result) {
    for (const auto& c : result.columns) {
        out << (c.pass ? "PASS " : "FAIL ") << c.column << ": " << c.compared
            << " cells, worst at t=" << format_number(c.worst_t) << " (got "
            << format_number(c.worst_value) << ", reference " << format_number(c.worst_reference)
            << ", max |diff| " << format_number(c.worst_abs) << ", max rel "
            << format_number(c.worst_rel) << ")\n";
    }
    for (const auto& f : result.failures) {
        out << "  " << f << '\n';
    }
    out << (result.pass ? "comparison passed" : "comparison FAILED") << '\n';
}

} // namespace rlw
