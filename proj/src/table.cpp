#include "kicked_top/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kicked_top/error.hpp"

namespace kicked_top {

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw Error(ErrorKind::InvalidAxis, "no column named '" + name + "'");
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw Error(ErrorKind::DimensionMismatch, "row has " + std::to_string(row.size()) +
                                                      " cells, table has " +
                                                      std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

double Table::number(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw Error(ErrorKind::InvalidParameter, "column '" + name + "' is not numeric");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "dat" || name == "gnuplot") return Format::Gnuplot;
    throw Error(ErrorKind::InvalidParameter, "unknown format '" + name + "' (csv, json, dat)");
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

Cell parse_cell(const std::string& text) {
    if (text.empty()) return text;
    char* end = nullptr;
    errno = 0;
    const long long i = std::strtoll(text.c_str(), &end, 10);
    if (errno == 0 && *end == '\0') return static_cast<std::int64_t>(i);
    const double d = std::strtod(text.c_str(), &end);
    if (*end == '\0') return d;
    return text;
}

} // namespace

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

void write_csv(const Table& table, std::ostream& out) {
    out << "# kicked-top-kit v1\n";
    for (const auto& [key, value] : table.metadata) out << "# " << key << '=' << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << csv_quote(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_quote(format_cell(row[c]));
        }
        out << '\n';
    }
}

Table read_csv(std::istream& in) {
    Table table;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (!header) {
            table.columns = std::move(fields);
            header = true;
            continue;
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_cell(f));
        table.add_row(std::move(row));
    }
    return table;
}

void write_json(const Table& table, std::ostream& out) {
    out << '[';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << (r ? ",\n " : "\n ") << '{';
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? ", " : "") << json_escape(table.columns[c]) << ": ";
            const Cell& cell = table.rows[r][c];
            if (const auto* d = std::get_if<double>(&cell)) {
                out << (std::isfinite(*d) ? format_double(*d) : "null");
            } else if (const auto* s = std::get_if<std::string>(&cell)) {
                out << json_escape(*s);
            } else {
                out << format_cell(cell);
            }
        }
        out << '}';
    }
    out << (table.rows.empty() ? "]\n" : "\n]\n");
}

void write_gnuplot(const Table& table, std::ostream& out, const std::optional<std::string>& group_column) {
    out << '#';
    for (const auto& c : table.columns) out << ' ' << c;
    out << '\n';
    std::optional<std::size_t> group;
    if (group_column) group = table.column(*group_column);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (group && r > 0 && format_cell(row[*group]) != format_cell(table.rows[r - 1][*group])) {
            out << "\n\n";
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::string text = format_cell(row[c]);
            if (std::holds_alternative<std::string>(row[c])) text = '"' + text + '"';
            out << (c ? " " : "") << text;
        }
        out << '\n';
    }
}

void export_table(const Table& table, Format format, const std::string& path,
                  const std::optional<std::string>& group_column) {
    auto emit = [&](std::ostream& os) {
        switch (format) {
        case Format::Csv: write_csv(table, os); break;
        case Format::Json: write_json(table, os); break;
        case Format::Gnuplot: write_gnuplot(table, os, group_column); break;
        }
    };
    if (path.empty() || path == "-") {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    emit(file);
    file.close();
    if (!file) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

} // namespace kicked_top
