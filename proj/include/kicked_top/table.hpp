#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kicked_top {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata; // written as "# key=value"

    std::size_t column(const std::string& name) const; // throws InvalidAxis if absent
    void add_row(std::vector<Cell> row);                // throws DimensionMismatch
    double number(std::size_t row, const std::string& name) const;
};

enum class Format { Csv, Json, Gnuplot };

Format parse_format(const std::string& name);
std::string format_cell(const Cell& cell);

/// "# kicked-top-kit v1", metadata lines, the header row, then data.
/// Doubles use 17 significant digits.
void write_csv(const Table& table, std::ostream& out);
Table read_csv(std::istream& in);

/// Array of row objects; non-finite doubles become null.
void write_json(const Table& table, std::ostream& out);

/// Whitespace-separated columns. With a group column, each group becomes a
/// separate data block (two blank lines between blocks, as gnuplot's `index`).
void write_gnuplot(const Table& table, std::ostream& out,
                   const std::optional<std::string>& group_column = std::nullopt);

/// Writes to `path`, or stdout when path is empty or "-". Throws IoError.
void export_table(const Table& table, Format format, const std::string& path,
                  const std::optional<std::string>& group_column = std::nullopt);

} // namespace kicked_top
