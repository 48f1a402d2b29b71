#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qbsim::output {

// CSV cell: blank, numeric, or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    // Resolved configuration echoed into the file header for reproducibility.
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest round-trip formatting; deterministic across runs.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table, const std::string& command);

// Writes to `path` ("-" = stdout) in the requested format.
void write_table(const std::string& path, const std::string& format, const Table& table,
                 const std::string& command);

}  // namespace qbsim::output
