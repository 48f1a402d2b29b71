#include "qbsim/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace qbsim::output {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_cell_csv(std::ostream& os, const Cell& cell) {
    if (std::holds_alternative<double>(cell))
        os << format_double(std::get<double>(cell));
    else if (std::holds_alternative<long long>(cell))
        os << std::get<long long>(cell);
    else if (std::holds_alternative<std::string>(cell))
        os << std::get<std::string>(cell);
    // monostate: blank field
}

nlohmann::json cell_json(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
    if (std::holds_alternative<long long>(cell)) return std::get<long long>(cell);
    if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
    return nullptr;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
    for (const auto& [key, value] : table.meta) os << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ",";
        os << table.columns[c];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            write_cell_csv(os, row[c]);
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& table, const std::string& command) {
    nlohmann::json j;
    j["command"] = command;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [key, value] : table.meta) cfg[key] = value;
    j["config"] = cfg;
    j["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void write_table(const std::string& path, const std::string& format, const Table& table,
                 const std::string& command) {
    const bool to_stdout = path.empty() || path == "-";
    std::ofstream file;
    if (!to_stdout) {
        file.open(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    std::ostream& os = to_stdout ? std::cout : file;
    if (format == "json")
        write_json(os, table, command);
    else
        write_csv(os, table);
    os.flush();
}

}  // namespace qbsim::output
