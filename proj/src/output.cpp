#include "cavcool/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "cavcool/errors.hpp"

namespace cavcool {

void Table::add_metadata(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

void Table::add_row(std::vector<std::optional<double>> row) {
    if (row.size() != columns.size())
        throw DomainError("table row width " + std::to_string(row.size()) +
                          " does not match column count " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::vector<std::pair<std::string, std::string>> standard_metadata() {
    return {
        {"generator", "cavcool 1.0.0"},
        {"time_convention", "exp(-i omega t)"},
        {"kappa_convention", "angular half width at half maximum of the intensity resonance"},
        {"power_convention", "P = 2 epsilon0 c S |a|^2 over the pump mode area S"},
        {"noise_model", "two-sided vacuum input-output force noise plus spontaneous recoil"},
    };
}

std::string format_scientific(double value, int precision) {
    if (precision < 1) precision = 1;
    if (precision > 17) precision = 17;
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.*e", precision - 1, value);
    return buffer;
}

void write_csv(std::ostream& out, const Table& table, int precision) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << " = " << value << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ",";
        out << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            if (row[i]) out << format_scientific(*row[i], precision);
        }
        out << "\n";
    }
}

void write_json(std::ostream& out, const Table& table, int precision) {
    nlohmann::json root;
    nlohmann::json metadata = nlohmann::json::object();
    for (const auto& [key, value] : table.metadata) metadata[key] = value;
    root["metadata"] = metadata;
    root["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json encoded = nlohmann::json::array();
        for (const auto& cell : row) {
            if (cell)
                encoded.push_back(std::stod(format_scientific(*cell, precision)));
            else
                encoded.push_back(nullptr);
        }
        rows.push_back(encoded);
    }
    root["rows"] = rows;
    out << root.dump(2) << "\n";
}

void write_table(const Table& table, const std::string& path, const std::string& format,
                 int precision) {
    const auto emit = [&](std::ostream& out) {
        if (format == "csv")
            write_csv(out, table, precision);
        else if (format == "json")
            write_json(out, table, precision);
        else
            throw DomainError("unknown output format \"" + format + "\"");
    };
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open output file \"" + path + "\"");
    emit(out);
    if (!out) throw DomainError("failed writing output file \"" + path + "\"");
}

} // namespace cavcool
