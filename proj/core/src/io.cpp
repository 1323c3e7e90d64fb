#include "freeclt/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace freeclt {

std::string format_sig17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    std::string out = "{\"schema\": 1, \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += r == 0 ? "\n" : ",\n";
        out += "  {";
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c > 0) out += ", ";
            out += '"';
            out += columns[c];
            out += "\": ";
            out += rows[r][c];
        }
        out += '}';
    }
    out += "\n]}\n";
    return out;
}

std::string profile_to_csv(const DensityProfile& p) {
    std::string out = "x,p\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += format_sig17(p.x_at(i));
        out += ',';
        out += format_sig17(p.values[i]);
        out += '\n';
    }
    return out;
}

DensityProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "x,p")
        throw ParseError("expected header 'x,p'", 0);

    std::vector<double> xs;
    std::vector<double> values;
    std::size_t offset = line.size() + 1;
    while (std::getline(in, line)) {
        if (line.empty()) break;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected 'x,p' data row", offset);
        try {
            xs.push_back(std::stod(line.substr(0, comma)));
            values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("expected numeric cells", offset);
        }
        offset += line.size() + 1;
    }
    if (xs.size() < 2) throw ParseError("expected at least two data rows", offset);

    DensityProfile p;
    p.x0 = xs.front();
    p.dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(p.dx > 0.0)) throw ParseError("x column must be increasing", offset);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (p.x0 + p.dx * static_cast<double>(i))) > 1e-9 * p.dx)
            throw ParseError("x column must be uniformly spaced", offset);
    p.values = std::move(values);

    std::size_t first = 0;
    std::size_t last = p.values.size() - 1;
    while (first < last && p.values[first] == 0.0) ++first;
    while (last > first && p.values[last] == 0.0) --last;
    p.support_lo = p.x_at(first);
    p.support_hi = p.x_at(last);
    p.mass_tolerance = std::abs(1.0 - p.mass()) + 1e-15;
    return p;
}

Table reports_table(const std::vector<EntropyReport>& reports) {
    Table t;
    t.columns = {"n", "chi", "fisher", "logEnergy", "chiDeficit", "fisherExcess"};
    t.rows.reserve(reports.size());
    for (const EntropyReport& r : reports) {
        t.rows.push_back({std::to_string(r.n), format_sig17(r.chi), format_sig17(r.fisher),
                          format_sig17(r.log_energy), format_sig17(r.chi_deficit),
                          format_sig17(r.fisher_excess)});
    }
    return t;
}

} // namespace freeclt
