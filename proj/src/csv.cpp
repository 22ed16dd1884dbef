#include "latinfo/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <vector>

#include "latinfo/errors.hpp"

namespace latinfo {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

SampleMatrix parse_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    auto where = [&](std::size_t col) {
        return source + ": line " + std::to_string(line_no) + (col ? ", column " + std::to_string(col) : "");
    };
    if (!std::getline(in, line)) throw InputError(source + ": empty input, header row required");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> header;
    std::set<std::string> seen;
    for (auto& name : split(line)) {
        name = trim(name);
        if (name.empty()) throw InputError(where(header.size() + 1) + ": empty column name");
        if (!seen.insert(name).second) throw InputError(where(header.size() + 1) + ": duplicate column '" + name + "'");
        header.push_back(name);
    }
    const std::size_t d = header.size();
    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) throw InputError(where(0) + ": blank line (data row " + std::to_string(rows + 1) + ")");
        const auto cells = split(line);
        if (cells.size() != d) {
            throw InputError(where(0) + ": data row " + std::to_string(rows + 1) + " has " +
                             std::to_string(cells.size()) + " fields, expected " + std::to_string(d));
        }
        for (std::size_t c = 0; c < d; ++c) {
            const std::string cell = trim(cells[c]);
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            const auto res = std::from_chars(first, last, v);
            if (cell.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
                throw InputError(where(c + 1) + ": data row " + std::to_string(rows + 1) + ", column '" +
                                 header[c] + "': not a finite number: '" + cell + "'");
            }
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw InputError(source + ": no data rows");
    return SampleMatrix(std::move(header), rows, std::move(values));
}

SampleMatrix read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_csv(in, path);
}

void write_csv(std::ostream& out, const SampleMatrix& data) {
    const auto& cols = data.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) out << (c ? "," : "") << format_double(data(r, c));
        out << '\n';
    }
}

}  // namespace latinfo
