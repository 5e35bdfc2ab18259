#include "povline/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "povline/errors.hpp"

namespace povline {
namespace {

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_cell(const std::string& cell, double& out) {
    const std::string t = strip(cell);
    if (t.empty()) return false;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

std::string nth_cell(const std::string& row, std::size_t column, bool& found) {
    std::size_t start = 0;
    std::size_t index = 1;
    while (true) {
        const auto pos = row.find(',', start);
        const std::string cell = (pos == std::string::npos)
                                     ? row.substr(start)
                                     : row.substr(start, pos - start);
        if (index == column) {
            found = true;
            return cell;
        }
        if (pos == std::string::npos) {
            found = false;
            return "";
        }
        start = pos + 1;
        ++index;
    }
}

}  // namespace

std::vector<double> read_income_column(const std::string& path,
                                       std::size_t column) {
    if (column < 1) throw validation_error("column numbers start at 1");
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open '" + path + "'");

    std::vector<double> out;
    std::string row;
    std::size_t line_no = 0;
    bool first_data_row = true;
    while (std::getline(in, row)) {
        ++line_no;
        if (strip(row).empty()) continue;
        bool found = false;
        const std::string cell = nth_cell(row, column, found);
        if (!found)
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": fewer than " + std::to_string(column) +
                                   " columns");
        double v = 0.0;
        if (!parse_cell(cell, v)) {
            if (first_data_row) {  // header row
                first_data_row = false;
                continue;
            }
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": cannot parse '" + strip(cell) +
                                   "' as a number");
        }
        first_data_row = false;
        out.push_back(v);
    }
    if (out.empty())
        throw validation_error(path + ": no numeric rows found");
    return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    const std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(hex);
}

}  // namespace povline
