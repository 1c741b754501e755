#include "bislat/io.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace bislat {

std::vector<double> parse_csv_numbers(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        std::string field = text.substr(pos, next == std::string::npos ? next : next - pos);
        // trim
        std::size_t b = field.find_first_not_of(" \t\r\n");
        std::size_t e = field.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) {
            throw std::invalid_argument("empty field in number list: '" + text + "'");
        }
        field = field.substr(b, e - b + 1);
        char* endp = nullptr;
        double v = std::strtod(field.c_str(), &endp);
        if (endp == field.c_str() || *endp != '\0') {
            throw std::invalid_argument("malformed number '" + field + "'");
        }
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<std::vector<double>> read_vectors_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open vector file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos || line[b] == '#') continue;
        rows.push_back(parse_csv_numbers(line));
    }
    if (rows.empty()) throw std::invalid_argument("vector file has no data rows: " + path);
    return rows;
}

MeasureKind parse_kind(const std::string& name) {
    if (name == "probability") return MeasureKind::probability;
    if (name == "finite") return MeasureKind::finite;
    if (name == "counting") return MeasureKind::counting;
    throw std::invalid_argument("unknown measure kind: " + name +
                                " (expected probability|finite|counting)");
}

std::string kind_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::probability: return "probability";
        case MeasureKind::finite: return "finite";
        case MeasureKind::counting: return "counting";
    }
    return "?";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

}  // namespace bislat
