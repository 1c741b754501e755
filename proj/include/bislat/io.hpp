#ifndef BISLAT_IO_HPP
#define BISLAT_IO_HPP

#include <string>
#include <vector>

#include "bislat/measure.hpp"

namespace bislat {

/// Comma-separated doubles; throws std::invalid_argument on malformed input.
std::vector<double> parse_csv_numbers(const std::string& text);

/// One vector per non-empty line; `#` starts a comment line.
std::vector<std::vector<double>> read_vectors_csv(const std::string& path);

MeasureKind parse_kind(const std::string& name);
std::string kind_name(MeasureKind kind);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace bislat

#endif
