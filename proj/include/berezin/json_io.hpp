#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "berezin/matrix_core.hpp"

namespace berezin {

using Json = nlohmann::ordered_json;

// Serializes with insertion-ordered keys and every floating-point number at
// 17 significant digits, so identical inputs give byte-identical output.
// Non-finite numbers are written as null.
std::string dump_json(const Json& value, int indent = 2);

// printf("%.17g") of a double.
std::string format_double(double v);

// {"n": int, "entries": [[re, im], ...]} in row-major order.
Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j);

// Throws Io when the file cannot be opened and Parse on malformed content.
ComplexMatrix read_complex_matrix_file(const std::string& path);
void write_complex_matrix_file(const std::string& path, const ComplexMatrix& m);

Json complex_to_json(Complex z);

}  // namespace berezin
