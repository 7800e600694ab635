#pragma once

#include <string>
#include <string_view>

#include "cayex/permutation.hpp"

namespace cayex {

// Group input file: a `degree <n>` line followed by one generator per line in
// cycle or image notation. Blank lines and lines starting with '#' are ignored.
GeneratorList parse_group(std::string_view text);

// Prints generators in canonical cycle notation; parse_group inverts it exactly.
std::string format_group(const GeneratorList& g);

GeneratorList read_group_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace cayex
