#include "cayex/group_io.hpp"

#include <fstream>
#include <sstream>

#include "cayex/error.hpp"

namespace cayex {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

GeneratorList parse_group(std::string_view text) {
  GeneratorList out;
  bool have_degree = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!have_degree) {
      if (line.substr(0, 6) != "degree") {
        throw InputError("line " + std::to_string(line_no) + ": expected 'degree <n>'");
      }
      std::string rest(trim(line.substr(6)));
      std::size_t used = 0;
      long long n = -1;
      try {
        n = std::stoll(rest, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != rest.size() || n < 1 || n > 0xFFFF) {
        throw InputError("line " + std::to_string(line_no) + ": bad degree");
      }
      out.degree = static_cast<std::size_t>(n);
      have_degree = true;
      continue;
    }
    out.gens.push_back(parse_permutation(line, out.degree));
  }
  if (!have_degree) throw InputError("group file has no 'degree' line");
  return out;
}

std::string format_group(const GeneratorList& g) {
  std::ostringstream os;
  os << "degree " << g.degree << '\n';
  for (const auto& p : g.gens) os << to_cycle_string(p) << '\n';
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

GeneratorList read_group_file(const std::string& path) { return parse_group(read_text_file(path)); }

}  // namespace cayex
