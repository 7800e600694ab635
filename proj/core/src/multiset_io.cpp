#include "cayex/multiset_io.hpp"

#include <charconv>
#include <sstream>

#include "cayex/error.hpp"
#include "cayex/group_io.hpp"

namespace cayex {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
bool parse_uint(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size() && !s.empty();
}

// Calls f(line_no, line) for each non-blank, non-comment line.
template <class F>
void for_lines(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    f(line_no, line);
  }
}

std::string at(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

// "<count> <rest>"
std::pair<Count, std::string_view> split_count(std::size_t line_no, std::string_view line) {
  auto sp = line.find_first_of(" \t");
  Count m = 0;
  if (sp == std::string_view::npos || !parse_uint(line.substr(0, sp), m) || m == 0) {
    throw InputError(at(line_no) + "expected '<multiplicity> <element>'");
  }
  return {m, trim(line.substr(sp + 1))};
}

}  // namespace

std::string format_perm_multiset(std::size_t degree, const Multiset<Permutation>& s) {
  std::ostringstream os;
  os << "degree " << degree << '\n';
  for (const auto& [p, m] : s) os << m << ' ' << to_cycle_string(p) << '\n';
  return os.str();
}

PermMultisetFile parse_perm_multiset(std::string_view text) {
  PermMultisetFile out;
  bool have_degree = false;
  for_lines(text, [&](std::size_t line_no, std::string_view line) {
    if (!have_degree) {
      if (line.substr(0, 6) != "degree" || !parse_uint(trim(line.substr(6)), out.degree) || out.degree == 0) {
        throw InputError(at(line_no) + "expected 'degree <n>'");
      }
      have_degree = true;
      return;
    }
    auto [m, rest] = split_count(line_no, line);
    try {
      out.set.add(parse_permutation(rest, out.degree), m);
    } catch (const InputError& e) {
      throw InputError(at(line_no) + e.what());
    }
  });
  if (!have_degree) throw InputError("multiset file has no 'degree' line");
  if (out.set.empty()) throw InputError("multiset file has no elements");
  return out;
}

std::string format_abelian_multiset(const AbelianShape& shape, const Multiset<AbelianVector>& s) {
  std::ostringstream os;
  os << "shape " << shape.to_string() << '\n';
  for (const auto& [x, m] : s) {
    os << m << ' ';
    for (std::size_t t = 0; t < x.size(); ++t) os << (t ? "," : "") << x[t];
    os << '\n';
  }
  return os.str();
}

AbelianMultisetFile parse_abelian_multiset(std::string_view text) {
  AbelianMultisetFile out;
  bool have_shape = false;
  for_lines(text, [&](std::size_t line_no, std::string_view line) {
    if (!have_shape) {
      if (line.substr(0, 5) != "shape") throw InputError(at(line_no) + "expected 'shape p^e:n ...'");
      out.shape = AbelianShape::parse(trim(line.substr(5)));
      have_shape = true;
      return;
    }
    auto [m, rest] = split_count(line_no, line);
    const auto& q = out.shape.moduli();
    AbelianVector x;
    while (true) {
      auto comma = rest.find(',');
      std::uint32_t c = 0;
      if (!parse_uint(trim(rest.substr(0, comma)), c)) throw InputError(at(line_no) + "bad coordinate");
      if (x.size() >= q.size() || c >= q[x.size()]) throw InputError(at(line_no) + "coordinate out of range");
      x.push_back(c);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (x.size() != q.size()) throw InputError(at(line_no) + "wrong number of coordinates");
    out.set.add(x, m);
  });
  if (!have_shape) throw InputError("multiset file has no 'shape' line");
  if (out.set.empty()) throw InputError("multiset file has no elements");
  return out;
}

}  // namespace cayex
