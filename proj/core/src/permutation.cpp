#include "cayex/permutation.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "cayex/error.hpp"

namespace cayex {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  if (degree > 0xFFFF) throw InputError("permutation degree exceeds 65535");
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw InputError("image array is not a bijection");
    }
    seen[v] = true;
  }
}

bool Permutation::is_identity() const { return first_moved() == degree(); }

std::size_t Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return i;
  }
  return images_.size();
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(std::int64_t k) const {
  Permutation base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Permutation result(degree());
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> cyc;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InputError("degree mismatch in permutation product");
  Permutation r;
  r.images_.resize(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) r.images_[i] = q.images_[p.images_[i]];
  return r;
}

Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

Permutation conjugate(const Permutation& x, const Permutation& y) {
  return y.inverse() * x * y;
}

std::uint64_t order_of(const Permutation& p) {
  std::uint64_t acc = 1;
  for (const auto& c : p.cycles()) acc = std::lcm(acc, static_cast<std::uint64_t>(c.size()));
  return acc;
}

std::string to_cycle_string(const Permutation& p) {
  auto cs = p.cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) os << ' ';
      os << c[k] + 1;
    }
    os << ')';
  }
  return os.str();
}

std::string to_image_string(const Permutation& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i) os << ',';
    os << p(static_cast<Point>(i)) + 1;
  }
  os << ']';
  return os.str();
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::size_t number() {
    skip_ws();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(s_[pos_] - '0');
      if (v > 0xFFFFFF) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("malformed permutation '" + std::string(s_) + "': " + what);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Permutation parse_permutation(std::string_view text, std::size_t degree) {
  Cursor cur(text);
  if (cur.done()) cur.fail("empty");
  if (cur.peek() == '[') {
    cur.expect('[');
    std::vector<Point> imgs;
    if (!cur.accept(']')) {
      do {
        std::size_t v = cur.number();
        if (v < 1 || v > degree) cur.fail("image out of range");
        imgs.push_back(static_cast<Point>(v - 1));
      } while (cur.accept(','));
      cur.expect(']');
    }
    if (!cur.done()) cur.fail("trailing characters");
    if (imgs.size() != degree) cur.fail("image list length differs from degree");
    return Permutation(std::move(imgs));
  }
  Permutation result(degree);
  while (!cur.done()) {
    cur.expect('(');
    std::vector<Point> cyc;
    while (!cur.accept(')')) {
      std::size_t v = cur.number();
      if (v < 1 || v > degree) cur.fail("point out of range");
      cyc.push_back(static_cast<Point>(v - 1));
    }
    std::vector<Point> imgs(degree);
    std::iota(imgs.begin(), imgs.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (used[cyc[k]]) cur.fail("repeated point in cycle");
      used[cyc[k]] = true;
      imgs[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    result = result * Permutation(std::move(imgs));
  }
  return result;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point v : p.images()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

void GeneratorList::validate() const {
  for (const auto& g : gens) {
    if (g.degree() != degree) throw InputError("generator degree differs from list degree");
  }
}

}  // namespace cayex
