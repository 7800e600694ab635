#include <algorithm>
#include <deque>
#include <optional>

#include "cayex/bsgs.hpp"
#include "cayex/error.hpp"

namespace cayex {

namespace {

// Each kept generator g is labelled by the edge {a, a^g}, a = smallest point
// moved by g. The edges always form a forest on the n points, hence at most
// n - 1 generators survive.
class JerrumFilter {
 public:
  explicit JerrumFilter(std::size_t degree) : degree_(degree) {}

  void insert(Permutation h) {
    while (!h.is_identity()) {
      Point a = static_cast<Point>(h.first_moved());
      Point b = h(a);
      auto path = find_path(b, a);
      if (!path) {
        edges_.push_back({a, b, std::move(h)});
        return;
      }
      // Cycle: a -new-> b -path-> a. Walk it from its smallest vertex.
      std::vector<Point> verts{a};
      std::vector<std::optional<std::size_t>> via{std::nullopt};  // nullopt = new edge
      Point cur = b;
      for (std::size_t e : *path) {
        verts.push_back(cur);
        via.push_back(e);
        cur = other(edges_[e], cur);
      }
      // verts[t] --via[t]--> verts[t+1] (cyclically); via[0] is the new edge out of a.
      std::size_t L = verts.size();
      std::size_t start = static_cast<std::size_t>(
          std::min_element(verts.begin(), verts.end()) - verts.begin());
      Permutation prod(degree_);
      for (std::size_t s = 0; s < L; ++s) {
        std::size_t t = (start + s) % L;
        Point from = verts[t];
        const Permutation& g = via[t] ? edges_[*via[t]].gen : h;
        Point ea = via[t] ? edges_[*via[t]].a : a;
        prod = prod * (from == ea ? g : g.inverse());
      }
      auto removed = via[start];
      if (removed) {
        edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(*removed));
        edges_.push_back({a, b, std::move(h)});
      }
      h = std::move(prod);
    }
  }

  GeneratorList result() const {
    GeneratorList out{degree_, {}};
    for (const auto& e : edges_) out.gens.push_back(e.gen);
    return out;
  }

 private:
  struct Edge {
    Point a, b;
    Permutation gen;
  };

  static Point other(const Edge& e, Point v) { return e.a == v ? e.b : e.a; }

  // Edge indices along the unique forest path from `from` to `to`, if any.
  std::optional<std::vector<std::size_t>> find_path(Point from, Point to) const {
    std::vector<int> parent_edge(degree_, -1);
    std::vector<bool> seen(degree_, false);
    std::deque<Point> q{from};
    seen[from] = true;
    while (!q.empty()) {
      Point v = q.front();
      q.pop_front();
      if (v == to) break;
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].a != v && edges_[e].b != v) continue;
        Point w = other(edges_[e], v);
        if (seen[w]) continue;
        seen[w] = true;
        parent_edge[w] = static_cast<int>(e);
        q.push_back(w);
      }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<std::size_t> rev;
    for (Point v = to; v != from;) {
      auto e = static_cast<std::size_t>(parent_edge[v]);
      rev.push_back(e);
      v = other(edges_[e], v);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

  std::size_t degree_;
  std::vector<Edge> edges_;
};

}  // namespace

GeneratorList jerrum_reduce(const GeneratorList& g) {
  g.validate();
  JerrumFilter f(g.degree);
  for (const auto& p : g.gens) f.insert(p);
  return f.result();
}

}  // namespace cayex
