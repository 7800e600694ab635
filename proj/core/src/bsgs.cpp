#include "cayex/bsgs.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "cayex/error.hpp"

namespace cayex {

std::string to_string(GroupOrder v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

double to_double(GroupOrder v) { return static_cast<double>(v); }

Bsgs::Bsgs(std::size_t degree) : degree_(degree), levels_(degree) {
  for (std::size_t k = 0; k < degree; ++k) {
    auto& L = levels_[k];
    L.slot.assign(degree, -1);
    L.slot[k] = 0;
    L.orbit = {static_cast<Point>(k)};
    L.reps = {Permutation(degree)};
    L.inv_reps = {Permutation(degree)};
    L.checked = {{}};
  }
}

Bsgs Bsgs::build(const GeneratorList& g) {
  g.validate();
  Bsgs b(g.degree);
  for (const auto& p : g.gens) b.extend(p);
  return b;
}

GroupOrder Bsgs::order() const {
  GroupOrder acc = 1;
  for (const auto& L : levels_) {
    GroupOrder next = acc * L.orbit.size();
    if (next / L.orbit.size() != acc) throw OverflowError("group order exceeds 128 bits");
    acc = next;
  }
  return acc;
}

const Permutation& Bsgs::transversal(std::size_t level, Point p) const {
  int s = levels_[level].slot[p];
  if (s < 0) throw InputError("point not in basic orbit");
  return levels_[level].reps[static_cast<std::size_t>(s)];
}

const Permutation& Bsgs::transversal_inverse(std::size_t level, Point p) const {
  int s = levels_[level].slot[p];
  if (s < 0) throw InputError("point not in basic orbit");
  return levels_[level].inv_reps[static_cast<std::size_t>(s)];
}

std::pair<Permutation, std::size_t> Bsgs::strip(Permutation g, std::size_t from_level) const {
  if (g.degree() != degree_) throw InputError("degree mismatch in membership test");
  for (std::size_t j = from_level; j < degree_; ++j) {
    Point d = g(static_cast<Point>(j));
    if (d == j) continue;
    int s = levels_[j].slot[d];
    if (s < 0) return {std::move(g), j};
    g = g * levels_[j].inv_reps[static_cast<std::size_t>(s)];
  }
  return {std::move(g), degree_};
}

bool Bsgs::contains(const Permutation& g) const { return strip(g, 0).second == degree_; }

void Bsgs::grow_orbit(std::size_t level) {
  auto& L = levels_[level];
  for (std::size_t idx = 0; idx < L.orbit.size(); ++idx) {
    for (std::size_t gi : L.gens) {
      const Permutation& s = strong_[gi];
      Point img = s(L.orbit[idx]);
      if (L.slot[img] >= 0) continue;
      L.slot[img] = static_cast<int>(L.orbit.size());
      L.orbit.push_back(img);
      Permutation rep = L.reps[idx] * s;
      L.inv_reps.push_back(rep.inverse());
      L.reps.push_back(std::move(rep));
    }
  }
  L.checked.resize(L.orbit.size());
  for (auto& row : L.checked) row.resize(L.gens.size(), false);
}

void Bsgs::add_strong(Permutation h, std::size_t top_level) {
  std::size_t idx = strong_.size();
  strong_.push_back(std::move(h));
  for (std::size_t l = 0; l <= top_level; ++l) {
    levels_[l].gens.push_back(idx);
    grow_orbit(l);
  }
}

void Bsgs::close(std::size_t from_level) {
  std::size_t i = from_level;
  while (true) {
    bool restarted = false;
    auto& L = levels_[i];
    for (std::size_t oi = 0; oi < L.orbit.size() && !restarted; ++oi) {
      for (std::size_t k = 0; k < L.gens.size() && !restarted; ++k) {
        if (L.checked[oi][k]) continue;
        L.checked[oi][k] = true;
        const Permutation& s = strong_[L.gens[k]];
        Point img = s(L.orbit[oi]);
        Permutation h = L.reps[oi] * s * L.inv_reps[static_cast<std::size_t>(L.slot[img])];
        if (h.is_identity()) continue;
        auto [y, j] = strip(std::move(h), i + 1);
        if (j < degree_) {
          add_strong(std::move(y), j);
          i = j;
          restarted = true;
        }
      }
    }
    if (restarted) continue;
    if (i == 0) return;
    --i;
  }
}

bool Bsgs::extend(const Permutation& g) {
  if (g.degree() != degree_) throw InputError("degree mismatch in generator");
  auto [h, j] = strip(g, 0);
  if (j == degree_) return false;
  gens_.push_back(g);
  add_strong(std::move(h), j);
  close(j);
  return true;
}

std::vector<Permutation> Bsgs::enumerate(std::size_t cap) const {
  GroupOrder ord = order();
  if (ord > cap) {
    throw CapacityError("group order " + to_string(ord) + " exceeds enumeration cap " +
                        std::to_string(cap));
  }
  std::vector<Permutation> cur{Permutation(degree_)};
  for (std::size_t k = degree_; k-- > 0;) {
    const auto& L = levels_[k];
    if (L.orbit.size() == 1) continue;
    std::vector<Permutation> next;
    next.reserve(cur.size() * L.orbit.size());
    for (const auto& x : cur) {
      for (const auto& u : L.reps) next.push_back(x * u);
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Permutation> brute_force_closure(const GeneratorList& g, std::size_t cap) {
  g.validate();
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out;
  std::deque<Permutation> queue;
  Permutation id(g.degree);
  seen.insert(id);
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : g.gens) {
      Permutation y = x * s;
      if (seen.insert(y).second) {
        if (out.size() >= cap) throw CapacityError("closure exceeds cap");
        out.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  return out;
}

}  // namespace cayex
