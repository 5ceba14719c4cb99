#include "knotlab/homfly.hpp"

#include "knotlab/planar_moves.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace knotlab {
namespace {

using LD = LinkDiagram;

void remove_crossings(LinkDiagram &d, const std::vector<char> &dead) {
  const int n = d.num_crossings();
  std::vector<int> new_id(n, -1);
  std::vector<std::int8_t> signs;
  for (int c = 0; c < n; ++c)
    if (!dead[c]) {
      new_id[c] = static_cast<int>(signs.size());
      signs.push_back(d.signs[c]);
    }
  for (auto &comp : d.components) {
    std::size_t w = 0;
    for (int p : comp) {
      const int id = new_id[LD::crossing_of(p)];
      if (id >= 0)
        comp[w++] = LD::pass(id, LD::is_over(p));
    }
    comp.resize(w);
  }
  d.signs = std::move(signs);
}

bool cyclic_neighbours(int i, int j, int len) {
  return len >= 2 && (j == (i + 1) % len || i == (j + 1) % len);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Positions of each pass code: component and index.
struct PassIndex {
  std::vector<int> comp, idx;
  explicit PassIndex(const LinkDiagram &d)
      : comp(2 * d.signs.size(), -1), idx(2 * d.signs.size(), -1) {
    for (int k = 0; k < d.num_components(); ++k)
      for (int t = 0; t < static_cast<int>(d.components[k].size()); ++t) {
        comp[d.components[k][t]] = k;
        idx[d.components[k][t]] = t;
      }
  }
};

// Orders components to minimise crossings where a later component passes
// over an earlier one. weight[i][j] counts crossings with i over j.
std::vector<int> best_component_order(const std::vector<std::vector<int>> &weight) {
  const int m = static_cast<int>(weight.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto cost = [&](const std::vector<int> &ord) {
    int total = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        total += weight[ord[j]][ord[i]];
    return total;
  };
  if (m <= 6) {
    std::vector<int> best = order;
    int best_cost = cost(order);
    while (std::next_permutation(order.begin(), order.end())) {
      const int c = cost(order);
      if (c < best_cost) {
        best_cost = c;
        best = order;
      }
    }
    return best;
  }
  std::vector<int> greedy;
  std::vector<char> used(m, 0);
  for (int step = 0; step < m; ++step) {
    int pick = -1, pick_cost = std::numeric_limits<int>::max();
    for (int c = 0; c < m; ++c) {
      if (used[c])
        continue;
      int bad = 0;
      for (int r = 0; r < m; ++r)
        if (!used[r] && r != c)
          bad += weight[r][c];
      if (bad < pick_cost) {
        pick_cost = bad;
        pick = c;
      }
    }
    used[pick] = 1;
    greedy.push_back(pick);
  }
  return greedy;
}

void push_code(std::string &key, int v) {
  key.push_back(static_cast<char>(v & 0xff));
  key.push_back(static_cast<char>(v >> 8));
}

} // namespace

LaurentPoly2 unlink_factor() {
  return LaurentPoly2::monomial(1, 1, -1) - LaurentPoly2::monomial(1, -1, -1);
}

void reduce_reidemeister(LinkDiagram &d) {
  for (;;) {
    const int n = d.num_crossings();
    if (n == 0)
      return;
    std::vector<char> dead(n, 0);
    bool any = false;

    for (const auto &comp : d.components) {
      const int len = static_cast<int>(comp.size());
      for (int t = 0; len >= 2 && t < len; ++t) {
        const int c = LD::crossing_of(comp[t]);
        if (c == LD::crossing_of(comp[(t + 1) % len])) {
          dead[c] = 1;
          any = true;
        }
      }
    }
    if (any) {
      remove_crossings(d, dead);
      continue;
    }

    const PassIndex pos(d);
    for (const auto &comp : d.components) {
      const int len = static_cast<int>(comp.size());
      for (int t = 0; len >= 2 && t < len; ++t) {
        const int p = comp[t];
        const int q = comp[(t + 1) % len];
        if (!LD::is_over(p) || !LD::is_over(q))
          continue;
        const int x = LD::crossing_of(p), y = LD::crossing_of(q);
        if (x == y || dead[x] || dead[y] || d.signs[x] == d.signs[y])
          continue;
        const int pu = p ^ 1, qu = q ^ 1;
        if (pos.comp[pu] != pos.comp[qu])
          continue;
        const int ulen = static_cast<int>(d.components[pos.comp[pu]].size());
        if (!cyclic_neighbours(pos.idx[pu], pos.idx[qu], ulen))
          continue;
        dead[x] = dead[y] = 1;
        any = true;
      }
    }
    if (!any)
      return;
    remove_crossings(d, dead);
  }
}

HomflyEngine::HomflyEngine(int max_crossings, std::size_t memo_limit)
    : max_crossings_(max_crossings), memo_limit_(memo_limit) {}

const LaurentPoly2 &HomflyEngine::delta_pow(int e) {
  if (delta_pows_.empty())
    delta_pows_.push_back(LaurentPoly2::constant(1));
  while (static_cast<int>(delta_pows_.size()) <= e)
    delta_pows_.push_back(delta_pows_.back() * unlink_factor());
  return delta_pows_[e];
}

std::optional<LaurentPoly2> HomflyEngine::compute(const LinkDiagram &diagram) {
  diagram.validate();
  LinkDiagram d = diagram;
  simplify_diagram(d);
  if (d.num_crossings() > max_crossings_)
    return std::nullopt;
  return eval(std::move(d));
}

LaurentPoly2 HomflyEngine::eval(LinkDiagram d) {
  reduce_reidemeister(d);
  const int before = d.num_components();
  std::erase_if(d.components, [](const auto &c) { return c.empty(); });
  const int empty = before - d.num_components();
  if (d.components.empty())
    return delta_pow(empty - 1);

  const int m = d.num_components();
  UnionFind uf(m);
  {
    const PassIndex pos(d);
    for (int c = 0; c < d.num_crossings(); ++c)
      uf.unite(pos.comp[LD::pass(c, true)], pos.comp[LD::pass(c, false)]);
  }
  std::vector<int> root_to_part(m, -1);
  int parts = 0;
  for (int k = 0; k < m; ++k)
    if (root_to_part[uf.find(k)] < 0)
      root_to_part[uf.find(k)] = parts++;

  if (parts == 1) {
    LaurentPoly2 p = eval_part(std::move(d));
    return empty > 0 ? delta_pow(empty) * p : p;
  }

  LaurentPoly2 result = delta_pow(parts - 1 + empty);
  for (int part = 0; part < parts; ++part) {
    LinkDiagram sub;
    std::vector<int> new_id(d.num_crossings(), -1);
    for (int k = 0; k < m; ++k) {
      if (root_to_part[uf.find(k)] != part)
        continue;
      std::vector<int> comp;
      comp.reserve(d.components[k].size());
      for (int p : d.components[k]) {
        const int c = LD::crossing_of(p);
        if (new_id[c] < 0) {
          new_id[c] = sub.num_crossings();
          sub.signs.push_back(d.signs[c]);
        }
        comp.push_back(LD::pass(new_id[c], LD::is_over(p)));
      }
      sub.components.push_back(std::move(comp));
    }
    result = result * eval_part(std::move(sub));
  }
  return result;
}

LaurentPoly2 HomflyEngine::eval_part(LinkDiagram d) {
  // A component passing only over (or only under) the others has no
  // self-crossings and can be lifted away: it is a split unknot.
  if (d.num_components() > 1)
    for (int k = 0; k < d.num_components(); ++k) {
      const auto &comp = d.components[k];
      const bool all_over =
          std::all_of(comp.begin(), comp.end(), [](int p) { return LD::is_over(p); });
      const bool all_under =
          std::none_of(comp.begin(), comp.end(), [](int p) { return LD::is_over(p); });
      if (!all_over && !all_under)
        continue;
      std::vector<char> dead(d.num_crossings(), 0);
      for (int p : comp)
        dead[LD::crossing_of(p)] = 1;
      d.components.erase(d.components.begin() + k);
      remove_crossings(d, dead);
      return unlink_factor() * eval(std::move(d));
    }
  const int before = d.num_crossings();
  if (before >= 3) {
    simplify_diagram(d);
    if (d.num_crossings() < before)
      return eval(std::move(d));
  }
  return eval_connected(d);
}

LaurentPoly2 HomflyEngine::eval_connected(const LinkDiagram &d) {
  const int m = d.num_components();
  const int n = d.num_crossings();
  const PassIndex pos(d);

  // Base point per component minimising self-crossings first met from below.
  std::vector<int> base(m, 0);
  for (int k = 0; k < m; ++k) {
    const auto &comp = d.components[k];
    const int len = static_cast<int>(comp.size());
    auto is_self = [&](int p) { return pos.comp[p ^ 1] == k; };
    int bad = 0;
    for (int t = 0; t < len; ++t) {
      const int p = comp[t];
      if (is_self(p) && !LD::is_over(p) && pos.idx[p ^ 1] > t)
        ++bad;
    }
    int best = bad, best_t = 0;
    for (int t = 0; t + 1 < len; ++t) {
      const int p = comp[t];
      if (is_self(p))
        bad += LD::is_over(p) ? 1 : -1;
      if (bad < best) {
        best = bad;
        best_t = t + 1;
      }
    }
    base[k] = best_t;
  }

  std::vector<int> order(1, 0);
  if (m > 1) {
    std::vector<std::vector<int>> weight(m, std::vector<int>(m, 0));
    for (int c = 0; c < n; ++c) {
      const int o = pos.comp[LD::pass(c, true)], u = pos.comp[LD::pass(c, false)];
      if (o != u)
        ++weight[o][u];
    }
    order = best_component_order(weight);
  }

  // Rebuild in traversal order with crossings numbered by first appearance.
  LinkDiagram canon;
  canon.signs.resize(n);
  std::vector<int> new_id(n, -1);
  int next = 0;
  std::string key;
  key.reserve(4 * n + 2 * m + n);
  for (int k : order) {
    const auto &comp = d.components[k];
    const int len = static_cast<int>(comp.size());
    std::vector<int> out;
    out.reserve(len);
    push_code(key, len);
    for (int s = 0; s < len; ++s) {
      const int p = comp[(base[k] + s) % len];
      const int c = LD::crossing_of(p);
      if (new_id[c] < 0) {
        new_id[c] = next++;
        canon.signs[new_id[c]] = d.signs[c];
      }
      const int q = LD::pass(new_id[c], LD::is_over(p));
      out.push_back(q);
      push_code(key, q);
    }
    canon.components.push_back(std::move(out));
  }
  for (auto s : canon.signs)
    key.push_back(s > 0 ? '+' : '-');

  if (auto it = memo_.find(key); it != memo_.end()) {
    ++hits_;
    return it->second;
  }

  const PassIndex cpos(canon);
  LinkDiagram cur = canon;
  LaurentPoly2 result;
  int a_pow = 0;
  std::vector<char> seen(n, 0);
  for (int ci = 0; ci < m; ++ci) {
    const int len = static_cast<int>(canon.components[ci].size());
    for (int t = 0; t < len; ++t) {
      const int p = cur.components[ci][t];
      const int c = LD::crossing_of(p);
      if (seen[c])
        continue;
      seen[c] = 1;
      if (LD::is_over(p))
        continue;
      const int s = cur.signs[c];
      const LaurentPoly2 smooth = eval(cur.smoothed(c));
      // P(D) = a^-2 P(D') + a^-1 z P(D0) for a positive crossing,
      // P(D) = a^2 P(D') - a z P(D0) for a negative one.
      if (s > 0) {
        result += smooth.times_monomial(1, a_pow - 1, 1);
        a_pow -= 2;
      } else {
        result += smooth.times_monomial(-1, a_pow + 1, 1);
        a_pow += 2;
      }
      const int other = canon.components[ci][t] ^ 1;
      cur.components[ci][t] ^= 1;
      cur.components[cpos.comp[other]][cpos.idx[other]] ^= 1;
      cur.signs[c] = static_cast<std::int8_t>(-s);
    }
  }
  result += delta_pow(m - 1).times_monomial(1, a_pow, 0);

  if (memo_.size() >= memo_limit_)
    memo_.clear();
  memo_.emplace(std::move(key), result);
  return result;
}

std::optional<LaurentPoly2> homfly(const LinkDiagram &diagram, int max_crossings) {
  HomflyEngine engine(max_crossings);
  return engine.compute(diagram);
}

std::optional<LaurentPoly2> homfly(const KnotDiagram &diagram, int max_crossings) {
  return homfly(LinkDiagram::from_knot_diagram(diagram), max_crossings);
}

} // namespace knotlab
