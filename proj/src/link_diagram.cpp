#include "knotlab/link_diagram.hpp"

#include <algorithm>
#include <stdexcept>

namespace knotlab {

PdCode parse_pd(std::string_view text) {
  PdCode pd;
  std::vector<int> nums;
  int cur = 0;
  bool in_num = false;
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      cur = cur * 10 + (ch - '0');
      in_num = true;
    } else {
      if (in_num)
        nums.push_back(cur);
      cur = 0;
      in_num = false;
      if (ch != '[' && ch != ']' && ch != ',' && ch != ' ' && ch != '\t')
        throw std::invalid_argument("unexpected character in PD code");
    }
  }
  if (in_num)
    nums.push_back(cur);
  if (nums.size() % 4 != 0)
    throw std::invalid_argument("PD code length is not a multiple of four");
  for (std::size_t i = 0; i < nums.size(); i += 4)
    pd.push_back({nums[i], nums[i + 1], nums[i + 2], nums[i + 3]});
  return pd;
}

std::string format_pd(const PdCode &pd) {
  std::string out = "[";
  for (std::size_t i = 0; i < pd.size(); ++i) {
    if (i)
      out += ',';
    out += '[' + std::to_string(pd[i][0]) + ',' + std::to_string(pd[i][1]) + ',' +
           std::to_string(pd[i][2]) + ',' + std::to_string(pd[i][3]) + ']';
  }
  return out + "]";
}

int LinkDiagram::writhe() const {
  int w = 0;
  for (auto s : signs)
    w += s;
  return w;
}

void LinkDiagram::validate() const {
  std::vector<int> over(signs.size(), 0), under(signs.size(), 0);
  for (const auto &comp : components)
    for (int p : comp) {
      const int c = crossing_of(p);
      if (c < 0 || c >= num_crossings())
        throw std::invalid_argument("pass references a missing crossing");
      (is_over(p) ? over : under)[c]++;
    }
  for (std::size_t c = 0; c < signs.size(); ++c) {
    if (over[c] != 1 || under[c] != 1)
      throw std::invalid_argument("crossing " + std::to_string(c) +
                                  " is not passed once over and once under");
    if (signs[c] != 1 && signs[c] != -1)
      throw std::invalid_argument("crossing sign must be +1 or -1");
  }
}

LinkDiagram LinkDiagram::from_knot_diagram(const KnotDiagram &d) {
  LinkDiagram out;
  out.signs.reserve(d.crossings.size());
  for (const auto &c : d.crossings)
    out.signs.push_back(static_cast<std::int8_t>(c.sign));
  std::vector<int> comp;
  for (const auto &v : d.gauss_code())
    comp.push_back(pass(v.crossing, v.over));
  out.components.push_back(std::move(comp));
  return out;
}

LinkDiagram LinkDiagram::from_pd(const PdCode &pd) {
  const int n = static_cast<int>(pd.size());
  LinkDiagram out;
  if (n == 0) {
    out.components.emplace_back();
    return out;
  }
  const int edges = 2 * n;
  auto succ = [edges](int e) { return e % edges + 1; };
  // head[e] = pass at the end of edge e.
  std::vector<int> head(edges + 1, -1);
  out.signs.resize(n);
  for (int c = 0; c < n; ++c) {
    const auto [i, j, k, l] = pd[c];
    for (int e : {i, j, k, l})
      if (e < 1 || e > edges)
        throw std::invalid_argument("PD edge label out of range");
    if (k != succ(i))
      throw std::invalid_argument("PD under-strand labels are not consecutive");
    const bool over_l_to_j = j == succ(l);
    if (!over_l_to_j && l != succ(j))
      throw std::invalid_argument("PD over-strand labels are not consecutive");
    head[i] = pass(c, false);
    head[over_l_to_j ? l : j] = pass(c, true);
    out.signs[c] = over_l_to_j ? 1 : -1;
  }
  std::vector<int> comp;
  for (int e = 1; e <= edges; ++e) {
    if (head[e] < 0)
      throw std::invalid_argument("PD code does not describe a single closed strand");
    comp.push_back(head[e]);
  }
  out.components.push_back(std::move(comp));
  out.validate();
  return out;
}

PdCode LinkDiagram::to_pd() const {
  if (components.size() != 1)
    throw std::invalid_argument("PD export supports knots only");
  const auto &comp = components.front();
  const int m = static_cast<int>(comp.size());
  PdCode pd(signs.size());
  auto label_in = [](int t) { return t + 1; };
  auto label_out = [m](int t) { return (t + 1) % m + 1; };
  std::vector<int> over_at(signs.size()), under_at(signs.size());
  for (int t = 0; t < m; ++t)
    (is_over(comp[t]) ? over_at : under_at)[crossing_of(comp[t])] = t;
  for (std::size_t c = 0; c < signs.size(); ++c) {
    const int i = label_in(under_at[c]);
    const int k = label_out(under_at[c]);
    const int oin = label_in(over_at[c]);
    const int oout = label_out(over_at[c]);
    if (signs[c] > 0)
      pd[c] = {i, oout, k, oin};
    else
      pd[c] = {i, oin, k, oout};
  }
  return pd;
}

LinkDiagram LinkDiagram::mirrored() const {
  LinkDiagram out = *this;
  for (auto &comp : out.components)
    for (int &p : comp)
      p ^= 1;
  for (auto &s : out.signs)
    s = static_cast<std::int8_t>(-s);
  return out;
}

LinkDiagram LinkDiagram::switched(int c) const {
  LinkDiagram out = *this;
  for (auto &comp : out.components)
    for (int &p : comp)
      if (crossing_of(p) == c)
        p ^= 1;
  out.signs[c] = static_cast<std::int8_t>(-out.signs[c]);
  return out;
}

LinkDiagram LinkDiagram::smoothed(int c) const {
  // Locate both passes.
  int ca = -1, ia = -1, cb = -1, ib = -1;
  for (int k = 0; k < num_components(); ++k)
    for (int t = 0; t < static_cast<int>(components[k].size()); ++t)
      if (crossing_of(components[k][t]) == c) {
        if (ca < 0) {
          ca = k;
          ia = t;
        } else {
          cb = k;
          ib = t;
        }
      }
  if (cb < 0)
    throw std::invalid_argument("crossing not found");

  LinkDiagram out;
  out.signs.reserve(signs.size() - 1);
  for (int k = 0; k < num_crossings(); ++k)
    if (k != c)
      out.signs.push_back(signs[k]);
  auto relabel = [c](int p) {
    const int x = crossing_of(p);
    return x > c ? p - 2 : p;
  };

  if (ca == cb) {
    const auto &comp = components[ca];
    const int len = static_cast<int>(comp.size());
    std::vector<int> inner, outer;
    for (int t = ia + 1; t < ib; ++t)
      inner.push_back(relabel(comp[t]));
    for (int t = ib + 1; t < len; ++t)
      outer.push_back(relabel(comp[t]));
    for (int t = 0; t < ia; ++t)
      outer.push_back(relabel(comp[t]));
    for (int k = 0; k < num_components(); ++k) {
      if (k == ca) {
        out.components.push_back(std::move(outer));
        out.components.push_back(std::move(inner));
      } else {
        std::vector<int> cc;
        cc.reserve(components[k].size());
        for (int p : components[k])
          cc.push_back(relabel(p));
        out.components.push_back(std::move(cc));
      }
    }
  } else {
    // Follow component ca to c, continue around cb, return along ca.
    const auto &A = components[ca];
    const auto &B = components[cb];
    std::vector<int> merged;
    merged.reserve(A.size() + B.size() - 2);
    for (std::size_t t = 0; t < static_cast<std::size_t>(ia); ++t)
      merged.push_back(relabel(A[t]));
    for (std::size_t s = 1; s < B.size(); ++s)
      merged.push_back(relabel(B[(ib + s) % B.size()]));
    for (std::size_t t = ia + 1; t < A.size(); ++t)
      merged.push_back(relabel(A[t]));
    for (int k = 0; k < num_components(); ++k) {
      if (k == cb)
        continue;
      if (k == ca) {
        out.components.push_back(std::move(merged));
        continue;
      }
      std::vector<int> cc;
      cc.reserve(components[k].size());
      for (int p : components[k])
        cc.push_back(relabel(p));
      out.components.push_back(std::move(cc));
    }
  }
  return out;
}

LinkDiagram LinkDiagram::connected_sum(const LinkDiagram &a, const LinkDiagram &b) {
  if (a.components.size() != 1 || b.components.size() != 1)
    throw std::invalid_argument("connected sum is defined here for knots only");
  LinkDiagram out = a;
  const int shift = a.num_crossings();
  for (int p : b.components.front())
    out.components.front().push_back(p + 2 * shift);
  out.signs.insert(out.signs.end(), b.signs.begin(), b.signs.end());
  return out;
}

} // namespace knotlab
