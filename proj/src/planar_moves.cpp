#include "knotlab/planar_moves.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <stdexcept>

#include "knotlab/homfly.hpp"

namespace knotlab {
namespace {

using LD = LinkDiagram;

// Edge numbering: edge id of slot (component k, position t).
struct EdgeIndex {
  std::vector<int> offset;
  int total = 0;
  explicit EdgeIndex(const LinkDiagram &d) {
    for (const auto &comp : d.components) {
      offset.push_back(total);
      total += static_cast<int>(comp.size());
    }
  }
  int id(int k, int t) const { return offset[k] + t; }
};

struct Port {
  int edge = -1;
  bool head = false; // edge ends at this crossing
};

// Ports of each crossing in counter-clockwise order, starting with the
// incoming under-strand.
std::vector<std::array<Port, 4>> crossing_ports(const LinkDiagram &d, const EdgeIndex &ei) {
  const int n = d.num_crossings();
  std::vector<int> under_in(n), under_out(n), over_in(n), over_out(n);
  for (int k = 0; k < d.num_components(); ++k) {
    const auto &comp = d.components[k];
    const int len = static_cast<int>(comp.size());
    for (int t = 0; t < len; ++t) {
      const int c = LD::crossing_of(comp[t]);
      const int in = ei.id(k, (t + len - 1) % len);
      const int out = ei.id(k, t);
      if (LD::is_over(comp[t])) {
        over_in[c] = in;
        over_out[c] = out;
      } else {
        under_in[c] = in;
        under_out[c] = out;
      }
    }
  }
  std::vector<std::array<Port, 4>> ports(n);
  for (int c = 0; c < n; ++c) {
    ports[c][0] = {under_in[c], true};
    ports[c][2] = {under_out[c], false};
    if (d.signs[c] > 0) {
      ports[c][1] = {over_out[c], false};
      ports[c][3] = {over_in[c], true};
    } else {
      ports[c][1] = {over_in[c], true};
      ports[c][3] = {over_out[c], false};
    }
  }
  return ports;
}

struct StrandMove {
  int comp = -1;
  int start = -1;  // position of the first over pass
  int length = 0;  // number of over passes
};

std::vector<StrandMove> over_strands(const LinkDiagram &d) {
  std::vector<StrandMove> out;
  for (int k = 0; k < d.num_components(); ++k) {
    const auto &comp = d.components[k];
    const int len = static_cast<int>(comp.size());
    int first_under = -1;
    for (int t = 0; t < len; ++t)
      if (!LD::is_over(comp[t])) {
        first_under = t;
        break;
      }
    if (first_under < 0)
      continue;
    // Walk once around starting just after an under pass.
    int run_start = -1, run_len = 0;
    for (int s = 1; s <= len; ++s) {
      const int t = (first_under + s) % len;
      if (LD::is_over(comp[t])) {
        if (run_len == 0)
          run_start = t;
        ++run_len;
      } else if (run_len > 0) {
        out.push_back({k, run_start, run_len});
        run_len = 0;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const StrandMove &a, const StrandMove &b) { return a.length > b.length; });
  return out;
}

struct Crossed {
  int edge;
  int sign;
};

// Tries to reroute the given over-strand; returns true if applied.
bool try_reroute(LinkDiagram &d, const StrandMove &mv, const EdgeIndex &ei,
                 const DiagramFaces &faces) {
  const auto &comp = d.components[mv.comp];
  const int len = static_cast<int>(comp.size());
  const int e_start = ei.id(mv.comp, (mv.start + len - 1) % len);
  const int e_end = ei.id(mv.comp, (mv.start + mv.length - 1) % len);

  std::vector<char> free_edge(ei.total, 0);
  for (int s = 0; s + 1 < mv.length; ++s)
    free_edge[ei.id(mv.comp, (mv.start + s) % len)] = 1;

  // Face adjacency through edges.
  std::vector<std::vector<std::pair<int, int>>> adj(faces.num_faces);
  for (int e = 0; e < ei.total; ++e) {
    if (faces.left[e] == faces.right[e])
      continue;
    adj[faces.left[e]].push_back({faces.right[e], e});
    adj[faces.right[e]].push_back({faces.left[e], e});
  }
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(faces.num_faces, inf), prev_face(faces.num_faces, -1),
      prev_edge(faces.num_faces, -1);
  std::deque<int> dq;
  for (int f : {faces.left[e_start], faces.right[e_start]})
    if (dist[f] != 0) {
      dist[f] = 0;
      dq.push_back(f);
    }
  while (!dq.empty()) {
    const int f = dq.front();
    dq.pop_front();
    for (auto [g, e] : adj[f]) {
      const int w = free_edge[e] ? 0 : 1;
      if (dist[f] + w < dist[g]) {
        dist[g] = dist[f] + w;
        prev_face[g] = f;
        prev_edge[g] = e;
        if (w == 0)
          dq.push_front(g);
        else
          dq.push_back(g);
      }
    }
  }
  int goal = faces.left[e_end];
  if (dist[faces.right[e_end]] < dist[goal])
    goal = faces.right[e_end];
  if (dist[goal] >= mv.length)
    return false;

  std::vector<Crossed> path;
  for (int f = goal; prev_face[f] >= 0; f = prev_face[f]) {
    const int e = prev_edge[f];
    // An over-strand moving from the left of e to its right is positive.
    if (!free_edge[e])
      path.push_back({e, prev_face[f] == faces.left[e] ? 1 : -1});
  }
  std::reverse(path.begin(), path.end());

  std::vector<int> slot_insert(ei.total, -1);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (slot_insert[path[i].edge] >= 0)
      return false;
    slot_insert[path[i].edge] = static_cast<int>(i);
  }

  const int n = d.num_crossings();
  std::vector<char> removed(n, 0);
  std::vector<char> strand_pos(len, 0);
  for (int s = 0; s < mv.length; ++s) {
    const int t = (mv.start + s) % len;
    strand_pos[t] = 1;
    removed[LD::crossing_of(comp[t])] = 1;
  }
  std::vector<int> new_id(n, -1);
  LinkDiagram out;
  for (int c = 0; c < n; ++c)
    if (!removed[c]) {
      new_id[c] = out.num_crossings();
      out.signs.push_back(d.signs[c]);
    }
  const int base = out.num_crossings();
  for (const auto &x : path)
    out.signs.push_back(static_cast<std::int8_t>(x.sign));

  for (int k = 0; k < d.num_components(); ++k) {
    const auto &src = d.components[k];
    const int klen = static_cast<int>(src.size());
    std::vector<int> dst;
    dst.reserve(klen + 2 * path.size());
    for (int t = 0; t < klen; ++t) {
      const bool in_strand = k == mv.comp && strand_pos[t];
      if (in_strand) {
        if (t == mv.start)
          for (std::size_t i = 0; i < path.size(); ++i)
            dst.push_back(LD::pass(base + static_cast<int>(i), true));
      } else {
        const int c = LD::crossing_of(src[t]);
        if (!removed[c])
          dst.push_back(LD::pass(new_id[c], LD::is_over(src[t])));
      }
      const int slot = slot_insert[ei.id(k, t)];
      if (slot >= 0)
        dst.push_back(LD::pass(base + slot, false));
    }
    out.components.push_back(std::move(dst));
  }
  d = std::move(out);
  return true;
}

bool diagram_connected(const LinkDiagram &d) {
  const int m = d.num_components();
  if (m == 0)
    return false;
  for (const auto &comp : d.components)
    if (comp.empty())
      return false;
  if (m == 1)
    return true;
  std::vector<int> comp_of(2 * d.num_crossings());
  for (int k = 0; k < m; ++k)
    for (int p : d.components[k])
      comp_of[p] = k;
  std::vector<int> parent(m);
  for (int k = 0; k < m; ++k)
    parent[k] = k;
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int c = 0; c < d.num_crossings(); ++c)
    parent[find(comp_of[2 * c])] = find(comp_of[2 * c + 1]);
  for (int k = 1; k < m; ++k)
    if (find(k) != find(0))
      return false;
  return true;
}

bool over_pass(LinkDiagram &d) {
  const EdgeIndex ei(d);
  const DiagramFaces faces = trace_faces(d);
  for (const auto &mv : over_strands(d))
    if (try_reroute(d, mv, ei, faces))
      return true;
  return false;
}

} // namespace

DiagramFaces trace_faces(const LinkDiagram &d) {
  const EdgeIndex ei(d);
  const auto ports = crossing_ports(d, ei);
  // Port locations of each edge end.
  std::vector<std::pair<int, int>> head_at(ei.total, {-1, -1}), tail_at(ei.total, {-1, -1});
  for (int c = 0; c < d.num_crossings(); ++c)
    for (int p = 0; p < 4; ++p)
      (ports[c][p].head ? head_at : tail_at)[ports[c][p].edge] = {c, p};

  DiagramFaces faces;
  faces.left.assign(ei.total, -1);
  faces.right.assign(ei.total, -1);
  // Dart (e, forward) has its face on the left of e; (e, backward) on the
  // right. Turning clockwise at each crossing keeps the face on the left.
  for (int e0 = 0; e0 < ei.total; ++e0)
    for (int fwd0 = 0; fwd0 < 2; ++fwd0) {
      auto &slot0 = fwd0 ? faces.left[e0] : faces.right[e0];
      if (slot0 >= 0)
        continue;
      const int f = faces.num_faces++;
      int e = e0;
      bool fwd = fwd0 != 0;
      for (int guard = 0; guard <= 4 * ei.total; ++guard) {
        auto &slot = fwd ? faces.left[e] : faces.right[e];
        if (slot >= 0)
          break;
        slot = f;
        const auto [c, p] = fwd ? head_at[e] : tail_at[e];
        const Port &q = ports[c][(p + 3) % 4];
        e = q.edge;
        fwd = !q.head;
      }
    }
  return faces;
}

bool strand_pass(LinkDiagram &d) {
  if (d.num_crossings() < 3 || !diagram_connected(d))
    return false;
  if (over_pass(d))
    return true;
  LinkDiagram m = d.mirrored();
  if (over_pass(m)) {
    d = m.mirrored();
    return true;
  }
  return false;
}

void simplify_diagram(LinkDiagram &d) {
  for (;;) {
    reduce_reidemeister(d);
    if (!strand_pass(d))
      return;
  }
}

} // namespace knotlab
