#include "quadop/trees.hpp"
#include <algorithm>
#include <cassert>

namespace quadop {

Tree Tree::make_leaf(int label, int color) {
  Tree t;
  t.leaf = true;
  t.label = label;
  t.color = color;
  return t;
}

Tree Tree::make_node(std::vector<Tree> ch, int color) {
  assert(ch.size() >= 2);
  Tree t;
  t.leaf = false;
  t.color = color;
  t.children = std::move(ch);
  std::sort(t.children.begin(), t.children.end(),
            [](const Tree &a, const Tree &b) { return a.min_leaf() < b.min_leaf(); });
  return t;
}

int Tree::min_leaf() const {
  if (leaf) return label;
  int m = children[0].min_leaf(); // children sorted, but be safe
  for (auto &c : children) m = std::min(m, c.min_leaf());
  return m;
}

int Tree::n_leaves() const {
  if (leaf) return 1;
  int n = 0;
  for (auto &c : children) n += c.n_leaves();
  return n;
}

int Tree::num_internal_edges() const {
  if (leaf) return 0;
  int n = 0;
  for (auto &c : children) {
    if (!c.leaf) n += 1 + c.num_internal_edges();
  }
  return n;
}

std::vector<int> Tree::leaf_set() const {
  std::vector<int> s;
  if (leaf) {
    s.push_back(label);
    return s;
  }
  for (auto &c : children) {
    auto cs = c.leaf_set();
    s.insert(s.end(), cs.begin(), cs.end());
  }
  std::sort(s.begin(), s.end());
  return s;
}

bool Tree::operator==(const Tree &o) const {
  if (leaf != o.leaf || color != o.color) return false;
  if (leaf) return label == o.label;
  return children == o.children;
}

static bool any_color(const Tree &t) {
  if (t.color != 0) return true;
  for (auto &c : t.children)
    if (any_color(c)) return true;
  return false;
}

static std::string str_rec(const Tree &t, bool colored) {
  std::string s;
  if (t.leaf) {
    s = std::to_string(t.label);
  } else {
    s = "(";
    for (size_t i = 0; i < t.children.size(); i++) {
      if (i) s += ",";
      s += str_rec(t.children[i], colored);
    }
    s += ")";
  }
  if (colored) s += ":" + std::to_string(t.color + 1);
  return s;
}

std::string Tree::str() const { return str_rec(*this, any_color(*this)); }

Tree star(int n, const std::vector<int> &leaf_colors, int out_color) {
  assert(n >= 2);
  std::vector<Tree> ch;
  for (int i = 1; i <= n; i++)
    ch.push_back(Tree::make_leaf(i, leaf_colors.empty() ? 0 : leaf_colors[i - 1]));
  return Tree::make_node(std::move(ch), out_color);
}

const Tree &subtree_at(const Tree &t, const std::vector<int> &path) {
  const Tree *cur = &t;
  for (int i : path) {
    assert(!cur->leaf && i >= 0 && i < (int)cur->children.size());
    cur = &cur->children[i];
  }
  return *cur;
}

struct EdgeKey {
  int min_leaf;
  std::vector<int> leaves;
  EdgeRef ref;
};

static void collect_edges(const Tree &t, std::vector<int> &path,
                          std::vector<EdgeKey> &out, bool include_leaves) {
  for (int i = 0; i < (int)t.children.size(); i++) {
    const Tree &c = t.children[i];
    path.push_back(i);
    if (!c.leaf || include_leaves) {
      EdgeKey k;
      k.leaves = c.leaf_set();
      k.min_leaf = k.leaves[0];
      k.ref.path = path;
      k.ref.internal = !c.leaf;
      out.push_back(std::move(k));
    }
    if (!c.leaf) collect_edges(c, path, out, include_leaves);
    path.pop_back();
  }
}

std::vector<EdgeRef> canonical_edge_order(const Tree &t, bool include_leaves) {
  std::vector<EdgeKey> keys;
  std::vector<int> path;
  collect_edges(t, path, keys, include_leaves);
  std::sort(keys.begin(), keys.end(), [](const EdgeKey &a, const EdgeKey &b) {
    if (a.min_leaf != b.min_leaf) return a.min_leaf < b.min_leaf;
    return a.leaves < b.leaves;
  });
  std::vector<EdgeRef> refs;
  for (auto &k : keys) refs.push_back(k.ref);
  return refs;
}

static Tree contract_at(const Tree &t, const std::vector<int> &path, size_t depth) {
  assert(!t.leaf);
  Tree r = t;
  int idx = path[depth];
  if (depth + 1 == path.size()) {
    Tree child = r.children[idx];
    assert(!child.leaf && "contract: external edge");
    r.children.erase(r.children.begin() + idx);
    for (auto &gc : child.children) r.children.push_back(gc);
    std::sort(r.children.begin(), r.children.end(),
              [](const Tree &a, const Tree &b) { return a.min_leaf() < b.min_leaf(); });
  } else {
    r.children[idx] = contract_at(r.children[idx], path, depth + 1);
  }
  return r;
}

std::pair<Tree, int> contract(const Tree &t, const EdgeRef &e, bool det_with_leaves) {
  assert(e.internal && !e.path.empty() && "contract: not an internal edge");
  auto order = canonical_edge_order(t, det_with_leaves);
  int pos = -1;
  for (int i = 0; i < (int)order.size(); i++)
    if (order[i] == e) {
      pos = i;
      break;
    }
  assert(pos >= 0 && "contract: edge not found");
  Tree r = contract_at(t, e.path, 0);
  return {r, pos % 2 == 0 ? 1 : -1};
}

static Tree graft_rec(const Tree &t2, int i, const Tree &t1s, int n1) {
  if (t2.leaf) {
    if (t2.label == i) return t1s;
    Tree l = t2;
    if (l.label > i) l.label += n1 - 1;
    return l;
  }
  Tree r = t2;
  for (auto &c : r.children) c = graft_rec(c, i, t1s, n1);
  std::sort(r.children.begin(), r.children.end(),
            [](const Tree &a, const Tree &b) { return a.min_leaf() < b.min_leaf(); });
  return r;
}

static Tree relabel_shift(const Tree &t, int shift) {
  Tree r = t;
  if (r.leaf) {
    r.label += shift;
    return r;
  }
  for (auto &c : r.children) c = relabel_shift(c, shift);
  return r;
}

Tree compose(const Tree &t1, int i, const Tree &t2) {
  int n1 = t1.n_leaves();
  assert(i >= 1 && i <= t2.n_leaves());
  Tree t1s = relabel_shift(t1, i - 1);
  return graft_rec(t2, i, t1s, n1);
}

static void edge_sets(const Tree &t, std::vector<std::pair<std::vector<int>, int>> &out) {
  for (auto &c : t.children) {
    if (!c.leaf) {
      out.push_back({c.leaf_set(), c.color});
      edge_sets(c, out);
    }
  }
}

static void leaf_colors_of(const Tree &t, std::vector<std::pair<int, int>> &out) {
  if (t.leaf) {
    out.push_back({t.label, t.color});
    return;
  }
  for (auto &c : t.children) leaf_colors_of(c, out);
}

bool leq(const Tree &t, const Tree &t2) {
  if (t.n_leaves() != t2.n_leaves() || t.color != t2.color) return false;
  std::vector<std::pair<int, int>> lc1, lc2;
  leaf_colors_of(t, lc1);
  leaf_colors_of(t2, lc2);
  std::sort(lc1.begin(), lc1.end());
  std::sort(lc2.begin(), lc2.end());
  if (lc1 != lc2) return false;
  // contraction only deletes internal edges; remaining edges keep their
  // leaf sets, so t >= t2 iff t2's internal edges all occur in t
  std::vector<std::pair<std::vector<int>, int>> e1, e2;
  edge_sets(t, e1);
  edge_sets(t2, e2);
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  return std::includes(e1.begin(), e1.end(), e2.begin(), e2.end());
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n, bool pairs_only) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> assign(n, 0);
  // restricted growth strings
  auto emit = [&]() {
    int k = *std::max_element(assign.begin(), assign.end()) + 1;
    if (k < 2 || (pairs_only && k != 2)) return;
    std::vector<std::vector<int>> blocks(k);
    for (int i = 0; i < n; i++) blocks[assign[i]].push_back(i);
    out.push_back(std::move(blocks));
  };
  // iterate RGS in lexicographic order
  std::vector<int> maxv(n, 0);
  auto rec = [&](auto &&self, int i, int mx) -> void {
    if (i == n) {
      emit();
      return;
    }
    for (int b = 0; b <= mx + 1 && b < n; b++) {
      assign[i] = b;
      self(self, i + 1, std::max(mx, b));
    }
  };
  assign[0] = 0;
  rec(rec, 1, 0);
  return out;
}

static void cartesian(const std::vector<std::vector<Tree>> &choices, size_t i,
                      std::vector<Tree> &cur, int out_color,
                      std::vector<Tree> &out) {
  if (i == choices.size()) {
    out.push_back(Tree::make_node(cur, out_color));
    return;
  }
  for (auto &t : choices[i]) {
    cur.push_back(t);
    cartesian(choices, i + 1, cur, out_color, out);
    cur.pop_back();
  }
}

// leaves: (label, color) pairs, sorted by label
static std::vector<Tree> enum_rec(const std::vector<std::pair<int, int>> &leaves,
                                  int out_color, int num_colors, bool binary_only) {
  std::vector<Tree> out;
  int n = (int)leaves.size();
  assert(n >= 2);
  for (auto &blocks : set_partitions(n, binary_only)) {
    std::vector<std::vector<Tree>> choices;
    for (auto &b : blocks) {
      std::vector<Tree> opts;
      if (b.size() == 1) {
        opts.push_back(Tree::make_leaf(leaves[b[0]].first, leaves[b[0]].second));
      } else {
        std::vector<std::pair<int, int>> sub;
        for (int i : b) sub.push_back(leaves[i]);
        for (int c = 0; c < num_colors; c++) {
          auto ts = enum_rec(sub, c, num_colors, binary_only);
          opts.insert(opts.end(), ts.begin(), ts.end());
        }
      }
      choices.push_back(std::move(opts));
    }
    std::vector<Tree> cur;
    cartesian(choices, 0, cur, out_color, out);
  }
  return out;
}

std::vector<Tree> enumerate_trees(int n, bool binary_only, int num_colors,
                                  const std::vector<int> &leaf_colors,
                                  int out_color) {
  assert(n >= 1);
  std::vector<std::pair<int, int>> leaves;
  for (int i = 1; i <= n; i++)
    leaves.push_back({i, leaf_colors.empty() ? 0 : leaf_colors[i - 1]});
  if (n == 1) return {Tree::make_leaf(1, leaves[0].second)};
  return enum_rec(leaves, out_color, num_colors, binary_only);
}

} // namespace quadop
