#include "quadop/genseries.hpp"
#include <sstream>
#include <stdexcept>

namespace quadop {

namespace {

int total(const std::vector<int> &a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

Rat multifact(const std::vector<int> &a) {
  Rat f(1);
  for (int x : a)
    for (int k = 2; k <= x; k++) f *= k;
  return f;
}

// all multidegrees over r colors with 1 <= total <= N, ascending total degree
std::vector<std::vector<int>> multidegrees(int r, int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r) {
      if (total(cur) >= 1) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; v++) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
    cur[pos] = 0;
  };
  for (int deg = 1; deg <= N; deg++) {
    size_t before = out.size();
    rec(0, deg);
    // keep only the exact-degree ones added in this pass
    out.erase(std::remove_if(out.begin() + before, out.end(),
                             [&](const std::vector<int> &a) { return total(a) != deg; }),
              out.end());
  }
  return out;
}

using Poly = std::map<std::vector<int>, Rat>;

Poly pmul(const Poly &a, const Poly &b, int N) {
  Poly out;
  for (auto &[ma, va] : a)
    for (auto &[mb, vb] : b) {
      std::vector<int> m(ma.size());
      int t = 0;
      for (size_t j = 0; j < m.size(); j++) t += m[j] = ma[j] + mb[j];
      if (t > N) continue;
      Rat v = va * vb;
      if (v != 0) out[m] += v;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

} // namespace

FormalMap FormalMap::identity(int r, int N) {
  FormalMap f;
  f.r = r;
  f.N = N;
  for (int j = 0; j < r; j++) {
    std::vector<int> e(r, 0);
    e[j] = 1;
    f.c[e] = std::vector<Rat>(r, Rat(0));
    f.c[e][j] = 1;
  }
  return f;
}

Rat FormalMap::get(int i, const std::vector<int> &a) const {
  auto it = c.find(a);
  return it == c.end() ? Rat(0) : it->second[i];
}

void FormalMap::set(int i, const std::vector<int> &a, const Rat &v) {
  auto it = c.find(a);
  if (it == c.end()) it = c.emplace(a, std::vector<Rat>(r, Rat(0))).first;
  it->second[i] = v;
}

void FormalMap::validate() const {
  for (auto &[a, v] : c) {
    assert((int)a.size() == r && (int)v.size() == r);
    int t = total(a);
    assert(t >= 1 && t <= N);
  }
  for (int j = 0; j < r; j++) {
    std::vector<int> e(r, 0);
    e[j] = 1;
    for (int i = 0; i < r; i++)
      if (get(i, e) != (i == j ? 1 : 0))
        throw std::runtime_error("formal map: linear term is not the identity");
  }
}

bool FormalMap::operator==(const FormalMap &o) const {
  if (r != o.r || N != o.N) return false;
  for (auto &a : multidegrees(r, N))
    for (int i = 0; i < r; i++)
      if (get(i, a) != o.get(i, a)) return false;
  return true;
}

std::string FormalMap::str() const {
  std::ostringstream os;
  for (int i = 0; i < r; i++) {
    os << "g" << (i + 1) << ":";
    for (auto &a : multidegrees(r, N)) {
      Rat v = get(i, a);
      if (v == 0) continue;
      os << " " << rat_str(v) << "*";
      bool first = true;
      for (int j = 0; j < r; j++)
        if (a[j]) {
          if (!first) os << "*";
          os << "x" << (j + 1) << "^" << a[j] << "/" << a[j] << "!";
          first = false;
        }
    }
    os << "\n";
  }
  return os.str();
}

FormalMap map_from_dims(int r, int N,
                        const std::function<Rat(int, const std::vector<int> &)> &dims) {
  FormalMap f;
  f.r = r;
  f.N = N;
  for (auto &a : multidegrees(r, N))
    for (int i = 0; i < r; i++) {
      Rat v = dims(i, a);
      if (v != 0) f.set(i, a, v);
    }
  f.validate();
  return f;
}

FormalMap from_operad(const ExpandedOperad &op, int N) {
  if (N > op.N) throw std::runtime_error("from_operad: order exceeds expansion");
  int r = op.pres.E.colors;
  return map_from_dims(r, N, [&](int i, const std::vector<int> &a) -> Rat {
    int n = total(a);
    if (n == 1) return a[i] == 1 ? Rat(1) : Rat(0);
    std::vector<int> lc;
    for (int j = 0; j < r; j++) lc.insert(lc.end(), a[j], j);
    return Rat(op.dim(n, lc, i));
  });
}

FormalMap compose(const FormalMap &g, const FormalMap &h) {
  if (g.r != h.r) throw std::runtime_error("compose: color count mismatch");
  int r = g.r, N = std::min(g.N, h.N);
  // ordinary-normalized component polynomials of h and their powers
  std::vector<std::vector<Poly>> pw(r); // pw[j][e] = (h_j)^e
  for (int j = 0; j < r; j++) {
    Poly hj;
    for (auto &[a, v] : h.c)
      if (v[j] != 0 && total(a) <= N) hj[a] = v[j] / multifact(a);
    pw[j].resize(N + 1);
    pw[j][0][std::vector<int>(r, 0)] = 1;
    for (int e = 1; e <= N; e++) pw[j][e] = pmul(pw[j][e - 1], hj, N);
  }
  FormalMap out;
  out.r = r;
  out.N = N;
  for (auto &[a, v] : g.c) {
    if (total(a) > N) continue;
    Poly term = pw[0][a[0]];
    for (int j = 1; j < r; j++) term = pmul(term, pw[j][a[j]], N);
    Rat fa = multifact(a);
    for (int i = 0; i < r; i++) {
      if (v[i] == 0) continue;
      Rat coeff = v[i] / fa;
      for (auto &[m, tv] : term) {
        if (total(m) < 1) continue;
        Rat add = coeff * tv * multifact(m);
        if (add != 0) out.set(i, m, out.get(i, m) + add);
      }
    }
  }
  for (auto it = out.c.begin(); it != out.c.end();) {
    bool nz = false;
    for (auto &x : it->second) nz = nz || x != 0;
    it = nz ? std::next(it) : out.c.erase(it);
  }
  return out;
}

FormalMap neg_conj(const FormalMap &g) {
  FormalMap out = g;
  for (auto &[a, v] : out.c) {
    Rat s = (total(a) % 2 == 0) ? Rat(-1) : Rat(1); // -(-1)^(Sum a)
    for (auto &x : v) x *= s;
  }
  return out;
}

FormalMap revert_tree(const FormalMap &g) {
  g.validate();
  int r = g.r, N = g.N;
  FormalMap q = FormalMap::identity(r, N);
  // u_d(b) = q^{(d)}(b)/b!, filled in ascending total degree; the signed tree
  // sum at degree deg only needs children of strictly smaller degree
  std::map<std::vector<int>, std::vector<Rat>> u;
  for (int j = 0; j < r; j++) {
    std::vector<int> e(r, 0);
    e[j] = 1;
    u[e] = std::vector<Rat>(r, Rat(0));
    u[e][j] = 1;
  }
  auto mds = multidegrees(r, N);
  for (auto &a : mds) {
    int deg = total(a);
    if (deg < 2) continue;
    // child-sequence DP: state (leaf multidegree so far, child color counts)
    std::map<std::pair<std::vector<int>, std::vector<int>>, Rat> cur;
    cur[{std::vector<int>(r, 0), std::vector<int>(r, 0)}] = 1;
    std::vector<Rat> acc(r, Rat(0)); // accumulates Sum_k (1/k!) p(m) D_k[a][m]
    Rat kfact(1);
    for (int k = 1; k <= deg; k++) {
      kfact *= k;
      std::map<std::pair<std::vector<int>, std::vector<int>>, Rat> nxt;
      for (auto &[st, val] : cur) {
        auto &[b, m] = st;
        int room = deg - total(b);
        for (auto &[bc, uv] : u) {
          if (total(bc) > room) continue;
          std::vector<int> b2(r);
          bool ok = true;
          for (int j = 0; j < r; j++) {
            b2[j] = b[j] + bc[j];
            ok = ok && b2[j] <= a[j];
          }
          if (!ok) continue;
          for (int d = 0; d < r; d++) {
            if (uv[d] == 0) continue;
            std::vector<int> m2 = m;
            m2[d]++;
            nxt[{b2, m2}] += val * uv[d];
          }
        }
      }
      cur = std::move(nxt);
      if (k >= 2) {
        for (auto &[st, val] : cur) {
          auto &[b, m] = st;
          if (b != a) continue;
          for (int i = 0; i < r; i++) {
            Rat p = g.get(i, m);
            if (p != 0) acc[i] += p * val / kfact;
          }
        }
      }
    }
    Rat fa = multifact(a);
    std::vector<Rat> ua(r);
    for (int i = 0; i < r; i++) {
      Rat t = -fa * acc[i];
      if (t != 0) q.set(i, a, t);
      ua[i] = t / fa;
    }
    u[a] = ua;
  }
  return q;
}

FormalMap revert_newton(const FormalMap &g) {
  g.validate();
  FormalMap id = FormalMap::identity(g.r, g.N);
  FormalMap h = id;
  for (int it = 0; it < g.N; it++) {
    FormalMap e = compose(g, h);
    // h <- h + (id - g o h)
    FormalMap nh = h;
    for (auto &a : multidegrees(g.r, g.N))
      for (int i = 0; i < g.r; i++) {
        Rat v = nh.get(i, a) + id.get(i, a) - e.get(i, a);
        nh.set(i, a, v);
      }
    if (nh == h) break;
    h = nh;
  }
  return h;
}

bool duality_identity_check(const QuadraticPresentation &p, int N) {
  auto op = ExpandedOperad::expand(p, N);
  auto opd = ExpandedOperad::expand(dual(p), N);
  FormalMap gp = from_operad(op, N);
  FormalMap gd = from_operad(opd, N);
  return compose(gd, neg_conj(gp)) == FormalMap::identity(p.E.colors, N);
}

} // namespace quadop
