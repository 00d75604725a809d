#include "quadop/exactlin.hpp"
#include <algorithm>
#include <stdexcept>

namespace quadop {

std::string rat_str(const Rat &q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

Rat parse_rat(const std::string &s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; i++) m.data[i].push_back({i, Rat(1)});
  return m;
}

Mat Mat::from_dense(const std::vector<std::vector<Rat>> &d) {
  Mat m((int)d.size(), d.empty() ? 0 : (int)d[0].size());
  for (int i = 0; i < m.rows; i++) {
    assert((int)d[i].size() == m.cols);
    for (int j = 0; j < m.cols; j++)
      if (d[i][j] != 0) m.data[i].push_back({j, d[i][j]});
  }
  return m;
}

Rat Mat::get(int r, int c) const {
  assert(r >= 0 && r < rows && c >= 0 && c < cols);
  for (auto &[j, v] : data[r])
    if (j == c) return v;
  return Rat(0);
}

void Mat::set(int r, int c, const Rat &v) {
  assert(r >= 0 && r < rows && c >= 0 && c < cols);
  auto &row = data[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const std::pair<int, Rat> &p, int col) { return p.first < col; });
  if (it != row.end() && it->first == c) {
    if (v == 0) row.erase(it);
    else it->second = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

void Mat::add_to(int r, int c, const Rat &v) {
  if (v == 0) return;
  auto &row = data[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const std::pair<int, Rat> &p, int col) { return p.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

int Mat::nnz() const {
  int n = 0;
  for (auto &r : data) n += (int)r.size();
  return n;
}

bool Mat::is_zero() const { return nnz() == 0; }

Mat Mat::mul(const Mat &o) const {
  assert(cols == o.rows);
  Mat r(rows, o.cols);
  for (int i = 0; i < rows; i++) {
    std::map<int, Rat> acc;
    for (auto &[k, a] : data[i])
      for (auto &[j, b] : o.data[k]) {
        auto it = acc.try_emplace(j, Rat(0)).first;
        it->second += a * b;
      }
    for (auto &[j, v] : acc)
      if (v != 0) r.data[i].push_back({j, v});
  }
  return r;
}

static std::vector<std::pair<int, Rat>> row_axpy(const std::vector<std::pair<int, Rat>> &x,
                                                 const Rat &c,
                                                 const std::vector<std::pair<int, Rat>> &y) {
  // x + c*y, both sorted
  std::vector<std::pair<int, Rat>> r;
  r.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
      r.push_back(x[i++]);
    } else if (i >= x.size() || y[j].first < x[i].first) {
      Rat v = c * y[j].second;
      if (v != 0) r.push_back({y[j].first, v});
      j++;
    } else {
      Rat v = x[i].second + c * y[j].second;
      if (v != 0) r.push_back({x[i].first, v});
      i++, j++;
    }
  }
  return r;
}

Mat Mat::add(const Mat &o) const {
  assert(rows == o.rows && cols == o.cols);
  Mat r(rows, cols);
  for (int i = 0; i < rows; i++) r.data[i] = row_axpy(data[i], Rat(1), o.data[i]);
  return r;
}

Mat Mat::sub(const Mat &o) const {
  assert(rows == o.rows && cols == o.cols);
  Mat r(rows, cols);
  for (int i = 0; i < rows; i++) r.data[i] = row_axpy(data[i], Rat(-1), o.data[i]);
  return r;
}

Mat Mat::scaled(const Rat &s) const {
  Mat r(rows, cols);
  if (s == 0) return r;
  for (int i = 0; i < rows; i++) {
    r.data[i] = data[i];
    for (auto &[j, v] : r.data[i]) v *= s;
  }
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols, rows);
  for (int i = 0; i < rows; i++)
    for (auto &[j, v] : data[i]) r.data[j].push_back({i, v});
  return r;
}

Mat Mat::vcat(const Mat &o) const {
  assert(cols == o.cols);
  Mat r(rows + o.rows, cols);
  for (int i = 0; i < rows; i++) r.data[i] = data[i];
  for (int i = 0; i < o.rows; i++) r.data[rows + i] = o.data[i];
  return r;
}

Mat Mat::hcat(const Mat &o) const {
  assert(rows == o.rows);
  Mat r(rows, cols + o.cols);
  for (int i = 0; i < rows; i++) {
    r.data[i] = data[i];
    for (auto &[j, v] : o.data[i]) r.data[i].push_back({cols + j, v});
  }
  return r;
}

Mat Mat::kron(const Mat &o) const {
  Mat r(rows * o.rows, cols * o.cols);
  for (int i = 0; i < rows; i++)
    for (int i2 = 0; i2 < o.rows; i2++) {
      auto &out = r.data[i * o.rows + i2];
      for (auto &[j, a] : data[i])
        for (auto &[j2, b] : o.data[i2]) out.push_back({j * o.cols + j2, a * b});
      std::sort(out.begin(), out.end(),
                [](auto &x, auto &y) { return x.first < y.first; });
    }
  return r;
}

std::vector<Rat> Mat::apply(const std::vector<Rat> &v) const {
  assert((int)v.size() == cols);
  std::vector<Rat> r(rows, Rat(0));
  for (int i = 0; i < rows; i++)
    for (auto &[j, a] : data[i]) r[i] += a * v[j];
  return r;
}

bool Mat::operator==(const Mat &o) const {
  return rows == o.rows && cols == o.cols && data == o.data;
}

std::vector<int> rref(Mat &m) {
  std::vector<int> pivcols;
  int prow = 0;
  while (true) {
    int best = -1;
    for (int i = prow; i < m.rows; i++) {
      if (m.data[i].empty()) continue;
      if (best < 0 || m.data[i][0].first < m.data[best][0].first ||
          (m.data[i][0].first == m.data[best][0].first &&
           m.data[i].size() < m.data[best].size()))
        best = i;
    }
    if (best < 0) break;
    std::swap(m.data[prow], m.data[best]);
    Rat lead = m.data[prow][0].second;
    if (lead != 1)
      for (auto &[j, v] : m.data[prow]) v /= lead;
    int pc = m.data[prow][0].first;
    for (int i = 0; i < m.rows; i++) {
      if (i == prow || m.data[i].empty()) continue;
      // coefficient at pc
      auto &row = m.data[i];
      auto it = std::lower_bound(row.begin(), row.end(), pc,
                                 [](const std::pair<int, Rat> &p, int col) { return p.first < col; });
      if (it != row.end() && it->first == pc)
        row = row_axpy(row, -it->second, m.data[prow]);
    }
    pivcols.push_back(pc);
    prow++;
  }
  m.data.resize(prow);
  m.rows = prow;
  return pivcols;
}

int rank(const Mat &m) {
  Mat c = m;
  return (int)rref(c).size();
}

Subspace Subspace::span(const Mat &rows) {
  Subspace s;
  s.ambient = rows.cols;
  s.basis = rows;
  rref(s.basis);
  return s;
}

bool Subspace::contains(const std::vector<Rat> &v) const {
  assert((int)v.size() == ambient);
  std::vector<Rat> w = v;
  for (int i = 0; i < basis.rows; i++) {
    int p = basis.data[i][0].first;
    if (w[p] != 0) {
      Rat c = w[p];
      for (auto &[j, x] : basis.data[i]) w[j] -= c * x;
    }
  }
  for (auto &x : w)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace &o) const {
  assert(ambient == o.ambient);
  for (int i = 0; i < o.basis.rows; i++) {
    std::vector<Rat> v(ambient, Rat(0));
    for (auto &[j, x] : o.basis.data[i]) v[j] = x;
    if (!contains(v)) return false;
  }
  return true;
}

std::vector<Rat> Subspace::coords(const std::vector<Rat> &v) const {
  assert((int)v.size() == ambient);
  std::vector<Rat> c(basis.rows, Rat(0));
  std::vector<Rat> w = v;
  for (int i = 0; i < basis.rows; i++) {
    int p = basis.data[i][0].first;
    if (w[p] != 0) {
      c[i] = w[p];
      for (auto &[j, x] : basis.data[i]) w[j] -= c[i] * x;
    }
  }
  for (auto &x : w) {
    assert(x == 0 && "coords: vector not in subspace");
    (void)x;
  }
  return c;
}

Subspace kernel(const Mat &m) {
  Mat r = m;
  std::vector<int> piv = rref(r);
  std::vector<bool> ispiv(m.cols, false);
  for (int p : piv) ispiv[p] = true;
  Mat basis(0, m.cols);
  for (int f = 0; f < m.cols; f++) {
    if (ispiv[f]) continue;
    std::vector<std::pair<int, Rat>> row;
    row.push_back({f, Rat(1)});
    for (int i = 0; i < r.rows; i++) {
      Rat c = r.get(i, f);
      if (c != 0) row.push_back({piv[i], -c});
    }
    std::sort(row.begin(), row.end(), [](auto &a, auto &b) { return a.first < b.first; });
    basis.data.push_back(row);
    basis.rows++;
  }
  return Subspace::span(basis);
}

Subspace row_space(const Mat &m) { return Subspace::span(m); }

Subspace sum(const Subspace &a, const Subspace &b) {
  assert(a.ambient == b.ambient);
  return Subspace::span(a.basis.vcat(b.basis));
}

Subspace intersection(const Subspace &a, const Subspace &b) {
  assert(a.ambient == b.ambient);
  Subspace anna = kernel(a.basis), annb = kernel(b.basis);
  return kernel(anna.basis.vcat(annb.basis));
}

Subspace annihilator(const Subspace &a, const Mat &pairing) {
  assert(pairing.rows == a.ambient && pairing.cols == a.ambient);
  assert(rank(pairing) == a.ambient && "annihilator: singular pairing");
  return kernel(a.basis.mul(pairing));
}

Mat Quotient::section() const {
  Mat s(proj.cols, dim);
  for (int k = 0; k < dim; k++) s.data[freecols[k]].push_back({k, Rat(1)});
  return s;
}

Quotient quotient_by(Mat relations, int ambient) {
  std::vector<int> piv = rref(relations);
  std::vector<bool> ispiv(ambient, false);
  for (int p : piv) ispiv[p] = true;
  Quotient q;
  for (int j = 0; j < ambient; j++)
    if (!ispiv[j]) q.freecols.push_back(j);
  q.dim = (int)q.freecols.size();
  q.proj = Mat(q.dim, ambient);
  for (int k = 0; k < q.dim; k++) {
    int f = q.freecols[k];
    q.proj.data[k].push_back({f, Rat(1)});
    for (int i = 0; i < relations.rows; i++) {
      Rat c = relations.get(i, f);
      if (c != 0) q.proj.data[k].push_back({piv[i], -c});
    }
    std::sort(q.proj.data[k].begin(), q.proj.data[k].end(),
              [](auto &a, auto &b) { return a.first < b.first; });
  }
  return q;
}

static std::pair<Mat, int> quotient_projection(Mat relations, int dim) {
  Quotient q = quotient_by(std::move(relations), dim);
  return {q.proj, q.dim};
}

std::pair<Mat, int> coinvariants(int dim, const std::vector<Mat> &action) {
  Mat rel(0, dim);
  for (auto &a : action) {
    assert(a.rows == dim && a.cols == dim);
    rel = rel.vcat(a.sub(Mat::identity(dim)).transpose());
  }
  return quotient_projection(rel, dim);
}

std::pair<Mat, int> coinvariants_sub(const Subspace &v, const std::vector<Mat> &action) {
  int d = v.dim();
  Mat rel(0, d);
  for (auto &a : action) {
    assert(a.rows == v.ambient && a.cols == v.ambient);
    // rows of v.basis * a^T - v.basis are the relation vectors, in ambient
    // coordinates; re-express in the subspace's own coordinates.
    Mat amb = v.basis.mul(a.transpose()).sub(v.basis);
    Mat rows(amb.rows, d);
    for (int i = 0; i < amb.rows; i++) {
      std::vector<Rat> vec(v.ambient, Rat(0));
      for (auto &[j, x] : amb.data[i]) vec[j] = x;
      std::vector<Rat> c = v.coords(vec);
      for (int j = 0; j < d; j++)
        if (c[j] != 0) rows.data[i].push_back({j, c[j]});
    }
    rel = rel.vcat(rows);
  }
  return quotient_projection(rel, d);
}

void ChainComplex::validate() const {
  assert(degrees.size() == dims.size());
  assert(diffs.size() + 1 == dims.size() || (dims.empty() && diffs.empty()));
  for (size_t i = 0; i < diffs.size(); i++) {
    assert(diffs[i].cols == dims[i] && diffs[i].rows == dims[i + 1]);
    if (i + 1 < diffs.size()) {
      if (!diffs[i + 1].mul(diffs[i]).is_zero())
        throw std::runtime_error("ChainComplex: d∘d != 0");
    }
  }
}

std::vector<int> ChainComplex::homology() const {
  validate();
  size_t n = dims.size();
  std::vector<int> rk(n, 0); // rk[i] = rank of diff out of space i
  for (size_t i = 0; i + 1 < n; i++) rk[i] = rank(diffs[i]);
  std::vector<int> h(n);
  for (size_t i = 0; i < n; i++) {
    int in = (i == 0) ? 0 : rk[i - 1];
    h[i] = dims[i] - rk[i] - in;
    assert(h[i] >= 0);
  }
  return h;
}

long ChainComplex::euler() const {
  long e = 0;
  for (size_t i = 0; i < dims.size(); i++)
    e += (degrees[i] % 2 == 0 ? 1 : -1) * (long)dims[i];
  return e;
}

} // namespace quadop
