#include "quadop/io.hpp"
#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace quadop {

namespace {

std::string color_name(int c) { return "c" + std::to_string(c); }

int color_index(const Json &colors, const Json &name) {
  for (int i = 0; i < (int)colors.size(); i++)
    if (colors[i] == name) return i;
  throw std::runtime_error("unknown color name: " + name.dump());
}

std::vector<std::vector<int>> color_tuples(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && ++cur[i] == r) cur[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// rank of the tree shape in the file order: {2,3} < {1,3} < {1,2}
int shape_rank(const Tree &t) {
  std::vector<int> pair;
  for (auto &c : t.children)
    if (!c.leaf) pair = c.leaf_set();
  assert(pair.size() == 2);
  if (pair[0] == 2) return 0;
  if (pair[1] == 3) return 1;
  return 2;
}

} // namespace

std::vector<int> file_basis_order(const FreeSpace &f) {
  std::vector<int> idx(f.dim);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return shape_rank(f.trees[f.unindex(a).first]) <
           shape_rank(f.trees[f.unindex(b).first]);
  });
  return idx;
}

Json mat_to_json(const Mat &m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; r++) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; c++) row.push_back(rat_str(m.get(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const Json &rows, int cols) {
  if (!rows.is_array()) throw std::runtime_error("matrix: expected an array");
  Mat m((int)rows.size(), cols);
  for (int r = 0; r < m.rows; r++) {
    if (!rows[r].is_array() || (int)rows[r].size() != cols)
      throw std::runtime_error("matrix row of wrong length");
    for (int c = 0; c < cols; c++)
      m.set(r, c, parse_rat(rows[r][c].get<std::string>()));
  }
  return m;
}

Json presentation_to_json(const QuadraticPresentation &p) {
  Json j;
  j["name"] = p.name;
  Json colors = Json::array();
  for (int c = 0; c < p.E.colors; c++) colors.push_back(color_name(c));
  j["colors"] = colors;
  Json gens = Json::array(), sym = Json::array();
  for (int c = 0; c < p.E.colors; c++)
    for (int c1 = 0; c1 < p.E.colors; c1++)
      for (int c2 = 0; c2 < p.E.colors; c2++) {
        if (p.E.dim(c, c1, c2) == 0) continue;
        Json g;
        g["inputs"] = {color_name(c1), color_name(c2)};
        g["output"] = color_name(c);
        g["dim"] = p.E.dim(c, c1, c2);
        gens.push_back(g);
        Json s;
        s["inputs"] = {color_name(c1), color_name(c2)};
        s["output"] = color_name(c);
        s["matrix"] = mat_to_json(p.E.sig(c, c1, c2));
        sym.push_back(s);
      }
  j["generators"] = gens;
  j["symmetry"] = sym;
  Json rels = Json::array();
  for (auto &[key, sub] : p.R) {
    if (sub.dim() == 0) continue;
    FreeSpace f = FreeSpace::build(p.E, 3, {key[0], key[1], key[2]}, key[3]);
    auto ord = file_basis_order(f);
    Json rows = Json::array();
    for (int r = 0; r < sub.dim(); r++) {
      Json row = Json::array();
      for (int jf = 0; jf < f.dim; jf++)
        row.push_back(rat_str(sub.basis.get(r, ord[jf])));
      rows.push_back(row);
    }
    Json e;
    e["inputs"] = {color_name(key[0]), color_name(key[1]), color_name(key[2])};
    e["output"] = color_name(key[3]);
    e["rows"] = rows;
    rels.push_back(e);
  }
  j["relations"] = rels;
  return j;
}

QuadraticPresentation presentation_from_json(const Json &j) {
  QuadraticPresentation p;
  p.name = j.value("name", std::string("unnamed"));
  const Json &colors = j.at("colors");
  int r = (int)colors.size();
  if (r < 1) throw std::runtime_error("spec: empty color list");
  GeneratorSpace e;
  e.colors = r;
  e.dims.assign(r, std::vector<std::vector<int>>(r, std::vector<int>(r, 0)));
  e.sigma.assign(r, std::vector<std::vector<Mat>>(
                        r, std::vector<Mat>(r, Mat(0, 0))));
  for (auto &g : j.at("generators")) {
    int c1 = color_index(colors, g.at("inputs").at(0));
    int c2 = color_index(colors, g.at("inputs").at(1));
    int c = color_index(colors, g.at("output"));
    int d = g.at("dim").get<int>();
    if (d < 0) throw std::runtime_error("spec: negative generator dimension");
    e.dims[c][c1][c2] = d;
  }
  for (auto &s : j.at("symmetry")) {
    int c1 = color_index(colors, s.at("inputs").at(0));
    int c2 = color_index(colors, s.at("inputs").at(1));
    int c = color_index(colors, s.at("output"));
    Mat m = mat_from_json(s.at("matrix"), e.dims[c][c1][c2]);
    if (m.rows != e.dims[c][c2][c1])
      throw std::runtime_error("spec: symmetry block of wrong shape");
    e.sigma[c][c1][c2] = m;
  }
  for (int c = 0; c < r; c++)
    for (int c1 = 0; c1 < r; c1++)
      for (int c2 = 0; c2 < r; c2++) {
        const Mat &s = e.sigma[c][c1][c2];
        if (s.rows != e.dims[c][c2][c1] || s.cols != e.dims[c][c1][c2])
          throw std::runtime_error("spec: missing symmetry block");
        if (!(e.sigma[c][c2][c1].mul(s) ==
              Mat::identity(e.dims[c][c1][c2])))
          throw std::runtime_error("spec: symmetry is not an involution");
      }
  p.E = e;
  for (auto &re : j.at("relations")) {
    int c1 = color_index(colors, re.at("inputs").at(0));
    int c2 = color_index(colors, re.at("inputs").at(1));
    int c3 = color_index(colors, re.at("inputs").at(2));
    int c = color_index(colors, re.at("output"));
    FreeSpace f = FreeSpace::build(e, 3, {c1, c2, c3}, c);
    Mat file_rows = mat_from_json(re.at("rows"), f.dim);
    auto ord = file_basis_order(f);
    Mat rows(file_rows.rows, f.dim);
    for (int rr = 0; rr < rows.rows; rr++)
      for (int jf = 0; jf < f.dim; jf++)
        rows.set(rr, ord[jf], file_rows.get(rr, jf));
    Subspace sp = Subspace::span(rows);
    if (sp.dim() > 0) p.R[{c1, c2, c3, c}] = sp;
  }
  p.validate(); // throws if the relations are not stable
  return p;
}

void save_presentation(const std::string &path,
                       const QuadraticPresentation &p) {
  write_json(path, presentation_to_json(p));
}

QuadraticPresentation load_presentation(const std::string &spec) {
  if (spec == "com" || spec == "lie" || spec == "as" || spec == "z2")
    return preset(spec);
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open spec file: " + spec);
  Json j;
  in >> j;
  return presentation_from_json(j);
}

QuadraticAlgebraPresentation
algebra_from_json(const Json &j, const QuadraticPresentation &host) {
  int dv = j.at("dv").get<int>();
  bool super = j.value("super", false);
  if (host.E.colors != 1)
    throw std::runtime_error("algebra: single-color host required");
  // coinvariant dimension of the flagged action, to size S
  Mat sw(dv * dv, dv * dv);
  for (int i = 0; i < dv; i++)
    for (int k = 0; k < dv; k++) sw.set(k * dv + i, i * dv + k, Rat(1));
  Mat t = host.E.sig(0, 0, 0).kron(sw);
  if (super) t = t.scaled(Rat(-1));
  int qd = t.rows - rank(t.sub(Mat::identity(t.rows)));
  Subspace s = Subspace::span(mat_from_json(j.at("S"), qd));
  return make_quad_algebra(host, dv, super, s);
}

PAlgebra palgebra_from_json(const Json &j, const QuadraticPresentation &host) {
  PAlgebra a;
  a.d = j.at("dim").get<int>();
  for (auto &m : j.at("mul")) {
    Mat mm = mat_from_json(m, a.d * a.d);
    if (mm.rows != a.d)
      throw std::runtime_error("algebra: structure map of wrong shape");
    a.mul.push_back(mm);
  }
  if (!validate_algebra(host, a))
    throw std::runtime_error("algebra does not satisfy the relations");
  return a;
}

void write_json(const std::string &path, const Json &j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

} // namespace quadop
