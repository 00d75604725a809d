// Command-line workbench: tree enumeration, expansion, duality, Koszulness
// certificates, generating series, reversion, algebra homology, products of
// presentations, and quadratic-algebra duality. Reports are JSON (exact
// rationals as "p/q" strings) or plain text; exit 0 = success, 1 = validation
// error, 2 = resource bound exceeded.
#include "CLI11.hpp"
#include "quadop/cobar.hpp"
#include "quadop/io.hpp"
#include "quadop/manin.hpp"
#include <fstream>
#include <iostream>

using namespace quadop;

namespace {

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// desk-scale arity ceiling: 6 when every generator block is a line, 5 otherwise
int arity_bound(const QuadraticPresentation &p) {
  int mx = 0;
  for (int c = 0; c < p.E.colors; c++)
    for (int c1 = 0; c1 < p.E.colors; c1++)
      for (int c2 = 0; c2 < p.E.colors; c2++)
        mx = std::max(mx, p.E.dim(c, c1, c2));
  return mx <= 1 ? 6 : 5;
}

void check_bound(const QuadraticPresentation &p, int n, bool force) {
  int b = arity_bound(p);
  if (n <= b) return;
  std::string msg = "requested arity/order " + std::to_string(n) +
                    " exceeds the default bound " + std::to_string(b) +
                    " for this generator space";
  if (!force) throw resource_error(msg + " (use --force to override)");
  std::cerr << "warning: " << msg << "; proceeding under --force\n";
}

void require_single_color(const QuadraticPresentation &p) {
  if (p.E.colors != 1)
    throw std::runtime_error("this command supports single-color inputs only");
}

void print_text(const Json &j, std::ostream &os, const std::string &indent) {
  auto scalar = [](const Json &v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto flat = [&](const Json &a) {
    for (auto &v : a)
      if (!v.is_primitive()) return false;
    return true;
  };
  for (auto &[key, val] : j.items()) {
    if (val.is_primitive()) {
      os << indent << key << ": " << scalar(val) << "\n";
    } else if (val.is_array() && flat(val)) {
      os << indent << key << ":";
      for (auto &v : val) os << " " << scalar(v);
      os << "\n";
    } else if (val.is_array()) {
      os << indent << key << ":\n";
      for (auto &v : val) {
        if (v.is_primitive()) {
          os << indent << "  - " << scalar(v) << "\n";
        } else if (v.is_array() && flat(v)) {
          os << indent << "  -";
          for (auto &w : v) os << " " << scalar(w);
          os << "\n";
        } else {
          os << indent << "  -\n";
          print_text(v, os, indent + "    ");
        }
      }
    } else {
      os << indent << key << ":\n";
      print_text(val, os, indent + "  ");
    }
  }
}

void emit(const Json &rep, const std::string &out, const std::string &format) {
  if (!out.empty()) write_json(out, rep);
  if (format == "json")
    std::cout << rep.dump(2) << "\n";
  else
    print_text(rep, std::cout, "");
}

Json int_list(const std::vector<int> &v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

Json homology_json(const HomologyReport &rep) {
  Json per = Json::array();
  for (size_t i = 0; i < rep.dims.size(); i++) {
    Json e;
    e["arity"] = (int)i + 2;
    e["degrees"] = int_list(rep.degrees[i]);
    e["dims"] = int_list(rep.dims[i]);
    e["homology"] = int_list(rep.homology[i]);
    per.push_back(e);
  }
  Json j;
  j["arities"] = per;
  j["h0"] = int_list(rep.h_top);
  j["concentrated_in_degree_0"] = rep.concentrated;
  return j;
}

// single-variable truncated series like "x + x^2/2 - 3/4x^3", ordinary
// coefficients; stored in the exponential normalization of FormalMap
FormalMap parse_series(const std::string &text, int order) {
  std::string s;
  for (char c : text)
    if (!isspace((unsigned char)c)) s += c;
  FormalMap g;
  g.r = 1;
  g.N = order;
  size_t i = 0;
  auto integer = [&]() {
    if (i >= s.size() || !isdigit((unsigned char)s[i]))
      throw std::runtime_error("series: expected a number at position " +
                               std::to_string(i));
    long v = 0;
    while (i < s.size() && isdigit((unsigned char)s[i]))
      v = v * 10 + (s[i++] - '0');
    return v;
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      i++;
    } else if (!first) {
      throw std::runtime_error("series: expected + or - between terms");
    }
    first = false;
    Rat coef(1);
    if (isdigit((unsigned char)s[i])) {
      long p = integer();
      coef = Rat(p);
      if (i < s.size() && s[i] == '/') {
        i++;
        coef /= Rat(integer());
      }
      if (i < s.size() && s[i] == '*') i++;
    }
    if (i >= s.size() || s[i] != 'x')
      throw std::runtime_error("series: every term must contain x");
    i++;
    long k = 1;
    if (i < s.size() && s[i] == '^') {
      i++;
      k = integer();
    }
    if (i < s.size() && s[i] == '/') {
      i++;
      coef /= Rat(integer());
    }
    if (k < 1) throw std::runtime_error("series: powers start at 1");
    if (k > order) continue;
    Rat fact(1);
    for (long m = 2; m <= k; m++) fact *= Rat(m);
    g.set(0, {(int)k}, g.get(0, {(int)k}) + Rat(sign) * coef * fact);
  }
  g.validate(); // linear term must be x
  return g;
}

Json series_json(const FormalMap &g, bool exponential) {
  Json coeffs = Json::array();
  for (auto &[deg, vals] : g.c) {
    Json e;
    e["multidegree"] = int_list(deg);
    Json v = Json::array();
    for (size_t c = 0; c < vals.size(); c++) {
      if (exponential) {
        v.push_back(rat_str(vals[c]));
      } else {
        Rat fact(1); // product of a_j!: exponential -> ordinary coefficient
        for (int a : deg)
          for (int m = 2; m <= a; m++) fact *= Rat(m);
        v.push_back(rat_str(vals[c] / fact));
      }
    }
    e["values"] = v;
    coeffs.push_back(e);
  }
  return coeffs;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"exact workbench for quadratic operads"};
  app.require_subcommand(1);

  std::string spec, spec2, algebra, out, format = "text", series_str, product =
                                                                         "circ";
  int max_arity = 5, order = 0, count = 0;
  bool binary = false, force = false;
  auto add_common = [&](CLI::App *c, bool with_spec) {
    if (with_spec)
      c->add_option("--spec", spec, "preset name or spec file")->required();
    c->add_option("--out", out, "also write the report to this file");
    c->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    c->add_flag("--force", force, "override the resource bound");
  };

  auto *c_trees = app.add_subcommand("trees", "enumerate reduced n-trees");
  c_trees->add_option("--count", count, "number of leaves")->required();
  c_trees->add_flag("--binary", binary, "binary trees only");
  add_common(c_trees, false);

  auto *c_expand = app.add_subcommand("expand", "arity-by-arity dimensions");
  add_common(c_expand, true);
  c_expand->add_option("--max-arity", max_arity, "expand up to this arity");

  auto *c_dual = app.add_subcommand("dual", "quadratic dual presentation");
  add_common(c_dual, true);
  std::string save_spec;
  c_dual->add_option("--save-spec", save_spec,
                     "write the resulting presentation as a spec file");

  auto *c_ck = app.add_subcommand("check-koszul",
                                  "dual dg-operad homology certificate");
  add_common(c_ck, true);
  c_ck->add_option("--max-arity", max_arity, "check up to this arity");

  auto *c_kc = app.add_subcommand("koszul-complex",
                                  "exactness of the arity-n complexes");
  add_common(c_kc, true);
  c_kc->add_option("--max-arity", max_arity, "check up to this arity");

  auto *c_cobar = app.add_subcommand("cobar", "homology table of the dual "
                                              "dg-operad");
  add_common(c_cobar, true);
  c_cobar->add_option("--max-arity", max_arity, "table up to this arity");

  auto *c_dc = app.add_subcommand("double-cobar",
                                  "homology of the double dual dg-operad");
  add_common(c_dc, true);
  c_dc->add_option("--max-arity", max_arity, "table up to this arity");

  auto *c_series = app.add_subcommand("series", "generating series from the "
                                                "expansion");
  add_common(c_series, true);
  c_series->add_option("--order", order, "truncation order");

  auto *c_revert = app.add_subcommand("revert", "compositional inverse of a "
                                                "series");
  c_revert->add_option("--series", series_str, "e.g. \"x + x^2/2\"")
      ->required();
  c_revert->add_option("--order", order, "truncation order");
  add_common(c_revert, false);

  auto *c_hom = app.add_subcommand("homology", "operadic chain complex of an "
                                               "algebra");
  add_common(c_hom, true);
  c_hom->add_option("--algebra", algebra, "algebra file (dim + structure maps)")
      ->required();
  c_hom->add_option("--max-arity", max_arity, "top chain degree");

  auto *c_manin = app.add_subcommand("manin", "white/black product or hom of "
                                              "two presentations");
  add_common(c_manin, true);
  c_manin->add_option("--spec2", spec2, "second presentation")->required();
  c_manin->add_option("--product", product, "circ, bullet, or hom")
      ->check(CLI::IsMember({"circ", "bullet", "hom"}));
  c_manin->add_option("--save-spec", save_spec,
                      "write the resulting presentation as a spec file");

  auto *c_qa = app.add_subcommand("quad-alg", "quadratic algebra duality and "
                                              "enveloping presentation");
  add_common(c_qa, true);
  c_qa->add_option("--algebra", algebra, "algebra file (dv, super, S rows)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Json rep;
    if (app.got_subcommand(c_trees)) {
      rep["command"] = "trees";
      rep["count"] = count;
      rep["binary"] = binary;
      if (count < 1 || (count > 9 && !force))
        throw resource_error("tree enumeration bounded at 9 leaves "
                             "(use --force to override)");
      auto ts = enumerate_trees(count, binary);
      rep["trees_found"] = (int)ts.size();
      Json list = Json::array();
      for (auto &t : ts) list.push_back(t.str());
      rep["trees"] = list;
    } else if (app.got_subcommand(c_expand)) {
      auto p = load_presentation(spec);
      check_bound(p, max_arity, force);
      rep["command"] = "expand";
      rep["name"] = p.name;
      rep["max_arity"] = max_arity;
      auto op = ExpandedOperad::expand(p, max_arity);
      if (p.E.colors == 1) {
        rep["dims"] = int_list(op.dims());
      } else {
        Json per = Json::array();
        for (auto &[key, comp] : op.comps) {
          Json e;
          e["arity"] = comp.F.n;
          e["inputs"] = int_list(comp.F.leaf_colors);
          e["output"] = comp.F.out_color;
          e["dim"] = comp.dim();
          per.push_back(e);
        }
        rep["components"] = per;
      }
    } else if (app.got_subcommand(c_dual)) {
      auto p = load_presentation(spec);
      auto d = dual(p);
      rep["command"] = "dual";
      rep["name"] = p.name;
      rep["dual"] = presentation_to_json(d);
      if (!save_spec.empty()) save_presentation(save_spec, d);
    } else if (app.got_subcommand(c_ck)) {
      auto p = load_presentation(spec);
      require_single_color(p);
      check_bound(p, max_arity, force);
      auto cert = koszul_certificate(p, max_arity);
      rep["command"] = "check-koszul";
      rep["name"] = p.name;
      rep["max_arity"] = max_arity;
      rep["koszul_to_bound"] = cert.concentrated;
      rep["h0_dims"] = int_list(cert.h_top);
    } else if (app.got_subcommand(c_kc)) {
      auto p = load_presentation(spec);
      require_single_color(p);
      check_bound(p, max_arity, force);
      auto ex = is_exact(p, max_arity);
      rep["command"] = "koszul-complex";
      rep["name"] = p.name;
      rep["max_arity"] = max_arity;
      Json per = Json::array();
      for (size_t i = 0; i < ex.dims.size(); i++) {
        Json e;
        e["arity"] = (int)i + 2;
        e["dims"] = int_list(ex.dims[i]);
        e["homology"] = int_list(ex.homology[i]);
        e["exact"] = (bool)ex.exact[i];
        per.push_back(e);
      }
      rep["arities"] = per;
      rep["all_exact"] = ex.all_exact;
    } else if (app.got_subcommand(c_cobar) || app.got_subcommand(c_dc)) {
      auto p = load_presentation(spec);
      require_single_color(p);
      check_bound(p, max_arity, force);
      bool twice = app.got_subcommand(c_dc);
      rep["command"] = twice ? "double-cobar" : "cobar";
      rep["name"] = p.name;
      rep["max_arity"] = max_arity;
      HomologyReport hr;
      if (twice) {
        hr = double_cobar_report(p, max_arity);
      } else {
        auto dg = from_expanded(ExpandedOperad::expand(p, max_arity));
        hr = homology_report(cobar_dual(dg, max_arity));
      }
      rep.update(homology_json(hr));
    } else if (app.got_subcommand(c_series)) {
      auto p = load_presentation(spec);
      if (order == 0) order = arity_bound(p);
      check_bound(p, order, force);
      rep["command"] = "series";
      rep["name"] = p.name;
      rep["order"] = order;
      auto op = ExpandedOperad::expand(p, order);
      rep["exponential_coefficients"] = series_json(from_operad(op, order),
                                                    true);
    } else if (app.got_subcommand(c_revert)) {
      if (order == 0) order = 8;
      rep["command"] = "revert";
      rep["series"] = series_str;
      rep["order"] = order;
      auto g = parse_series(series_str, order);
      auto inv = revert_tree(g);
      rep["inverse_ordinary_coefficients"] = series_json(inv, false);
      rep["fixed_point_oracle_agrees"] = inv == revert_newton(g);
    } else if (app.got_subcommand(c_hom)) {
      auto p = load_presentation(spec);
      require_single_color(p);
      check_bound(p, max_arity, force);
      std::ifstream in(algebra);
      if (!in) throw std::runtime_error("cannot open algebra file: " + algebra);
      Json aj;
      in >> aj;
      auto a = palgebra_from_json(aj, p);
      auto c = chain_complex(p, a, max_arity);
      rep["command"] = "homology";
      rep["name"] = p.name;
      rep["algebra_dim"] = a.d;
      rep["max_degree"] = max_arity;
      // stored top degree first; report ascending
      std::vector<int> dims(c.cx.dims.rbegin(), c.cx.dims.rend());
      auto h = c.h();
      rep["chain_dims"] = int_list(dims);
      rep["homology"] = int_list(h);
    } else if (app.got_subcommand(c_manin)) {
      auto p = load_presentation(spec);
      auto q = load_presentation(spec2);
      rep["command"] = "manin";
      rep["product"] = product;
      rep["name"] = p.name + " " + product + " " + q.name;
      QuadraticPresentation r = product == "circ"  ? circ(p, q)
                                : product == "bullet" ? bullet(p, q)
                                                      : hom_operad(p, q);
      rep["generator_dim"] = r.E.dim2();
      auto it = r.R.find({0, 0, 0, 0});
      rep["relation_dim"] = it == r.R.end() ? 0 : it->second.dim();
      if (product == "circ") {
        auto d = circ_directness(p, q);
        Json dj;
        dj["dim_left"] = d.dim1;
        dj["dim_right"] = d.dim2;
        dj["dim_sum"] = d.dimsum;
        dj["direct"] = d.direct;
        rep["defining_sum"] = dj;
      }
      if (!save_spec.empty()) save_presentation(save_spec, r);
    } else if (app.got_subcommand(c_qa)) {
      auto p = load_presentation(spec);
      require_single_color(p);
      std::ifstream in(algebra);
      if (!in) throw std::runtime_error("cannot open algebra file: " + algebra);
      Json aj;
      in >> aj;
      auto a = algebra_from_json(aj, p);
      auto d = dual_algebra(a);
      auto u = enveloping_presentation(a);
      rep["command"] = "quad-alg";
      rep["host"] = p.name;
      rep["dv"] = a.dv;
      rep["super"] = a.super;
      rep["coinvariant_dim"] = a.coin.dim;
      rep["s_dim"] = a.S.dim();
      rep["dual_s_dim"] = d.S.dim();
      Json uj;
      uj["generators"] = u.dw;
      uj["relation_dim"] = u.rel.dim();
      rep["enveloping"] = uj;
      rep["duality_check"] = check_enveloping_duality(a);
    }
    emit(rep, out, format);
  } catch (const resource_error &e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
