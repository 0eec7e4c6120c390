#include "coxlim/cli.hpp"

#include "coxlim/checks.hpp"
#include "coxlim/dominance.hpp"
#include "coxlim/error.hpp"
#include "coxlim/limits.hpp"
#include "coxlim/plot.hpp"
#include "coxlim/report.hpp"
#include "coxlim/subgroups.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace coxlim {

namespace {

struct Common {
  std::string file;
  double tol = kDefaultTolerance;
  int depth = 0;
  bool json = false;
};

void add_common(CLI::App* sub, Common& c, int default_depth) {
  c.depth = default_depth;
  sub->add_option("-f,--file", c.file, "Coxeter datum file")->required();
  sub->add_option("--tol", c.tol, "numerical tolerance")->capture_default_str();
  sub->add_option("--depth", c.depth, "root slice depth")->capture_default_str();
}

Vec parse_csv(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      vals.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      throw InputError("bad number '" + tok + "' in point");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size()) throw InputError("bad number '" + tok + "' in point");
  }
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string dihedral_type(double value, double tol) {
  if (value <= -1.0 - tol) return "infinite non-affine";
  if (value < -1.0 + tol) return "infinite affine";
  if (value > tol) return "not canonical";
  const double m = std::numbers::pi / std::acos(std::clamp(-value, 0.0, 1.0));
  std::ostringstream os;
  os << "finite m=" << std::lround(m);
  return os.str();
}

void print_limit_point(std::ostream& out, const CoxeterDatum& d, const LimitPoint& p) {
  out << "coords\t" << format_vector(p.coords) << '\n';
  out << "classification\t" << to_string(p.kind) << '\n';
  if (p.kind == LimitKind::affine) out << "host\t" << subset_label(d, p.host) << '\n';
  if (p.kind == LimitKind::afftype_sum) {
    out << "components\t";
    for (std::size_t k = 0; k < p.components.size(); ++k)
      out << (k ? " " : "") << subset_label(d, p.components[k]);
    out << "\nweights\t";
    for (std::size_t k = 0; k < p.weights.size(); ++k)
      out << (k ? "," : "") << std::fixed << std::setprecision(6) << p.weights[k];
    out << '\n';
  }
  if (p.kind == LimitKind::affine || p.kind == LimitKind::afftype_sum)
    out << "reducer\t" << format_word(p.reducer) << '\n';
  if (p.pos)
    out << "pos_count\t" << p.pos->count << "\nstabilized\t" << (p.pos->stabilized ? "yes" : "no")
        << '\n';
  if (!p.note.empty()) out << "note\t" << p.note << '\n';
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coxeter groups: roots, reflection subgroups and limit roots", "coxeter-limits"};
  app.require_subcommand(1);

  Common roots_c, dom_c, sub_c, par_c, lim_c, cls_c, plot_c, chk_c;

  auto* roots = app.add_subcommand("roots", "list positive roots up to a depth");
  add_common(roots, roots_c, 3);
  std::size_t max_roots = std::size_t{1} << 21;
  roots->add_option("--max-roots", max_roots, "cap on the number of roots")->capture_default_str();
  roots->add_flag("--json", roots_c.json, "JSON output");

  auto* dom = app.add_subcommand("dominance", "partition a root slice into D_n");
  add_common(dom, dom_c, 4);
  int search_len = kDefaultSearchLen;
  dom->add_option("--search-len", search_len, "orbit search word length")->capture_default_str();

  auto* sub = app.add_subcommand("subgroup", "canonical generators of a reflection subgroup");
  add_common(sub, sub_c, 4);
  std::vector<std::size_t> root_ids;
  sub->add_option("--roots", root_ids, "slice indices of the generating roots")
      ->required()
      ->delimiter(',');
  int budget = kDefaultClosureBudget;
  sub->add_option("--budget", budget, "closure rounds per dihedral pair")->capture_default_str();

  auto* par = app.add_subcommand("parabolics", "affine standard parabolic subgroups");
  add_common(par, par_c, 0);

  auto* lim = app.add_subcommand("limits", "approximate limit roots by clustering");
  add_common(lim, lim_c, 12);
  int min_depth = -1;
  double eps = 1e-2;
  bool classify_centers = false;
  lim->add_option("--min-depth", min_depth, "smallest root depth used (default depth/2)");
  lim->add_option("--eps", eps, "cluster radius")->capture_default_str();
  lim->add_flag("--classify", classify_centers, "classify every cluster center");
  lim->add_flag("--json", lim_c.json, "JSON output");

  auto* cls = app.add_subcommand("classify", "classify an isotropic point of V1");
  add_common(cls, cls_c, 10);
  std::string point;
  int max_iter = kDefaultReduceIter;
  cls->add_option("--point", point, "comma separated coordinates")->required();
  cls->add_option("--max-iter", max_iter, "reduction step budget")->capture_default_str();
  cls->add_flag("--json", cls_c.json, "JSON output");

  auto* plot = app.add_subcommand("plot", "SVG of normalized roots and clusters");
  add_common(plot, plot_c, 10);
  std::string output, projection = "auto";
  int plot_min_depth = -1, width = 800, height = 800;
  double plot_eps = 1e-2;
  plot->add_option("-o,--output", output, "SVG file (default: standard output)");
  plot->add_option("--projection", projection, "auto, coords2, barycentric3 or pca2")
      ->capture_default_str();
  plot->add_option("--min-depth", plot_min_depth, "smallest depth used for clusters");
  plot->add_option("--eps", plot_eps, "cluster radius")->capture_default_str();
  plot->add_option("--width", width)->capture_default_str();
  plot->add_option("--height", height)->capture_default_str();

  auto* chk = app.add_subcommand("check", "run the invariant suite on a datum");
  add_common(chk, chk_c, 5);
  CheckOptions copt;
  chk->add_option("--search-len", copt.search_len)->capture_default_str();
  chk->add_option("--samples", copt.samples)->capture_default_str();
  chk->add_option("--seed", copt.seed)->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto load = [](const Common& c) { return load_datum(c.file, c.tol); };

  if (*roots) {
    const CoxeterDatum d = load(roots_c);
    RootOptions opt;
    opt.max_roots = max_roots;
    const RootSlice s = generate_roots(d, roots_c.depth, opt);
    if (roots_c.json) {
      Json j = Json::array();
      for (const Root& r : s.roots()) j.push_back(root_to_json(r));
      out << j.dump(2) << '\n';
    } else {
      for (const Root& r : s.roots()) write_root_line(out, r);
    }
    return kExitOk;
  }

  if (*dom) {
    const CoxeterDatum d = load(dom_c);
    const RootSlice s = generate_roots(d, dom_c.depth);
    const DnPartition part = partition_Dn(d, s, search_len);
    out << "# D_n partition of the depth-" << dom_c.depth << " slice (" << s.size()
        << " roots), search length " << search_len << "; counts are lower bounds\n";
    out << "n\tsize\troots\n";
    for (const auto& [k, members] : part.classes) {
      out << k << '\t' << members.size() << '\t';
      for (std::size_t i = 0; i < members.size(); ++i) out << (i ? " " : "") << members[i];
      out << '\n';
    }
    out << "stabilized\t" << (part.stabilized ? "yes" : "no") << '\n';
    out << "uncertified\t" << part.uncertified.size() << '\n';
    for (const auto& [i, j] : part.uncertified) out << i << '\t' << j << '\n';
    return kExitOk;
  }

  if (*sub) {
    const CoxeterDatum d = load(sub_c);
    const RootSlice s = generate_roots(d, sub_c.depth);
    std::vector<Vec> gens;
    for (std::size_t id : root_ids) {
      if (id >= s.size())
        throw InputError("root index " + std::to_string(id) + " is outside the slice of " +
                         std::to_string(s.size()) + " roots");
      gens.push_back(s[id].coords);
    }
    const CanonicalSet c = canonicalize(d, gens, budget);
    out << "# canonical generators\n";
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto hit = s.find(c.roots[k]);
      out << k << '\t' << format_vector(c.roots[k]) << '\t'
          << (hit ? "slice " + std::to_string(*hit) : std::string("beyond slice")) << '\n';
    }
    out << "# pairwise values\n";
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const double v = c.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        out << i << '\t' << j << '\t' << std::fixed << std::setprecision(6) << v << '\t'
            << dihedral_type(v, d.tolerance());
        if (std::abs(v + 1.0) <= d.tolerance()) {
          const HostParabolic h = host_parabolic(d, make_canonical_set(d, {c.roots[i], c.roots[j]}));
          out << "\thost " << subset_label(d, h.host) << " via [" << format_word(h.conjugator) << "]";
        }
        out << '\n';
      }
    return kExitOk;
  }

  if (*par) {
    const CoxeterDatum d = load(par_c);
    const auto list = affine_standard_parabolics(d);
    out << "# affine standard parabolic subsets: " << list.size() << '\n';
    for (const SimpleSubset& m : list)
      out << subset_label(d, m) << '\t' << format_vector(affine_kernel(d, m)) << '\n';
    return kExitOk;
  }

  if (*lim) {
    const CoxeterDatum d = load(lim_c);
    const RootSlice s = generate_roots(d, lim_c.depth);
    const auto clusters = approx_limit_roots(s, min_depth, eps);
    std::vector<LimitPoint> classes;
    if (classify_centers) {
      const RootSlice small = s.truncated(std::min(lim_c.depth, 10));
      for (const Cluster& c : clusters) classes.push_back(classify_limit_root(d, c.center, small, kDefaultReduceIter, kIsoTolerance));
    }
    if (lim_c.json) {
      Json j = Json::array();
      for (std::size_t k = 0; k < clusters.size(); ++k) {
        Json e = cluster_to_json(clusters[k]);
        if (classify_centers) e["limit"] = limit_point_to_json(classes[k]);
        j.push_back(e);
      }
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    out << "# " << clusters.size() << " clusters, depth " << lim_c.depth << ", eps " << eps << '\n';
    out << "center\tmembers\tradius\tisotropy_defect";
    if (classify_centers) out << "\tclassification";
    out << '\n';
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      const Cluster& c = clusters[k];
      out << format_vector(c.center) << '\t' << c.members.size() << '\t' << std::scientific
          << std::setprecision(3) << c.radius << '\t' << c.isotropy_defect << std::defaultfloat;
      if (classify_centers) {
        out << '\t' << to_string(classes[k].kind);
        if (classes[k].kind == LimitKind::affine) out << ' ' << subset_label(d, classes[k].host);
      }
      out << '\n';
    }
    return kExitOk;
  }

  if (*cls) {
    const CoxeterDatum d = load(cls_c);
    const Vec p = parse_csv(point);
    if (p.size() != d.rank())
      throw InputError("point has " + std::to_string(p.size()) + " coordinates, rank is " +
                       std::to_string(d.rank()));
    const RootSlice s = generate_roots(d, cls_c.depth);
    const LimitPoint lp = classify_limit_root(d, p, s, max_iter);
    if (cls_c.json)
      out << limit_point_to_json(lp).dump(2) << '\n';
    else
      print_limit_point(out, d, lp);
    return kExitOk;
  }

  if (*plot) {
    const CoxeterDatum d = load(plot_c);
    const RootSlice s = generate_roots(d, plot_c.depth);
    std::vector<Cluster> clusters;
    if (plot_c.depth >= 1) clusters = approx_limit_roots(s, plot_min_depth, plot_eps);
    PlotSpec spec;
    spec.projection = parse_projection(projection);
    spec.width = width;
    spec.height = height;
    const SvgPlot svg = emit_svg(spec, s, clusters);
    std::ostringstream matrix;
    for (Eigen::Index r = 0; r < svg.projection_matrix.rows(); ++r)
      matrix << format_vector(svg.projection_matrix.row(r).transpose()) << '\n';
    if (output.empty()) {
      out << svg.svg;
    } else {
      std::ofstream f(output);
      if (!f) throw InputError("cannot write '" + output + "'");
      f << svg.svg;
      out << "wrote " << output << " (" << to_string(svg.projection) << ", " << s.size()
          << " roots, " << clusters.size() << " clusters)\n";
      out << "projection matrix\n" << matrix.str();
    }
    return kExitOk;
  }

  if (*chk) {
    const CoxeterDatum d = load(chk_c);
    copt.depth = chk_c.depth;
    bool all = true;
    for (const CheckResult& r : run_checks(d, copt)) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name;
      if (!r.pass) out << ": " << r.detail;
      out << '\n';
      all = all && r.pass;
    }
    return all ? kExitOk : kExitCompute;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kExitCompute;
  } catch (const DegenerateSpectrum& e) {
    err << "degenerate spectrum: " << e.what() << '\n';
    return kExitCompute;
  } catch (const DomainError& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace coxlim
