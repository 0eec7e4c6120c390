#include "coxlim/plot.hpp"

#include "coxlim/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace coxlim {

Projection parse_projection(const std::string& s) {
  if (s == "auto") return Projection::automatic;
  if (s == "coords2") return Projection::coords2;
  if (s == "barycentric3") return Projection::barycentric3;
  if (s == "pca2") return Projection::pca2;
  throw InputError("unknown projection '" + s + "'");
}

std::string to_string(Projection p) {
  switch (p) {
    case Projection::automatic: return "auto";
    case Projection::coords2: return "coords2";
    case Projection::barycentric3: return "barycentric3";
    case Projection::pca2: return "pca2";
  }
  return "?";
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string depth_color(int depth, int max_depth) {
  const double t = max_depth > 0 ? std::clamp(double(depth) / max_depth, 0.0, 1.0) : 0.0;
  const int r = static_cast<int>(std::lround(40 + 215 * t));
  const int g = 60;
  const int b = static_cast<int>(std::lround(255 - 215 * t));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

Mat pca_matrix(const std::vector<Vec>& pts, int n) {
  Mat p = Mat::Zero(2, n);
  if (pts.size() < 2) {
    p(0, 0) = 1.0;
    if (n > 1) p(1, 1) = 1.0;
    return p;
  }
  Vec mean = Vec::Zero(n);
  for (const Vec& v : pts) mean += v;
  mean /= double(pts.size());
  Mat cov = Mat::Zero(n, n);
  for (const Vec& v : pts) cov += (v - mean) * (v - mean).transpose();
  const Eigen::SelfAdjointEigenSolver<Mat> es(cov);
  for (int k = 0; k < 2; ++k) {
    Vec e = es.eigenvectors().col(n - 1 - k);
    Eigen::Index arg = 0;
    e.cwiseAbs().maxCoeff(&arg);
    if (e[arg] < 0) e = -e;  // fix the sign for reproducible output
    p.row(k) = e.transpose();
  }
  return p;
}

struct Viewport {
  double xmin, ymin, scale, ox, oy;
  int height;
  Eigen::Vector2d map(const Eigen::Vector2d& p) const {
    return {ox + (p.x() - xmin) * scale, height - (oy + (p.y() - ymin) * scale)};
  }
};

Viewport fit(double xmin, double xmax, double ymin, double ymax, int w, int h) {
  const double margin = 40.0;
  const double dx = std::max(xmax - xmin, 1e-9), dy = std::max(ymax - ymin, 1e-9);
  const double scale = std::min((w - 2 * margin) / dx, (h - 2 * margin) / dy);
  const double ox = (w - dx * scale) / 2.0;
  const double oy = (h - dy * scale) / 2.0;
  return {xmin, ymin, scale, ox, oy, h};
}

// Sampled branches of {x in V1 : (x,x) = 0} in the rank-3 simplex plane.
std::vector<std::vector<Vec>> isotropic_trace(const CoxeterDatum& d) {
  const Vec g = Vec::Constant(3, 1.0 / 3.0);
  Vec u1(3), u2(3);
  u1 << 1, -1, 0;
  u2 << 1, 1, -2;
  u1 /= std::sqrt(2.0);
  u2 /= std::sqrt(6.0);
  const double C = bilinear(d, g, g);
  const int samples = 720;
  std::vector<std::vector<Vec>> out;
  for (int branch = 0; branch < 2; ++branch) {
    if (branch == 1 && C < 0) break;  // closed curve around the centroid
    std::vector<Vec> cur;
    for (int s = 0; s <= samples; ++s) {
      const double phi = 2.0 * std::numbers::pi * s / samples;
      const Vec u = std::cos(phi) * u1 + std::sin(phi) * u2;
      const double A = bilinear(d, u, u), B = bilinear(d, g, u);
      bool ok = false;
      Vec x;
      const double disc = B * B - A * C;
      if (std::abs(A) > 1e-12 && disc >= 0) {
        const double t = (-B + (branch == 0 ? 1 : -1) * std::sqrt(disc)) / A;
        x = g + t * u;
        ok = t >= -1e-12 && x.minCoeff() >= -0.25 && x.maxCoeff() <= 1.25;
      }
      if (ok) {
        cur.push_back(x);
      } else if (!cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
  }
  return out;
}

}  // namespace

SvgPlot emit_svg(const PlotSpec& spec, const RootSlice& slice, const std::vector<Cluster>& clusters) {
  const CoxeterDatum& d = slice.datum();
  const int n = d.rank();
  SvgPlot out;
  Projection proj = spec.projection;
  if (proj == Projection::automatic)
    proj = n == 2 ? Projection::coords2 : n == 3 ? Projection::barycentric3 : Projection::pca2;
  if ((proj == Projection::coords2 && n != 2) || (proj == Projection::barycentric3 && n != 3) ||
      (proj == Projection::pca2 && n < 2))
    throw InputError("projection " + to_string(proj) + " does not fit rank " + std::to_string(n));
  out.projection = proj;

  std::vector<Vec> pts;
  std::vector<int> depths;
  for (const Root& r : slice.roots()) {
    pts.push_back(r.coords / r.coords.sum());
    depths.push_back(r.depth);
  }

  Mat P(2, n);
  double xmin, xmax, ymin, ymax;
  if (proj == Projection::coords2) {
    P << 0, 1, 0, 0;
    xmin = 0, xmax = 1, ymin = -0.1, ymax = 0.1;
  } else if (proj == Projection::barycentric3) {
    P << 0, 1, 0.5, 0, 0, std::sqrt(3.0) / 2.0;
    xmin = 0, xmax = 1, ymin = 0, ymax = std::sqrt(3.0) / 2.0;
  } else {
    P = pca_matrix(pts, n);
    xmin = ymin = 1e300;
    xmax = ymax = -1e300;
    auto grow = [&](const Vec& v) {
      const Eigen::Vector2d q = P * v;
      xmin = std::min(xmin, q.x()), xmax = std::max(xmax, q.x());
      ymin = std::min(ymin, q.y()), ymax = std::max(ymax, q.y());
    };
    for (const Vec& v : pts) grow(v);
    for (const Cluster& c : clusters) grow(c.center);
    if (xmin > xmax) xmin = ymin = -1, xmax = ymax = 1;
  }
  out.projection_matrix = P;
  const Viewport vp = fit(xmin, xmax, ymin, ymax, spec.width, spec.height);
  auto at = [&](const Vec& v) { return vp.map(P * v); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
    << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height
    << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
    << "\" fill=\"white\"/>\n";

  s << "<g id=\"axes\" stroke=\"#888888\" stroke-width=\"1\" fill=\"none\">\n";
  if (proj == Projection::coords2) {
    const auto a = at(d.simple_root(0)), b = at(d.simple_root(1));
    s << "<line x1=\"" << num(a.x()) << "\" y1=\"" << num(a.y()) << "\" x2=\"" << num(b.x())
      << "\" y2=\"" << num(b.y()) << "\"/>\n";
  } else if (proj == Projection::barycentric3) {
    s << "<polygon points=\"";
    for (int i = 0; i < 3; ++i) {
      const auto v = at(d.simple_root(i));
      s << (i ? " " : "") << num(v.x()) << ',' << num(v.y());
    }
    s << "\"/>\n";
  } else {
    const auto o = vp.map({0.0, 0.0});
    s << "<line x1=\"0\" y1=\"" << num(o.y()) << "\" x2=\"" << spec.width << "\" y2=\"" << num(o.y())
      << "\"/>\n";
    s << "<line x1=\"" << num(o.x()) << "\" y1=\"0\" x2=\"" << num(o.x()) << "\" y2=\""
      << spec.height << "\"/>\n";
  }
  s << "</g>\n";

  if (spec.show_isotropic && proj == Projection::barycentric3) {
    s << "<g id=\"isotropic\" stroke=\"#2a9d5c\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (const auto& branch : isotropic_trace(d)) {
      if (branch.size() == 1 || (branch.front() - branch.back()).norm() < 1e-9) {
        const auto p = at(branch.front());
        bool single = true;
        for (const Vec& v : branch) single = single && (v - branch.front()).norm() < 1e-9;
        if (single) {
          s << "<circle cx=\"" << num(p.x()) << "\" cy=\"" << num(p.y()) << "\" r=\"3\"/>\n";
          continue;
        }
      }
      s << "<polyline points=\"";
      for (std::size_t k = 0; k < branch.size(); ++k) {
        const auto p = at(branch[k]);
        s << (k ? " " : "") << num(p.x()) << ',' << num(p.y());
      }
      s << "\"/>\n";
    }
    s << "</g>\n";
  }

  if (spec.show_roots) {
    s << "<g id=\"roots\" stroke=\"none\">\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto p = at(pts[k]);
      s << "<circle cx=\"" << num(p.x()) << "\" cy=\"" << num(p.y()) << "\" r=\"2.5\" fill=\""
        << depth_color(depths[k], slice.max_depth()) << "\"/>\n";
    }
    s << "</g>\n";
  }

  if (spec.show_clusters) {
    s << "<g id=\"clusters\" stroke=\"#000000\" stroke-width=\"2\">\n";
    for (const Cluster& c : clusters) {
      const auto p = at(c.center);
      const double h = 7.0;
      s << "<line x1=\"" << num(p.x() - h) << "\" y1=\"" << num(p.y() - h) << "\" x2=\""
        << num(p.x() + h) << "\" y2=\"" << num(p.y() + h) << "\"/>\n";
      s << "<line x1=\"" << num(p.x() - h) << "\" y1=\"" << num(p.y() + h) << "\" x2=\""
        << num(p.x() + h) << "\" y2=\"" << num(p.y() - h) << "\"/>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  out.svg = s.str();
  return out;
}

}  // namespace coxlim
