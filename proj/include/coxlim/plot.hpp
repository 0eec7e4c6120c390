#pragma once

#include "coxlim/limits.hpp"

#include <string>
#include <vector>

namespace coxlim {

enum class Projection { automatic, coords2, barycentric3, pca2 };

Projection parse_projection(const std::string& s);
std::string to_string(Projection p);

struct PlotSpec {
  Projection projection = Projection::automatic;
  int width = 800;
  int height = 800;
  bool show_roots = true;
  bool show_clusters = true;
  bool show_isotropic = true;
};

struct SvgPlot {
  std::string svg;
  Projection projection = Projection::coords2;
  /// 2 x rank map from V1 to the drawing plane (before the viewport fit).
  Mat projection_matrix;
};

/// Normalized roots as circles colored by depth, clusters as crosses and,
/// for rank 3, the trace of the isotropic cone. Byte-identical for equal
/// inputs.
SvgPlot emit_svg(const PlotSpec& spec, const RootSlice& slice, const std::vector<Cluster>& clusters);

}  // namespace coxlim
