#pragma once

#include <string>
#include <vector>

namespace mcpde {

// Uniform tensor grid of real64 values over [x0,x1] x [y0,y1], nodes included.
struct Grid2D {
  int nx = 0, ny = 0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  std::vector<double> values;  // row-major over y, x fastest

  static Grid2D make(int nx, int ny, double x0, double x1, double y0, double y1) {
    Grid2D g{nx, ny, x0, x1, y0, y1, {}};
    g.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    return g;
  }

  double x(int i) const { return x0 + (x1 - x0) * i / (nx - 1); }
  double y(int j) const { return y0 + (y1 - y0) * j / (ny - 1); }
  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }

  // Bilinear interpolation at an interior point of the grid rectangle.
  double interpolate(double px, double py) const;
};

// CSV with an "x,y,value" header, one node per line, row-major; lines starting
// with '#' carry run provenance and are skipped on load.
void save_grid_csv(const Grid2D& g, const std::string& path,
                   const std::string& header_comment = "");
Grid2D load_grid_csv(const std::string& path);

}  // namespace mcpde
