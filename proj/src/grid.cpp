#include "mcpde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mcpde {

double Grid2D::interpolate(double px, double py) const {
  const double fx = (px - x0) / (x1 - x0) * (nx - 1);
  const double fy = (py - y0) / (y1 - y0) * (ny - 1);
  const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, nx - 2);
  const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, ny - 2);
  const double ax = std::clamp(fx - i, 0.0, 1.0);
  const double ay = std::clamp(fy - j, 0.0, 1.0);
  return (1 - ax) * (1 - ay) * at(i, j) + ax * (1 - ay) * at(i + 1, j) +
         (1 - ax) * ay * at(i, j + 1) + ax * ay * at(i + 1, j + 1);
}

void save_grid_csv(const Grid2D& g, const std::string& path, const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << "x,y,value\n";
  out.precision(17);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << g.x(i) << ',' << g.y(j) << ',' << g.at(i, j) << '\n';
}

Grid2D load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::set<double> xs, ys;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::istringstream ss(line);
    std::array<double, 3> row{};
    char comma;
    if (!(ss >> row[0] >> comma >> row[1] >> comma >> row[2]))
      throw std::runtime_error("bad csv line in " + path + ": " + line);
    xs.insert(row[0]);
    ys.insert(row[1]);
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error("empty grid csv: " + path);
  Grid2D g = Grid2D::make(static_cast<int>(xs.size()), static_cast<int>(ys.size()), *xs.begin(),
                          *xs.rbegin(), *ys.begin(), *ys.rbegin());
  if (rows.size() != g.values.size()) throw std::runtime_error("csv is not a tensor grid: " + path);
  std::map<double, int> xi, yj;
  int k = 0;
  for (double v : xs) xi[v] = k++;
  k = 0;
  for (double v : ys) yj[v] = k++;
  for (const auto& row : rows) g.at(xi[row[0]], yj[row[1]]) = row[2];
  return g;
}

}  // namespace mcpde
