#include "balor/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace balor {

EigenResult jacobi_eigen(Matrix a, double tol, int max_sweeps) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw Error(Errc::InvalidInput, "matrix not square");
  Matrix v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  auto off = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s = std::max(s, std::fabs(a[i][j]));
    return s;
  };

  int sweep = 0;
  while (off() > tol) {
    if (++sweep > max_sweeps)
      throw Error(Errc::EigenFailure, "jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) <= tol * 0.01) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
  EigenResult res;
  res.values.resize(n);
  res.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    res.values[k] = a[order[k]][order[k]];
    for (int i = 0; i < n; ++i) res.vectors[k][i] = v[i][order[k]];
  }
  return res;
}

}  // namespace balor
