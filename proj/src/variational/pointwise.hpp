#pragma once

// Internal: sparse per-point tables shared by the OpenMP kernels.

#include <vector>

#include "gcy/variational.hpp"

namespace gcy::detail {

struct SparseEntry {
  int row, col;
  double val;
};

struct PointTables {
  int nchan = 32;
  std::vector<std::vector<SparseEntry>> sigma;  // sigma_i on the channels
  std::vector<std::vector<SparseEntry>> quad;   // m_i = sum val * x_row * x_col
  std::vector<std::vector<SparseEntry>> ginv;   // rows of the inverse trace form
  std::vector<int> dual_index;
  std::vector<double> dual_sign;
};

const PointTables& point_tables(Parity p);

std::string describe_point(const TorusGrid& g, std::size_t p);

}  // namespace gcy::detail

namespace gcy::detail {

HatField hat_field_serial(const GridForm& rho);
GridForm apply_j_serial(const GridForm& rho, const GridForm& w);

}  // namespace gcy::detail
