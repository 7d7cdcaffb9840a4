#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mdh/coeffring.hpp"

namespace mdh {

/// Exact row-by-row Gaussian elimination over Q(i) with several right-hand sides.
/// Rows are reduced against the current pivots as they arrive, so tall systems
/// (many lattice points, few unknowns) stay cheap.
class IncrementalSolver {
 public:
  IncrementalSolver(std::size_t ncols, std::size_t nrhs);

  /// Adds the equation a·x = b. Returns false if it contradicts earlier rows.
  bool add_row(std::vector<GaussianRational> a, std::vector<GaussianRational> b);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t ncols() const { return ncols_; }
  bool consistent() const { return consistent_; }
  bool determined() const { return rank() == ncols_; }

  /// Solution per right-hand side (solution[k][j] = x_j for rhs k). Free
  /// variables are set to zero when the system is underdetermined.
  std::vector<std::vector<GaussianRational>> solution() const;
  /// Indices of columns without a pivot.
  std::vector<std::size_t> free_columns() const;

 private:
  struct Row {
    std::size_t pivot;
    std::vector<GaussianRational> a;
    std::vector<GaussianRational> b;
  };
  std::size_t ncols_;
  std::size_t nrhs_;
  bool consistent_ = true;
  std::vector<Row> pivots_;
};

}  // namespace mdh
