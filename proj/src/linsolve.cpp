#include "mdh/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdh {

IncrementalSolver::IncrementalSolver(std::size_t ncols, std::size_t nrhs) : ncols_(ncols), nrhs_(nrhs) {}

bool IncrementalSolver::add_row(std::vector<GaussianRational> a, std::vector<GaussianRational> b) {
  if (a.size() != ncols_ || b.size() != nrhs_) throw std::invalid_argument("row shape mismatch");
  for (const auto& row : pivots_) {
    if (a[row.pivot].is_zero()) continue;
    GaussianRational f = a[row.pivot];
    for (std::size_t j = row.pivot; j < ncols_; ++j)
      if (!row.a[j].is_zero()) a[j] -= f * row.a[j];
    for (std::size_t k = 0; k < nrhs_; ++k)
      if (!row.b[k].is_zero()) b[k] -= f * row.b[k];
  }
  auto lead = std::find_if(a.begin(), a.end(), [](const GaussianRational& v) { return !v.is_zero(); });
  if (lead == a.end()) {
    bool ok = std::all_of(b.begin(), b.end(), [](const GaussianRational& v) { return v.is_zero(); });
    if (!ok) consistent_ = false;
    return ok;
  }
  std::size_t p = static_cast<std::size_t>(lead - a.begin());
  GaussianRational inv = a[p].inv();
  for (std::size_t j = p; j < ncols_; ++j) a[j] *= inv;
  for (auto& v : b) v *= inv;
  // Keep earlier pivot rows reduced in the new pivot column.
  for (auto& row : pivots_) {
    if (row.a[p].is_zero()) continue;
    GaussianRational f = row.a[p];
    for (std::size_t j = p; j < ncols_; ++j)
      if (!a[j].is_zero()) row.a[j] -= f * a[j];
    for (std::size_t k = 0; k < nrhs_; ++k)
      if (!b[k].is_zero()) row.b[k] -= f * b[k];
  }
  pivots_.push_back(Row{p, std::move(a), std::move(b)});
  return true;
}

std::vector<std::vector<GaussianRational>> IncrementalSolver::solution() const {
  std::vector<std::vector<GaussianRational>> x(nrhs_, std::vector<GaussianRational>(ncols_));
  // Rows are fully reduced, so with free variables at zero each pivot reads off directly.
  for (const auto& row : pivots_)
    for (std::size_t k = 0; k < nrhs_; ++k) x[k][row.pivot] = row.b[k];
  return x;
}

std::vector<std::size_t> IncrementalSolver::free_columns() const {
  std::vector<bool> used(ncols_, false);
  for (const auto& row : pivots_) used[row.pivot] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < ncols_; ++j)
    if (!used[j]) out.push_back(j);
  return out;
}

}  // namespace mdh
