#pragma once

#include <string>
#include <string_view>

#include "sdq/matrix.hpp"
#include "sdq/rng.hpp"

namespace sdq {

enum class EnsembleKind { Gaussian, Rademacher, ColumnModel };

// Random measurement law. All kinds give mean-zero, unit-variance entries;
// ColumnModel columns are Σ^{1/2}·g with g i.i.d. Rademacher and Σ the
// unit-diagonal tridiagonal correlation with off-diagonal `column_correlation`
// (entries within a column are dependent, columns independent).
struct Ensemble {
  EnsembleKind kind = EnsembleKind::Gaussian;
  double column_correlation = 0.3;
};

Ensemble parse_ensemble(std::string_view name);
std::string to_string(EnsembleKind kind);

// m × n matrix with unnormalized unit-variance entries.
Matrix sample_matrix(const Ensemble& ensemble, Index m, Index n,
                     RngStream& rng);

// Symmetric square root of the ColumnModel correlation, from the closed-form
// eigenpairs of a tridiagonal Toeplitz matrix.
Matrix column_model_sqrt(Index m, double correlation);

struct SparseSignal {
  Index n = 0;
  IndexSet support;  // ascending
  Vector values;     // aligned with support
  double amplitude_floor = 0.0;

  Index sparsity() const { return support.size(); }
  Vector dense() const;
};

// Uniform random support of size s, magnitudes uniform on [floor, cap],
// independent random signs.
SparseSignal sample_sparse_signal(Index n, Index s, double floor,
                                  double magnitude_cap, RngStream& rng);

// K·2^{r-1/2}·Δ: the smallest nonzero magnitude admitted for order-r
// quantized recovery.
double amplitude_floor(double k, int r, double delta);

}  // namespace sdq
