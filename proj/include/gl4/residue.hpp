// Linear algebra over the residue field k' = R / p: element and subspace
// enumeration with digit-lifted representatives (all coordinates < p).

#pragma once

#include <vector>

#include "gl4/mat.hpp"

namespace gl4 {

/// All residue-field elements as digit lifts.
std::vector<RElem> residue_elems(const RingContext& R);

/// All d-dimensional subspaces of k'^n as reduced row-echelon matrices.
std::vector<Mat> residue_subspaces_dim(const RingContext& R, int n, int d);

/// All subspaces of k'^n, dimension 0..n (the zero subspace is a 0 x n Mat).
std::vector<Mat> residue_subspaces(const RingContext& R, int n);

/// Canonical nonzero representatives of the lines of k'^n (1 x n rows,
/// first nonzero coordinate equal to 1).
std::vector<Mat> residue_lines(const RingContext& R, int n);

/// Is v (1 x n) in the row span of the reduced-echelon matrix S over k'?
bool residue_in_span(const RingContext& R, const Mat& S, const Mat& v);

/// Is every row of B in the row span of the reduced-echelon matrix S?
bool residue_span_contains(const RingContext& R, const Mat& S, const Mat& B);

}  // namespace gl4
