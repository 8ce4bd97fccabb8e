// Dense matrices over GR(p^N, m) and their p-adic elimination routines:
// Howell-form canonicalization (rows as generators), kernel computation via
// tracked row transforms, and exact scaled arithmetic for matrices with
// p-power denominators (Gauss-Jordan inverse with minimum-valuation pivoting).

#pragma once

#include <optional>
#include <vector>

#include "gl4/ring.hpp"

namespace gl4 {

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<RElem> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    RElem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const RElem& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }

    bool operator==(const Mat&) const = default;
};

Mat mat_identity(const RingContext& R, int n);
Mat mat_mul(const RingContext& R, const Mat& A, const Mat& B);
Mat mat_add(const RingContext& R, const Mat& A, const Mat& B);
Mat mat_sub(const RingContext& R, const Mat& A, const Mat& B);
Mat mat_neg(const RingContext& R, const Mat& A);
Mat mat_scale(const RingContext& R, const Mat& A, const RElem& c);
Mat mat_transpose(const Mat& A);
Mat mat_frobenius(const RingContext& R, const Mat& A);
Mat mat_frobenius_inv(const RingContext& R, const Mat& A);
Mat mat_stack(const Mat& top, const Mat& bottom);
Mat mat_mul_pow_p(const RingContext& R, const Mat& A, int k);
bool mat_is_zero(const RingContext& R, const Mat& A);

/// Result of row-Howell reduction.  h has the pivot of row i in column
/// pivot_col[i] with value p^{pivot_val[i]} (unit-normalized), entries above
/// each pivot reduced modulo the pivot power.  rank = number of nonzero rows.
struct HowellResult {
    Mat h;
    std::vector<int> pivot_col;
    std::vector<int> pivot_val;
    int rank = 0;
};

/// Canonical row-echelon (Howell) form over the chain ring GR(p^N, m); rows
/// are generators, row operations only.  If transform is non-null it receives
/// a square invertible U with U * input = h (before zero-row pruning h keeps
/// the original row count; zero rows are moved to the bottom).
HowellResult howell(const RingContext& R, Mat M, Mat* transform = nullptr);

/// Valuation of det of a square matrix (sum of Howell pivot valuations);
/// returns nullopt when rank-deficient at working precision.
std::optional<int> det_valuation(const RingContext& R, const Mat& M);

// --- scaled elements and matrices: value = p^e * u with u a unit or zero ---

struct SElem {
    RElem u{};
    int e = 0;
    bool zero = true;
};

SElem s_make(const RingContext& R, const RElem& u, int e);
SElem s_from_int(const RingContext& R, long long v, int e = 0);
SElem s_add(const RingContext& R, const SElem& a, const SElem& b);
SElem s_sub(const RingContext& R, const SElem& a, const SElem& b);
SElem s_mul(const RingContext& R, const SElem& a, const SElem& b);
SElem s_neg(const RingContext& R, const SElem& a);
SElem s_inv(const RingContext& R, const SElem& a);
bool s_equal(const RingContext& R, const SElem& a, const SElem& b);

/// Equality up to the precision tail: a - b is divisible by p^prec.  Scaled
/// normalization of an element of valuation v only determines its unit part
/// modulo p^{N-v}, so derived values are compared at a reduced precision.
bool s_equal_mod(const RingContext& R, const SElem& a, const SElem& b, int prec);

struct SMat {
    int rows = 0;
    int cols = 0;
    std::vector<SElem> a;

    SMat() = default;
    SMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    SElem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const SElem& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }
};

SMat s_from_mat(const RingContext& R, const Mat& M, int scale = 0);
SMat s_mat_mul(const RingContext& R, const SMat& A, const SMat& B);
SMat s_mat_transpose(const SMat& A);

/// Exact inverse of a square matrix invertible over the fraction field.
/// Throws domain_error when rank-deficient at working precision.
SMat s_mat_inverse(const RingContext& R, const SMat& M);

/// Minimum exponent over nonzero entries (0 for the zero matrix).
int s_min_exponent(const SMat& M);

/// True when every entry has exponent >= -slack.
bool s_is_integral(const SMat& M, int slack = 0);

/// Factor out p^e so all entries become integral: returns (integral part, e).
std::pair<Mat, int> s_to_integral(const RingContext& R, const SMat& M);

}  // namespace gl4
