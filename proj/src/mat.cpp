#include "gl4/mat.hpp"

#include <algorithm>

namespace gl4 {

Mat mat_identity(const RingContext& R, int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = R.one();
    return I;
}

Mat mat_mul(const RingContext& R, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw domain_error("mat_mul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const RElem& aik = A.at(i, k);
            if (R.is_zero(aik)) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = R.add(C.at(i, j), R.mul(aik, B.at(k, j)));
        }
    return C;
}

Mat mat_add(const RingContext& R, const Mat& A, const Mat& B) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.add(A.a[i], B.a[i]);
    return C;
}

Mat mat_sub(const RingContext& R, const Mat& A, const Mat& B) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.sub(A.a[i], B.a[i]);
    return C;
}

Mat mat_neg(const RingContext& R, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.neg(A.a[i]);
    return C;
}

Mat mat_scale(const RingContext& R, const Mat& A, const RElem& c) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.mul(A.a[i], c);
    return C;
}

Mat mat_transpose(const Mat& A) {
    Mat C(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

Mat mat_frobenius(const RingContext& R, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.frobenius(A.a[i]);
    return C;
}

Mat mat_frobenius_inv(const RingContext& R, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.frobenius_inv(A.a[i]);
    return C;
}

Mat mat_stack(const Mat& top, const Mat& bottom) {
    if (top.cols != bottom.cols) throw domain_error("mat_stack: shape mismatch");
    Mat C(top.rows + bottom.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), C.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(),
              C.a.begin() + static_cast<std::ptrdiff_t>(top.a.size()));
    return C;
}

Mat mat_mul_pow_p(const RingContext& R, const Mat& A, int k) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.mul_pow_p(A.a[i], k);
    return C;
}

bool mat_is_zero(const RingContext& R, const Mat& A) {
    for (const RElem& x : A.a)
        if (!R.is_zero(x)) return false;
    return true;
}

namespace {

void row_sub_mul(const RingContext& R, Mat& M, int dst, int src,
                 const RElem& q, Mat* U) {
    for (int j = 0; j < M.cols; ++j)
        M.at(dst, j) = R.sub(M.at(dst, j), R.mul(q, M.at(src, j)));
    if (U)
        for (int j = 0; j < U->cols; ++j)
            U->at(dst, j) = R.sub(U->at(dst, j), R.mul(q, U->at(src, j)));
}

void row_scale(const RingContext& R, Mat& M, int row, const RElem& c, Mat* U) {
    for (int j = 0; j < M.cols; ++j) M.at(row, j) = R.mul(c, M.at(row, j));
    if (U)
        for (int j = 0; j < U->cols; ++j)
            U->at(row, j) = R.mul(c, U->at(row, j));
}

void row_swap(Mat& M, int a, int b, Mat* U) {
    if (a == b) return;
    for (int j = 0; j < M.cols; ++j) std::swap(M.at(a, j), M.at(b, j));
    if (U)
        for (int j = 0; j < U->cols; ++j) std::swap(U->at(a, j), U->at(b, j));
}

}  // namespace

HowellResult howell(const RingContext& R, Mat M, Mat* transform) {
    if (transform) *transform = mat_identity(R, M.rows);
    HowellResult res;
    int h = 0;
    for (int j = 0; j < M.cols && h < M.rows; ++j) {
        // pivot: minimum valuation in column j among rows >= h
        int best = -1;
        int bestv = R.N;
        for (int i = h; i < M.rows; ++i) {
            int v = R.valuation(M.at(i, j));
            if (v < bestv) {
                bestv = v;
                best = i;
            }
        }
        if (best < 0) continue;  // no pivot in this column
        row_swap(M, h, best, transform);
        // normalize: pivot becomes exactly p^bestv
        RElem unit = R.divide_exact_p(M.at(h, j), bestv);
        row_scale(R, M, h, R.inverse(unit), transform);
        // exact elimination below (all have valuation >= bestv)
        for (int i = h + 1; i < M.rows; ++i) {
            const RElem& e = M.at(i, j);
            int v = R.valuation(e);
            if (v >= R.N) continue;
            RElem q = R.divide_exact_p(e, bestv);
            row_sub_mul(R, M, i, h, q, transform);
        }
        res.pivot_col.push_back(j);
        res.pivot_val.push_back(bestv);
        ++h;
    }
    res.rank = h;
    // reduce entries above each pivot modulo the pivot power, left to right
    for (int r = 0; r < res.rank; ++r) {
        int j = res.pivot_col[r];
        int a = res.pivot_val[r];
        for (int i = 0; i < r; ++i) {
            RElem q = R.quotient_p_pow(M.at(i, j), a);
            if (!R.is_zero(q)) row_sub_mul(R, M, i, r, q, transform);
        }
    }
    res.h = std::move(M);
    return res;
}

std::optional<int> det_valuation(const RingContext& R, const Mat& M) {
    if (M.rows != M.cols) throw domain_error("det_valuation: square only");
    HowellResult hr = howell(R, M);
    if (hr.rank < M.rows) return std::nullopt;
    int s = 0;
    for (int v : hr.pivot_val) s += v;
    return s;
}

SElem s_make(const RingContext& R, const RElem& u, int e) {
    SElem s;
    if (R.is_zero(u)) return s;
    int v = R.valuation(u);
    s.zero = false;
    s.u = R.divide_exact_p(u, v);
    s.e = e + v;
    return s;
}

SElem s_from_int(const RingContext& R, long long v, int e) {
    return s_make(R, R.from_int(v), e);
}

SElem s_add(const RingContext& R, const SElem& a, const SElem& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    int e = std::min(a.e, b.e);
    // a term whose exponent exceeds the other's by >= N is 0 mod p^{e+N},
    // so the sum equals the low term exactly in the mod-p^N representation
    if (a.e - e >= R.N) return b;
    if (b.e - e >= R.N) return a;
    RElem ua = R.mul_pow_p(a.u, a.e - e);
    RElem ub = R.mul_pow_p(b.u, b.e - e);
    return s_make(R, R.add(ua, ub), e);
}

SElem s_sub(const RingContext& R, const SElem& a, const SElem& b) {
    return s_add(R, a, s_neg(R, b));
}

SElem s_mul(const RingContext& R, const SElem& a, const SElem& b) {
    if (a.zero || b.zero) return SElem{};
    SElem s;
    s.zero = false;
    s.u = R.mul(a.u, b.u);
    s.e = a.e + b.e;
    return s;
}

SElem s_neg(const RingContext& R, const SElem& a) {
    if (a.zero) return a;
    SElem s = a;
    s.u = R.neg(s.u);
    return s;
}

SElem s_inv(const RingContext& R, const SElem& a) {
    if (a.zero) throw domain_error("scaled inverse of zero");
    SElem s;
    s.zero = false;
    s.u = R.inverse(a.u);
    s.e = -a.e;
    return s;
}

bool s_equal(const RingContext& R, const SElem& a, const SElem& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.e == b.e && R.equal(a.u, b.u);
}

bool s_equal_mod(const RingContext& R, const SElem& a, const SElem& b, int prec) {
    SElem d = s_sub(R, a, b);
    return d.zero || d.e >= prec;
}

SMat s_from_mat(const RingContext& R, const Mat& M, int scale) {
    SMat S(M.rows, M.cols);
    for (std::size_t i = 0; i < M.a.size(); ++i) S.a[i] = s_make(R, M.a[i], scale);
    return S;
}

SMat s_mat_mul(const RingContext& R, const SMat& A, const SMat& B) {
    if (A.cols != B.rows) throw domain_error("s_mat_mul: shape mismatch");
    SMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            SElem acc{};
            for (int k = 0; k < A.cols; ++k)
                acc = s_add(R, acc, s_mul(R, A.at(i, k), B.at(k, j)));
            C.at(i, j) = acc;
        }
    return C;
}

SMat s_mat_transpose(const SMat& A) {
    SMat C(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

SMat s_mat_inverse(const RingContext& R, const SMat& M) {
    if (M.rows != M.cols) throw domain_error("s_mat_inverse: square only");
    int n = M.rows;
    SMat W(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = M.at(i, j);
        W.at(i, n + i) = s_from_int(R, 1);
    }
    for (int j = 0; j < n; ++j) {
        int best = -1;
        int beste = 0;
        for (int i = j; i < n; ++i) {
            const SElem& x = W.at(i, j);
            if (x.zero) continue;
            if (best < 0 || x.e < beste) {
                best = i;
                beste = x.e;
            }
        }
        if (best < 0)
            throw domain_error("s_mat_inverse: rank deficient at working precision");
        if (best != j)
            for (int k = 0; k < 2 * n; ++k) std::swap(W.at(best, k), W.at(j, k));
        SElem piv_inv = s_inv(R, W.at(j, j));
        for (int k = 0; k < 2 * n; ++k)
            W.at(j, k) = s_mul(R, W.at(j, k), piv_inv);
        for (int i = 0; i < n; ++i) {
            if (i == j || W.at(i, j).zero) continue;
            SElem f = W.at(i, j);
            for (int k = 0; k < 2 * n; ++k)
                W.at(i, k) = s_sub(R, W.at(i, k), s_mul(R, f, W.at(j, k)));
        }
    }
    SMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = W.at(i, n + j);
    return inv;
}

int s_min_exponent(const SMat& M) {
    int e = 0;
    bool any = false;
    for (const SElem& x : M.a) {
        if (x.zero) continue;
        if (!any || x.e < e) e = x.e;
        any = true;
    }
    return any ? e : 0;
}

bool s_is_integral(const SMat& M, int slack) {
    for (const SElem& x : M.a)
        if (!x.zero && x.e < -slack) return false;
    return true;
}

std::pair<Mat, int> s_to_integral(const RingContext& R, const SMat& M) {
    int e = std::min(0, s_min_exponent(M));
    Mat out(M.rows, M.cols);
    for (std::size_t i = 0; i < M.a.size(); ++i) {
        const SElem& x = M.a[i];
        if (x.zero) continue;
        int shift = x.e - e;
        if (shift >= R.N)
            out.a[i] = R.zero();
        else
            out.a[i] = R.mul_pow_p(x.u, shift);
    }
    return {out, e};
}

}  // namespace gl4
