#include "gl4/lattice.hpp"

#include <algorithm>

namespace gl4 {

PLattice PLattice::make(const RingCtxPtr& ctx, Mat gens, int scale) {
    const RingContext& R = *ctx;
    if (gens.rows < gens.cols)
        throw domain_error("lattice generators: need at least n rows");
    HowellResult hr = howell(R, std::move(gens));
    if (hr.rank < hr.h.cols)
        throw domain_error("lattice generators rank deficient at working precision");

    Mat h(hr.h.cols, hr.h.cols);
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j) h.at(i, j) = hr.h.at(i, j);

    // absorb any common p factor into the scale
    int v = R.N;
    for (const RElem& x : h.a) v = std::min(v, R.valuation(x));
    if (v > 0 && v < R.N) {
        for (RElem& x : h.a) x = R.divide_exact_p(x, v);
        scale += v;
    }

    int max_piv = 0;
    for (int pv : hr.pivot_val) max_piv = std::max(max_piv, pv);
    if (R.N >= 6) {
        int vb = R.policy.val_bound;
        if (scale > vb + 2 || scale < -(vb + 2) || max_piv > 2 * vb)
            throw precision_error("lattice valuations exceed the precision budget");
    }

    PLattice L;
    L.ctx_ = ctx;
    L.n_ = h.cols;
    L.scale_ = scale;
    L.gens_ = std::move(h);
    return L;
}

PLattice PLattice::standard(const RingCtxPtr& ctx, int n, int scale) {
    return make(ctx, mat_identity(*ctx, n), scale);
}

PLattice PLattice::from_scaled(const RingCtxPtr& ctx, const SMat& gens) {
    auto [m, e] = s_to_integral(*ctx, gens);
    return make(ctx, std::move(m), e);
}

PLattice PLattice::scaled_by(int k) const {
    PLattice L = *this;
    L.scale_ += k;
    if (ctx_->N >= 6) {
        int vb = ctx_->policy.val_bound;
        if (L.scale_ > vb + 2 || L.scale_ < -(vb + 2))
            throw precision_error("lattice scale exceeds the precision budget");
    }
    return L;
}

std::string PLattice::key() const {
    std::string s = std::to_string(scale_);
    s += '|';
    for (std::size_t i = 0; i < gens_.a.size(); ++i) {
        if (i) s += ',';
        s += ctx_->to_string(gens_.a[i]);
    }
    return s;
}

GramForm GramForm::identity(const RingCtxPtr& ctx, int n) {
    return GramForm{mat_identity(*ctx, n), 0};
}

PLattice lat_sum(const PLattice& A, const PLattice& B) {
    const RingContext& R = *A.ctx();
    if (A.dim() != B.dim()) throw domain_error("lat_sum: dimension mismatch");
    int e = std::min(A.scale(), B.scale());
    Mat top = mat_mul_pow_p(R, A.gens(), A.scale() - e);
    Mat bot = mat_mul_pow_p(R, B.gens(), B.scale() - e);
    return PLattice::make(A.ctx(), mat_stack(top, bot), e);
}

PLattice lat_dual(const PLattice& A, const GramForm& G) {
    const RingContext& R = *A.ctx();
    SMat SG = s_from_mat(R, G.g, G.scale);
    SMat SA = s_from_mat(R, A.gens(), 0);
    SMat K = s_mat_mul(R, SG, s_mat_transpose(SA));
    SMat Kinv = s_mat_inverse(R, K);
    // actual pairing matrix is p^(gs + e) g A^t; fold the exponents in
    for (SElem& x : Kinv.a)
        if (!x.zero) x.e -= A.scale();
    return PLattice::from_scaled(A.ctx(), Kinv);
}

PLattice lat_intersect_dual_method(const PLattice& A, const PLattice& B) {
    GramForm I = GramForm::identity(A.ctx(), A.dim());
    return lat_dual(lat_sum(lat_dual(A, I), lat_dual(B, I)), I);
}

PLattice lat_intersect_kernel_method(const PLattice& A, const PLattice& B) {
    const RingContext& R = *A.ctx();
    int n = A.dim();
    int e = std::min(A.scale(), B.scale());
    Mat GA = mat_mul_pow_p(R, A.gens(), A.scale() - e);
    Mat GB = mat_mul_pow_p(R, B.gens(), B.scale() - e);
    Mat S = mat_stack(GA, GB);
    Mat U;
    HowellResult hr = howell(R, S, &U);
    if (hr.rank < n)
        throw domain_error("intersection: degenerate input");
    // rows of U below the rank are relations u*GA = v*GB; u*GA spans A cap B
    Mat gens(2 * n - hr.rank, n);
    int out = 0;
    for (int i = hr.rank; i < 2 * n; ++i) {
        Mat u(1, n);
        for (int j = 0; j < n; ++j) u.at(0, j) = U.at(i, j);
        Mat row = mat_mul(R, u, GA);
        for (int j = 0; j < n; ++j) gens.at(out, j) = row.at(0, j);
        ++out;
    }
    return PLattice::make(A.ctx(), std::move(gens), e);
}

PLattice lat_intersect(const PLattice& A, const PLattice& B) {
    PLattice d = lat_intersect_dual_method(A, B);
    PLattice k = lat_intersect_kernel_method(A, B);
    if (d != k)
        throw inconsistency_error(
            "lattice intersection: dual and kernel methods disagree");
    return d;
}

SMat coords_in(const PLattice& A, const PLattice& B) {
    const RingContext& R = *A.ctx();
    SMat SA = s_from_mat(R, A.gens(), A.scale());
    SMat SBinv = s_mat_inverse(R, s_from_mat(R, B.gens(), B.scale()));
    return s_mat_mul(R, SA, SBinv);
}

bool lat_contains(const PLattice& A, const PLattice& B) {
    return s_is_integral(coords_in(B, A));
}

int quotient_length(const PLattice& A, const PLattice& B) {
    const RingContext& R = *A.ctx();
    SMat C = coords_in(B, A);
    if (!s_is_integral(C))
        throw domain_error("quotient_length: second lattice not contained in first");
    auto [M, e] = s_to_integral(R, C);
    auto dv = det_valuation(R, M);
    if (!dv)
        throw precision_error("quotient_length: index too large for precision");
    return *dv + A.dim() * e;
}

int lat_height(const PLattice& A, const PLattice& reference) {
    const RingContext& R = *A.ctx();
    SMat C = coords_in(A, reference);
    auto [M, e] = s_to_integral(R, C);
    auto dv = det_valuation(R, M);
    if (!dv) throw precision_error("height: determinant vanishes at precision");
    return *dv + A.dim() * e;
}

MembershipTester::MembershipTester(const PLattice& A) : ctx_(A.ctx()) {
    const RingContext& R = *ctx_;
    inv_ = s_mat_inverse(R, s_from_mat(R, A.gens(), A.scale()));
}

bool MembershipTester::contains_row(const Mat& v, int scale) const {
    return contains_srow(s_from_mat(*ctx_, v, scale));
}

bool MembershipTester::contains_srow(const SMat& v) const {
    return s_is_integral(s_mat_mul(*ctx_, v, inv_));
}

QuotientBasis::QuotientBasis(const PLattice& lat, const PLattice& sub)
    : ctx_(lat.ctx()), lat_(lat) {
    const RingContext& R = *ctx_;
    SMat C = coords_in(sub, lat);
    if (!s_is_integral(C))
        throw domain_error("quotient basis: sublattice not contained");
    auto [M, e] = s_to_integral(R, C);
    (void)e;  // integral input, so no denominator was factored out
    HowellResult hr = howell(R, M);
    if (hr.rank < lat.dim())
        throw domain_error("quotient basis: sublattice rank deficient");
    sub_in_lat_ = hr.h;
    pivot_val_.assign(static_cast<std::size_t>(lat.dim()), 0);
    for (int r = 0; r < hr.rank; ++r) {
        pivot_val_[static_cast<std::size_t>(hr.pivot_col[r])] = hr.pivot_val[r];
        if (hr.pivot_val[r] > 1)
            throw domain_error("quotient basis: quotient is not a vector space");
    }
    for (int j = 0; j < lat.dim(); ++j)
        if (pivot_val_[static_cast<std::size_t>(j)] == 1) free_cols_.push_back(j);
    lat_inv_ = s_mat_inverse(R, s_from_mat(R, lat.gens(), lat.scale()));
}

std::vector<RElem> QuotientBasis::reduce(const Mat& v, int scale) const {
    const RingContext& R = *ctx_;
    SMat lam = s_mat_mul(R, s_from_mat(R, v, scale), lat_inv_);
    if (!s_is_integral(lam))
        throw domain_error("quotient reduce: vector not in the lattice");
    auto [row, e] = s_to_integral(R, lam);
    (void)e;
    // reduce against the Howell rows of the sublattice (pivot col r = r)
    Mat work = row;
    for (int r = 0; r < sub_in_lat_.rows; ++r) {
        int a = pivot_val_[static_cast<std::size_t>(r)];
        RElem q = R.quotient_p_pow(work.at(0, r), a);
        if (R.is_zero(q)) continue;
        for (int j = 0; j < work.cols; ++j)
            work.at(0, j) = R.sub(work.at(0, j), R.mul(q, sub_in_lat_.at(r, j)));
    }
    std::vector<RElem> out;
    out.reserve(free_cols_.size());
    for (int c : free_cols_) out.push_back(R.reduce_mod_p_pow(work.at(0, c), 1));
    return out;
}

std::pair<Mat, int> QuotientBasis::lift(const std::vector<RElem>& coords) const {
    const RingContext& R = *ctx_;
    Mat v(1, lat_.dim());
    for (std::size_t i = 0; i < free_cols_.size(); ++i) {
        const RElem& c = coords[i];
        if (R.is_zero(c)) continue;
        for (int j = 0; j < lat_.dim(); ++j)
            v.at(0, j) =
                R.add(v.at(0, j), R.mul(c, lat_.gens().at(free_cols_[i], j)));
    }
    return {v, lat_.scale()};
}

}  // namespace gl4
