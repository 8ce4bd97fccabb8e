#include "gl4/isocrystal.hpp"

namespace gl4 {

Isocrystal Isocrystal::make(const RingCtxPtr& ctx) {
    const RingContext& R = *ctx;
    Isocrystal N;
    N.ctx = ctx;

    // rows are images of basis vectors (row-vector convention)
    N.PF = Mat(4, 4);
    N.PF.at(0, 1) = R.one();
    N.PF.at(1, 0) = R.from_int(R.p);
    N.PF.at(2, 3) = R.one();
    N.PF.at(3, 2) = R.from_int(R.p);

    N.phi_mat = Mat(4, 4);
    N.phi_mat.at(0, 1) = R.one();
    N.phi_mat.at(1, 0) = R.from_int(R.p);
    N.phi_mat.at(2, 2) = R.one();
    N.phi_mat.at(3, 3) = R.one();

    N.psi_mat = Mat(4, 4);
    N.psi_mat.at(0, 1) = R.one();
    N.psi_mat.at(1, 0) = R.from_int(R.p);
    N.psi_mat.at(2, 2) = R.from_int(R.p);
    N.psi_mat.at(3, 3) = R.from_int(R.p);

    return N;
}

std::pair<Mat, int> apply_F(const Isocrystal& N, const Mat& v, int scale) {
    const RingContext& R = *N.ctx;
    return {mat_mul(R, mat_frobenius(R, v), N.PF), scale};
}

PLattice F_bar(const Isocrystal& N, const PLattice& A) {
    const RingContext& R = *N.ctx;
    Mat img = mat_mul(R, mat_frobenius(R, A.gens()), N.PF);
    return PLattice::make(N.ctx, std::move(img), A.scale());
}

PLattice F_inv(const Isocrystal& N, const PLattice& A) {
    const RingContext& R = *N.ctx;
    // PF^{-1} = p^{-1} PF (since PF^2 = p * identity), and sigma is bijective,
    // so F^{-1}(A) is spanned by sigma^{-1}(basis * PF) at scale - 1.
    Mat img = mat_frobenius_inv(R, mat_mul(R, A.gens(), N.PF));
    return PLattice::make(N.ctx, std::move(img), A.scale() - 1);
}

PLattice F_inv_p(const Isocrystal& N, const PLattice& A) {
    return F_inv(N, A.scaled_by(1));
}

bool is_dieudonne(const Isocrystal& N, const PLattice& A) {
    PLattice A1 = F_inv_p(N, A);
    PLattice pA = A.scaled_by(1);
    bool chain = lat_contains(A, A1) && lat_contains(A1, pA);
    bool len2 = chain && quotient_length(A, A1) == 2 &&
                quotient_length(A1, pA) == 2;

    // second definitional criterion: F_bar(F^{-1}(A)) = A.  Over a finite
    // residue field sigma is bijective, so stability must hold for every A;
    // a failure indicates an arithmetic bug, not a property of A.
    PLattice back = F_bar(N, F_inv(N, A));
    if (!lat_contains(A, back))
        throw inconsistency_error("F_bar(F_inv(A)) escapes A");
    bool crit2 = back == A;
    if (len2 && !crit2)
        throw inconsistency_error("Dieudonne criteria disagree");
    return len2;
}

PLattice shift_height(const Isocrystal& N, const PLattice& A, int delta) {
    const RingContext& R = *N.ctx;
    PLattice cur = A;
    for (int i = 0; i < delta; ++i)
        cur = PLattice::make(N.ctx, mat_mul(R, cur.gens(), N.phi_mat), cur.scale());
    for (int i = 0; i > delta; --i)
        cur = PLattice::make(N.ctx, mat_mul(R, cur.gens(), N.psi_mat),
                             cur.scale() - 1);
    return cur;
}

}  // namespace gl4
