#include "gl4/qspace.hpp"

namespace gl4 {

DiagForm DiagForm::make(long p, std::vector<PRat> diag) {
    if (p < 3 || !is_prime(p)) throw domain_error("DiagForm: p must be an odd prime");
    for (const PRat& a : diag)
        if (a.unit == 0) throw domain_error("DiagForm: zero diagonal entry");
    return DiagForm{p, std::move(diag)};
}

DiagForm fixed_space_form(long p) { return fixed_space_form(p, default_nonsquare(p)); }

DiagForm fixed_space_form(long p, long D) {
    if (legendre(D, p) != -1) throw domain_error("fixed_space_form: D must be a nonsquare unit");
    return DiagForm::make(p, {PRat::from_int(D, p), PRat::from_int(-D, p),
                              PRat::from_int(D * p, p), PRat::from_int(-p, p),
                              PRat::from_int(1, p), PRat::from_int(-D, p)});
}

int hasse_invariant(const DiagForm& f) {
    int h = 1;
    for (std::size_t i = 0; i < f.diag.size(); ++i)
        for (std::size_t j = i + 1; j < f.diag.size(); ++j)
            h *= hilbert_symbol(f.diag[i], f.diag[j], f.p);
    return h;
}

SquareClass square_class(const PRat& a, long p) {
    int lu = legendre(a.unit, p);
    if (lu == 0) throw domain_error("square_class: unit part divisible by p");
    return SquareClass{(a.exp % 2) != 0, lu == -1};
}

SquareClass square_class(long long a, long p) {
    return square_class(PRat::from_int(a, p), p);
}

SquareClass det_class(const DiagForm& f) {
    SquareClass c;
    for (const PRat& a : f.diag) {
        SquareClass ca = square_class(a, f.p);
        c.odd_val = c.odd_val != ca.odd_val;
        c.nonsquare = c.nonsquare != ca.nonsquare;
    }
    return c;
}

long long square_class_rep(const SquareClass& c, long p) {
    long long r = 1;
    if (c.nonsquare) r *= default_nonsquare(p);
    if (c.odd_val) r *= p;
    return r;
}

QSpace QSpace::make(long p, int N) {
    return make(RingContext::make(p, N, 1), default_nonsquare(p));
}

QSpace QSpace::make(const RingCtxPtr& ctx, long Delta) {
    if (ctx->m != 1) throw domain_error("QSpace: coefficient ring must have m = 1");
    if (legendre(Delta, ctx->p) != -1)
        throw domain_error("QSpace: Delta must be a nonsquare unit");
    QSpace Q;
    Q.ctx = ctx;
    Q.Delta = Delta;
    const RingContext& R = *ctx;
    Mat g(6, 6);
    long long d[6] = {2 * Delta, -2 * Delta, 2 * Delta * ctx->p, -2 * ctx->p, 2,
                      -2 * Delta};
    for (int i = 0; i < 6; ++i) g.at(i, i) = R.from_int(d[i]);
    Q.gram = GramForm{std::move(g), 0};
    return Q;
}

PLattice qs_dual(const QSpace& Q, const PLattice& L) { return lat_dual(L, Q.gram); }

std::pair<bool, int> is_vertex(const QSpace& Q, const PLattice& L) {
    PLattice dual = qs_dual(Q, L);
    PLattice pL = L.scaled_by(1);
    bool chain = lat_contains(L, dual) && lat_contains(dual, pL) && dual != L &&
                 dual != pL;
    if (!chain) return {false, 0};
    int type = quotient_length(L, dual);
    if (type % 2 != 0)
        throw inconsistency_error("vertex lattice of odd type " + std::to_string(type));
    return {true, type};
}

PLattice standard_type2(const QSpace& Q) {
    return qs_dual(Q, PLattice::standard(Q.ctx, 6));
}

}  // namespace gl4
