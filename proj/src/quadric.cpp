#include "gl4/quadric.hpp"

#include <algorithm>
#include <set>

#include "gl4/residue.hpp"

namespace gl4 {

namespace {

/// Embed an F_p matrix into another context (entries are canonical digits).
Mat embed_fp(const RingContext& F, const Mat& A) {
    Mat out(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            out.at(i, j) = F.from_int(static_cast<long long>(A.at(i, j).c[0]));
    return out;
}

RElem row_pair(const RingContext& F, const Mat& G, const Mat& S, int i, int j) {
    RElem v{};
    for (int a = 0; a < G.rows; ++a)
        for (int b = 0; b < G.cols; ++b)
            v = F.add(v, F.mul(S.at(i, a), F.mul(G.at(a, b), S.at(j, b))));
    return v;
}

}  // namespace

OmegaSpace OmegaSpace::make(const QSpace& Q, const VertexLattice& L) {
    const RingContext& R = *Q.ctx;
    OmegaSpace O;
    O.fp = RingContext::make(R.p, 1, 1);
    O.lam = L;
    O.d = L.type / 2;
    QuotientBasis qb(L.lat, L.dual);
    if (qb.dim() != L.type)
        throw inconsistency_error("reduction dimension differs from the type");
    int n = L.type;
    std::vector<Mat> rows(static_cast<std::size_t>(n));
    std::vector<int> scales(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<RElem> coords(static_cast<std::size_t>(n));
        coords[static_cast<std::size_t>(i)] = R.one();
        auto [row, sc] = qb.lift(coords);
        rows[static_cast<std::size_t>(i)] = row;
        scales[static_cast<std::size_t>(i)] = sc;
    }
    O.gram = Mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat t = mat_mul(R, mat_mul(R, rows[static_cast<std::size_t>(i)], Q.gram.g),
                            mat_transpose(rows[static_cast<std::size_t>(j)]));
            // reduced form p [x, y] mod p; the rational pairing of lattice
            // vectors here has valuation >= -1
            int e = scales[static_cast<std::size_t>(i)] +
                    scales[static_cast<std::size_t>(j)] + Q.gram.scale + 1;
            RElem v = t.at(0, 0);
            RElem w;
            if (e >= 0)
                w = R.mul_pow_p(v, e);
            else if (R.valuation(v) + e >= 0)
                w = R.divide_exact_p(v, -e);
            else
                throw inconsistency_error("non-integral reduced pairing");
            O.gram.at(i, j) = O.fp->from_int(static_cast<long long>(
                R.reduce_mod_p_pow(w, 1).c[0]));
        }
    // nondegenerate: full rank over F_p
    if (howell(*O.fp, O.gram).rank != n)
        throw inconsistency_error("degenerate reduced form");
    // nonsplit: no rational isotropic line for d = 1; elliptic count for d = 2
    int pts = isotropic_point_count(O, 1);
    int expect = O.d == 1 ? 0 : static_cast<int>(R.p * R.p) + 1;
    if (pts != expect) throw inconsistency_error("reduced form is not nonsplit");
    return O;
}

int isotropic_point_count(const OmegaSpace& O, int s) {
    RingCtxPtr Fs = RingContext::make(O.fp->p, 1, s);
    Mat G = embed_fp(*Fs, O.gram);
    int count = 0;
    for (const Mat& pt : residue_lines(*Fs, 2 * O.d))
        if (Fs->is_zero(row_pair(*Fs, G, pt, 0, 0))) ++count;
    return count;
}

std::vector<Mat> lagrangians(const OmegaSpace& O, int s) {
    RingCtxPtr Fs = RingContext::make(O.fp->p, 1, s);
    Mat G = embed_fp(*Fs, O.gram);
    std::vector<Mat> out;
    for (const Mat& S : residue_subspaces_dim(*Fs, 2 * O.d, O.d)) {
        bool iso = true;
        for (int i = 0; i < O.d && iso; ++i)
            for (int j = i; j < O.d && iso; ++j)
                if (!Fs->is_zero(row_pair(*Fs, G, S, i, j))) iso = false;
        if (iso) out.push_back(S);
    }
    return out;
}

QuadricContext QuadricContext::make(long p, int s) {
    if (s < 1 || 2 * s > kMaxDegree)
        throw domain_error("QuadricContext: extension degree out of range");
    QuadricContext C;
    C.field = RingContext::make(p, 1, 2 * s);
    C.s = s;
    C.D = C.field->from_int(default_nonsquare(p));
    C.delta = hensel_sqrt(*C.field, C.D);
    return C;
}

std::vector<RElem> proj_normalize(const RingContext& F, std::vector<RElem> c) {
    for (const RElem& x : c)
        if (!F.is_zero(x)) {
            RElem inv = F.inverse(x);
            for (RElem& y : c) y = F.mul(y, inv);
            return c;
        }
    throw domain_error("proj_normalize: zero vector");
}

std::vector<RElem> proj_frobenius(const RingContext& F, std::vector<RElem> c) {
    for (RElem& x : c) x = F.frobenius(x);
    return proj_normalize(F, std::move(c));
}

std::vector<std::vector<RElem>> proj_points(const RingCtxPtr& F, int n) {
    std::vector<std::vector<RElem>> out;
    for (const Mat& line : residue_lines(*F, n)) {
        std::vector<RElem> pt(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) pt[static_cast<std::size_t>(j)] = line.at(0, j);
        out.push_back(proj_normalize(*F, std::move(pt)));
    }
    return out;
}

std::vector<RElem> psi(const QuadricContext& C, const std::vector<RElem>& ab,
                       const std::vector<RElem>& cd) {
    const RingContext& F = *C.field;
    const RElem &a = ab[0], &b = ab[1], &c = cd[0], &d = cd[1];
    RElem inv2 = F.inverse(F.from_int(2));
    RElem inv2delta = F.inverse(F.mul(F.from_int(2), C.delta));
    RElem ad = F.mul(a, d), bc = F.mul(b, c);
    std::vector<RElem> pt{F.mul(a, c), F.mul(b, d), F.mul(F.add(ad, bc), inv2),
                          F.mul(F.sub(ad, bc), inv2delta)};
    return proj_normalize(F, std::move(pt));
}

RElem quadric_eval(const QuadricContext& C, const std::vector<RElem>& pt) {
    const RingContext& F = *C.field;
    RElem v = F.mul(pt[0], pt[1]);
    v = F.sub(v, F.mul(pt[2], pt[2]));
    return F.add(v, F.mul(C.D, F.mul(pt[3], pt[3])));
}

std::vector<std::vector<RElem>> quadric_points(const QuadricContext& C) {
    std::vector<std::vector<RElem>> out;
    for (auto& pt : proj_points(C.field, 4))
        if (C.field->is_zero(quadric_eval(C, pt))) out.push_back(std::move(pt));
    std::sort(out.begin(), out.end(),
              [&](const std::vector<RElem>& a, const std::vector<RElem>& b) {
                  for (std::size_t k = 0; k < a.size(); ++k) {
                      if (a[k].c < b[k].c) return true;
                      if (b[k].c < a[k].c) return false;
                  }
                  return false;
              });
    return out;
}

std::string flag_key(const RingContext& F, const Flag& f) {
    std::string s;
    for (const RElem& x : f.point) s += F.to_string(x) + ",";
    s += "|";
    for (const RElem& x : f.plane.a) s += F.to_string(x) + ",";
    return s;
}

namespace {

/// Canonical 2x4 echelon plane through the two given points.
Mat plane_of(const RingContext& F, const std::vector<RElem>& u,
             const std::vector<RElem>& v) {
    Mat M(2, 4);
    for (int j = 0; j < 4; ++j) {
        M.at(0, j) = u[static_cast<std::size_t>(j)];
        M.at(1, j) = v[static_cast<std::size_t>(j)];
    }
    HowellResult h = howell(F, M);
    if (h.rank != 2) throw inconsistency_error("degenerate ruling plane");
    return h.h;
}

}  // namespace

std::pair<std::vector<Flag>, std::vector<Flag>> x_lambda_points(const QuadricContext& C) {
    const RingContext& F = *C.field;
    std::vector<RElem> e10{F.one(), F.zero()};
    std::vector<RElem> e01{F.zero(), F.one()};
    std::vector<Flag> plus, minus;
    for (const auto& P : proj_points(C.field, 2)) {
        std::vector<RElem> FP = proj_frobenius(F, P);
        // first ruling through P: {psi(P, C)}; its Frobenius image is the
        // second ruling through Phi P, and they meet in psi(P, Phi P)
        plus.push_back(Flag{psi(C, P, FP), plane_of(F, psi(C, P, e10), psi(C, P, e01))});
        minus.push_back(Flag{psi(C, FP, P), plane_of(F, psi(C, e10, P), psi(C, e01, P))});
    }
    auto by_key = [&](const Flag& a, const Flag& b) {
        return flag_key(F, a) < flag_key(F, b);
    };
    std::sort(plus.begin(), plus.end(), by_key);
    std::sort(minus.begin(), minus.end(), by_key);
    for (std::size_t i = 1; i < plus.size(); ++i)
        if (plus[i - 1] == plus[i] || minus[i - 1] == minus[i])
            throw inconsistency_error("duplicate flag");
    return {std::move(plus), std::move(minus)};
}

PLattice lat_from_y(const ExteriorSpace& V, const PLattice& lam) {
    const RingContext& R = *V.ctx;
    if (lam.ctx()->p != R.p || lam.ctx()->N != R.N || lam.ctx()->m != 1 ||
        lam.dim() != 6)
        throw domain_error("lat_from_y: incompatible coordinate lattice");
    Mat G(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            G.at(i, j) = R.from_coords({lam.gens().at(i, j).c[0]});
    return PLattice::make(V.ctx, mat_mul(R, G, y_basis(V)), lam.scale());
}

namespace {

/// p^shift times the scaled value, reduced mod p into the residue field F.
RElem residue_of(const RingContext& R, const RingContext& F, const SElem& x,
                 int shift) {
    if (x.zero) return F.zero();
    int e = x.e + shift;
    if (e >= 1) return F.zero();
    if (e < 0) throw inconsistency_error("non-integral reduced pairing");
    RElem r = R.reduce_mod_p_pow(x.u, 1);
    std::vector<u64> digs(static_cast<std::size_t>(R.m));
    for (int k = 0; k < R.m; ++k) digs[static_cast<std::size_t>(k)] = r.c[static_cast<std::size_t>(k)];
    return F.from_coords(digs);
}

/// lat extended by one extra generator given at its own scale.
PLattice extend_by_row(const PLattice& lat, const Mat& row, int row_scale) {
    const RingContext& R = *lat.ctx();
    SMat g(lat.dim() + 1, lat.dim());
    for (int i = 0; i < lat.dim(); ++i)
        for (int j = 0; j < lat.dim(); ++j)
            g.at(i, j) = s_make(R, lat.gens().at(i, j), lat.scale());
    for (int j = 0; j < lat.dim(); ++j)
        g.at(lat.dim(), j) = s_make(R, row.at(0, j), row_scale);
    return PLattice::from_scaled(lat.ctx(), g);
}

}  // namespace

std::vector<SpecialLattice> specials_of_vertex(const ExteriorSpace& V, const QSpace& Q,
                                               const VertexLattice& lam, int count) {
    const RingContext& R = *V.ctx;
    if (Q.ctx->p != R.p || Q.ctx->N != R.N)
        throw domain_error("specials_of_vertex: mismatched coefficient rings");
    RingCtxPtr Fc = RingContext::make(R.p, 1, R.m);
    const RingContext& F = *Fc;
    const int d = lam.type / 2, n = lam.type;

    PLattice W = lat_from_y(V, lam.lat);
    PLattice DW = lat_from_y(V, lam.dual);
    QuotientBasis qb(W, DW);
    if (qb.dim() != n)
        throw inconsistency_error("specials_of_vertex: reduction has the wrong dimension");

    // basis lifts and the reduced gram p[.,.] mod p over the residue field
    std::vector<Mat> rows(static_cast<std::size_t>(n));
    std::vector<int> scales(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<RElem> coords(static_cast<std::size_t>(n));
        coords[static_cast<std::size_t>(i)] = R.one();
        auto [row, sc] = qb.lift(coords);
        rows[static_cast<std::size_t>(i)] = row;
        scales[static_cast<std::size_t>(i)] = sc;
    }
    Mat B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B.at(i, j) = residue_of(
                R, F,
                pairing_x(V, rows[static_cast<std::size_t>(i)],
                          scales[static_cast<std::size_t>(i)],
                          rows[static_cast<std::size_t>(j)],
                          scales[static_cast<std::size_t>(j)]),
                1);
    if (howell(F, B).rank != n)
        throw inconsistency_error("specials_of_vertex: degenerate reduced form");

    auto pair_val = [&](const Mat& a, const Mat& b) {
        RElem v{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                v = F.add(v, F.mul(a.at(0, i), F.mul(B.at(i, j), b.at(0, j))));
        return v;
    };

    // all isotropic projective points, canonical representatives in scan order
    const std::vector<RElem> elems = residue_elems(F);
    const long long q = static_cast<long long>(elems.size());
    std::vector<Mat> pts;
    for (int lead = 0; lead < n; ++lead) {
        long long total = 1;
        for (int k = 0; k < n - 1 - lead; ++k) total *= q;
        for (long long t = 0; t < total; ++t) {
            Mat v(1, n);
            v.at(0, lead) = F.one();
            long long rem = t;
            for (int j = lead + 1; j < n; ++j) {
                v.at(0, j) = elems[static_cast<std::size_t>(rem % q)];
                rem /= q;
            }
            if (F.is_zero(pair_val(v, v))) pts.push_back(std::move(v));
        }
    }
    // the form splits over the even-degree residue field
    std::size_t expect = d == 1 ? 2 : static_cast<std::size_t>((q + 1) * (q + 1));
    if (pts.size() != expect)
        throw inconsistency_error("specials_of_vertex: isotropic point count is off");

    std::set<std::string> seen;
    std::vector<SpecialLattice> out;
    auto emit = [&](const Mat& plane) {
        std::string key;
        for (const RElem& x : plane.a) key += F.to_string(x) + ",";
        if (!seen.insert(std::move(key)).second) return;
        PLattice L = DW;
        for (int r = 0; r < d; ++r) {
            std::vector<RElem> coords(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                const RElem& x = plane.at(r, j);
                std::vector<u64> digs(static_cast<std::size_t>(R.m));
                for (int k = 0; k < R.m; ++k)
                    digs[static_cast<std::size_t>(k)] = x.c[static_cast<std::size_t>(k)];
                coords[static_cast<std::size_t>(j)] = R.from_coords(digs);
            }
            auto [row, sc] = qb.lift(coords);
            L = extend_by_row(L, row, sc);
        }
        if (!is_special(V, L))
            throw inconsistency_error("specials_of_vertex: lift is not special");
        out.push_back(SpecialLattice{std::move(L), Orientation::unknown});
    };

    if (d == 1) {
        for (const Mat& v : pts) {
            if (count > 0 && static_cast<int>(out.size()) >= count) break;
            emit(howell(F, v).h);
        }
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (count > 0 && static_cast<int>(out.size()) >= count) break;
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (count > 0 && static_cast<int>(out.size()) >= count) break;
                if (!F.is_zero(pair_val(pts[i], pts[j]))) continue;
                HowellResult h = howell(F, mat_stack(pts[i], pts[j]));
                if (h.rank != 2) continue;  // same projective point
                emit(h.h);
            }
        }
        if (count <= 0 && out.size() != static_cast<std::size_t>(2 * (q + 1)))
            throw inconsistency_error("specials_of_vertex: Lagrangian count is off");
    }
    return out;
}

namespace {

PLattice fixed_part_at_depth(const ExteriorSpace& V, const QSpace& Q,
                             const PLattice& L, int B) {
    const RingContext& R = *V.ctx;
    const RingContext& Z = *Q.ctx;
    Mat Y = y_basis(V);
    SMat S = s_mat_mul(R, s_from_mat(R, Y, 0),
                       s_mat_inverse(R, s_from_mat(R, L.gens(), L.scale())));
    int t_shift = std::max(0, -s_min_exponent(S));
    if (B + t_shift >= Z.N)
        throw precision_error("phi_fixed_part: depth exceeds precision");
    int mm = R.m;
    Mat E(6, 6 * mm);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const SElem& x = S.at(i, j);
            if (x.zero) continue;
            for (int k = 0; k < mm; ++k)
                E.at(i, mm * j + k) = Z.mul_pow_p(
                    Z.from_coords({x.u.c[static_cast<std::size_t>(k)]}),
                    x.e + t_shift);
        }
    Mat K = kernel_mod(Z, E, B + t_shift);
    return PLattice::make(Q.ctx, K, -B);
}

}  // namespace

PLattice phi_fixed_part(const ExteriorSpace& V, const QSpace& Q, const PLattice& L) {
    if (Q.ctx->p != V.ctx->p || Q.ctx->N != V.ctx->N)
        throw domain_error("phi_fixed_part: mismatched coefficient rings");
    PLattice A = fixed_part_at_depth(V, Q, L, 4);
    // self-check: a deeper denominator bound finds nothing new
    if (fixed_part_at_depth(V, Q, L, 5) != A)
        throw inconsistency_error("phi_fixed_part: fixed module not saturated");
    // forward check: every generator really lands in L
    const RingContext& R = *V.ctx;
    Mat Y = y_basis(V);
    MembershipTester in_L(L);
    for (int i = 0; i < 6; ++i) {
        Mat row(1, 6);
        for (int j = 0; j < 6; ++j) row.at(0, j) = A.gens().at(i, j);
        Mat img = mat_mul(R, row, Y);
        if (!in_L.contains_row(img, A.scale()))
            throw inconsistency_error("phi_fixed_part: generator leaves L");
    }
    return A;
}

ChainResult chain_and_lambda(const ExteriorSpace& V, const QSpace& Q,
                             const SpecialLattice& L) {
    if (!is_special(V, L.L)) throw domain_error("chain_and_lambda: not special");
    PLattice L0 = L.L;
    PLattice L1 = lat_sum(L0, phi_bar(V, L0));
    if (quotient_length(L1, L0) != 1)
        throw inconsistency_error("chain step 1 does not have length 1");
    int d;
    PLattice top;
    PLattice L2 = lat_sum(L1, phi_bar(V, L1));
    if (L2 == L1) {
        d = 1;
        top = L1;
    } else {
        if (quotient_length(L2, L1) != 1)
            throw inconsistency_error("chain step 2 does not have length 1");
        if (lat_sum(L2, phi_bar(V, L2)) != L2)
            throw inconsistency_error("chain fails to stabilize by d = 2");
        d = 2;
        top = L2;
    }
    VertexLattice lam = VertexLattice::make(Q, phi_fixed_part(V, Q, top));
    if (lam.type != 2 * d)
        throw inconsistency_error("extracted vertex lattice has the wrong type");
    if (lam.dual != phi_fixed_part(V, Q, L0))
        throw inconsistency_error("dual of the vertex lattice is not the fixed part of L");
    return ChainResult{d, std::move(top), std::move(lam)};
}

bool is_superspecial(const ExteriorSpace& V, const SpecialLattice& L) {
    bool ss = phi_bar(V, phi_bar(V, L.L)) == L.L;
    PLattice L1 = lat_sum(L.L, phi_bar(V, L.L));
    bool d1 = lat_sum(L1, phi_bar(V, L1)) == L1;
    if (ss != d1)
        throw inconsistency_error("superspecial criteria disagree");
    return ss;
}

}  // namespace gl4
