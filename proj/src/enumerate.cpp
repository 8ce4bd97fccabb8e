#include "gl4/residue.hpp"

#include <algorithm>
#include <set>

#include "gl4/enumerate.hpp"

namespace gl4 {

std::vector<RElem> residue_elems(const RingContext& R) {
    std::vector<RElem> out;
    u64 total = 1;
    for (int i = 0; i < R.m; ++i) total *= static_cast<u64>(R.p);
    out.reserve(static_cast<std::size_t>(total));
    std::vector<u64> digits(static_cast<std::size_t>(R.m), 0);
    for (u64 k = 0; k < total; ++k) {
        u64 t = k;
        for (int i = 0; i < R.m; ++i) {
            digits[static_cast<std::size_t>(i)] = t % static_cast<u64>(R.p);
            t /= static_cast<u64>(R.p);
        }
        out.push_back(R.from_coords(digits));
    }
    return out;
}

std::vector<Mat> residue_subspaces_dim(const RingContext& R, int n, int d) {
    std::vector<Mat> out;
    if (d < 0 || d > n) return out;
    if (d == 0) {
        out.emplace_back(0, n);
        return out;
    }
    std::vector<RElem> elems = residue_elems(R);

    // choose pivot columns p_0 < ... < p_{d-1}; free entries sit at non-pivot
    // columns to the right of each row's pivot (reduced echelon form)
    std::vector<int> piv(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) piv[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<std::pair<int, int>> free_pos;  // (row, col)
        for (int i = 0; i < d; ++i)
            for (int j = piv[static_cast<std::size_t>(i)] + 1; j < n; ++j) {
                bool is_piv = false;
                for (int t = 0; t < d; ++t)
                    if (piv[static_cast<std::size_t>(t)] == j) is_piv = true;
                if (!is_piv) free_pos.emplace_back(i, j);
            }
        std::vector<std::size_t> idx(free_pos.size(), 0);
        while (true) {
            Mat M(d, n);
            for (int i = 0; i < d; ++i)
                M.at(i, piv[static_cast<std::size_t>(i)]) = R.one();
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                M.at(free_pos[t].first, free_pos[t].second) = elems[idx[t]];
            out.push_back(std::move(M));
            std::size_t c = 0;
            while (c < idx.size() && ++idx[c] == elems.size()) idx[c++] = 0;
            if (c == idx.size()) break;
        }
        // next pivot combination
        int i = d - 1;
        while (i >= 0 && piv[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++piv[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < d; ++t)
            piv[static_cast<std::size_t>(t)] = piv[static_cast<std::size_t>(t - 1)] + 1;
    }
    return out;
}

std::vector<Mat> residue_subspaces(const RingContext& R, int n) {
    std::vector<Mat> out;
    for (int d = 0; d <= n; ++d) {
        std::vector<Mat> part = residue_subspaces_dim(R, n, d);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<Mat> residue_lines(const RingContext& R, int n) {
    return residue_subspaces_dim(R, n, 1);
}

bool residue_in_span(const RingContext& R, const Mat& S, const Mat& v) {
    Mat w = v;
    for (int i = 0; i < S.rows; ++i) {
        int pc = -1;
        for (int j = 0; j < S.cols; ++j)
            if (!R.is_zero(R.reduce_mod_p_pow(S.at(i, j), 1))) {
                pc = j;
                break;
            }
        if (pc < 0) continue;
        // echelon pivot is 1: subtract w[pc] * row
        RElem c = R.reduce_mod_p_pow(w.at(0, pc), 1);
        if (R.is_zero(c)) continue;
        for (int j = 0; j < S.cols; ++j)
            w.at(0, j) = R.sub(w.at(0, j), R.mul(c, S.at(i, j)));
    }
    for (int j = 0; j < S.cols; ++j)
        if (!R.is_zero(R.reduce_mod_p_pow(w.at(0, j), 1))) return false;
    return true;
}

bool residue_span_contains(const RingContext& R, const Mat& S, const Mat& B) {
    for (int i = 0; i < B.rows; ++i) {
        Mat v(1, B.cols);
        for (int j = 0; j < B.cols; ++j) v.at(0, j) = B.at(i, j);
        if (!residue_in_span(R, S, v)) return false;
    }
    return true;
}

namespace {

// induced sigma-semilinear Frobenius on M / p M: v -> sigma(v) PF mod p
Mat residue_frob_image(const Isocrystal& iso, const Mat& S) {
    const RingContext& R = *iso.ctx;
    Mat img = mat_mul(R, mat_frobenius(R, S), iso.PF);
    for (RElem& x : img.a) x = R.reduce_mod_p_pow(x, 1);
    return img;
}

bool residue_frob_stable(const Isocrystal& iso, const Mat& S) {
    return residue_span_contains(*iso.ctx, S, residue_frob_image(iso, S));
}

struct BandCandidate {
    const Mat* U;
    const Mat* W;
    std::vector<std::size_t> hom;  // indices into residue element list
};

}  // namespace

std::vector<PLattice> enumerate_band_dieudonne(const Isocrystal& iso,
                                               Exec exec) {
    const RingCtxPtr& ctx = iso.ctx;
    const RingContext& R = *ctx;

    // stable subspaces by dimension
    std::vector<std::vector<Mat>> stable(5);
    for (int d = 0; d <= 4; ++d)
        for (Mat& S : residue_subspaces_dim(R, 4, d))
            if (residue_frob_stable(iso, S)) stable[static_cast<std::size_t>(d)].push_back(std::move(S));

    std::vector<RElem> elems = residue_elems(R);

    // a lattice p M <= A <= p^{-1} M of height 0 is determined by
    //   U = (A + M)/M,  W = (A cap M + pM)/pM  with U <= W, dim U + dim W = 4,
    // and a lifting hom U -> k'^4 / W; Dieudonne forces U, W Frobenius-stable
    std::vector<BandCandidate> cands;
    for (int u = 0; u <= 2; ++u) {
        int w = 4 - u;
        for (const Mat& U : stable[static_cast<std::size_t>(u)])
            for (const Mat& W : stable[static_cast<std::size_t>(w)]) {
                if (!residue_span_contains(R, W, U)) continue;
                // complement coordinates = non-pivot columns of W
                std::size_t freedoms =
                    static_cast<std::size_t>(u) * static_cast<std::size_t>(4 - w);
                std::vector<std::size_t> hom(freedoms, 0);
                while (true) {
                    cands.push_back({&U, &W, hom});
                    std::size_t c = 0;
                    while (c < hom.size() && ++hom[c] == elems.size()) hom[c++] = 0;
                    if (c == hom.size()) break;
                }
            }
    }

    // non-pivot columns of an echelon matrix
    auto free_cols = [](const RingContext& Rr, const Mat& W) {
        std::vector<int> piv, free;
        for (int i = 0; i < W.rows; ++i)
            for (int j = 0; j < W.cols; ++j)
                if (!Rr.is_zero(Rr.reduce_mod_p_pow(W.at(i, j), 1))) {
                    piv.push_back(j);
                    break;
                }
        for (int j = 0; j < W.cols; ++j)
            if (std::find(piv.begin(), piv.end(), j) == piv.end())
                free.push_back(j);
        return free;
    };

    std::vector<std::vector<PLattice>> found(cands.size());
    parallel_for(exec, static_cast<std::ptrdiff_t>(cands.size()),
                 [&](std::ptrdiff_t ci) {
                     const BandCandidate& c = cands[static_cast<std::size_t>(ci)];
                     const Mat& U = *c.U;
                     const Mat& W = *c.W;
                     std::vector<int> comp = free_cols(R, W);
                     int u = U.rows;
                     // rows at scale -1: lifted U rows plus p * correction in
                     // the complement of W, then p * W rows, then p^2 * basis
                     Mat gens(8, 4);
                     int g = 0;
                     for (int i = 0; i < u; ++i, ++g) {
                         for (int j = 0; j < 4; ++j) gens.at(g, j) = U.at(i, j);
                         for (std::size_t t = 0; t < comp.size(); ++t) {
                             std::size_t slot =
                                 static_cast<std::size_t>(i) * comp.size() + t;
                             gens.at(g, comp[t]) = R.add(
                                 gens.at(g, comp[t]),
                                 R.mul_pow_p(elems[c.hom[slot]], 1));
                         }
                     }
                     for (int i = 0; i < W.rows; ++i, ++g)
                         for (int j = 0; j < 4; ++j)
                             gens.at(g, j) = R.mul_pow_p(W.at(i, j), 1);
                     for (int i = 0; i < 4 && g < 8; ++i, ++g)
                         gens.at(g, i) = R.mul_pow_p(R.one(), 2);
                     PLattice A = PLattice::make(ctx, std::move(gens), -1);
                     if (is_dieudonne(iso, A))
                         found[static_cast<std::size_t>(ci)].push_back(std::move(A));
                 });

    std::vector<PLattice> out;
    for (auto& v : found)
        for (PLattice& A : v) out.push_back(std::move(A));
    std::sort(out.begin(), out.end(),
              [](const PLattice& a, const PLattice& b) { return a.key() < b.key(); });
    // the (U, W, hom) parametrization is injective, so keys must be distinct
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i - 1] == out[i])
            throw inconsistency_error("band enumeration produced a duplicate");
    return out;
}

}  // namespace gl4
