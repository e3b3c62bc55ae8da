#include "periods/hermitian.hpp"

#include <algorithm>
#include <stdexcept>

namespace periods {

// ---------------------------------------------------------------------------
// matrix arithmetic
// ---------------------------------------------------------------------------

EMatrix emat_identity(int n) {
    EMatrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

EMatrix emat_mul(const ExtensionContext& ctx, const EMatrix& A, const EMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("emat_mul: shape mismatch");
    EMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            int aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = ctx.add(C.at(i, j), ctx.mul(aik, B.at(k, j)));
        }
    return C;
}

EMatrix emat_add(const ExtensionContext& ctx, const EMatrix& A, const EMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("emat_add: shape mismatch");
    EMatrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ctx.add(A.a[i], B.a[i]);
    return C;
}

EMatrix emat_neg(const ExtensionContext& ctx, const EMatrix& A) {
    EMatrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ctx.neg(A.a[i]);
    return C;
}

EMatrix emat_scale(const ExtensionContext& ctx, int e, const EMatrix& A) {
    EMatrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ctx.mul(e, A.a[i]);
    return C;
}

EMatrix emat_conj(const ExtensionContext& ctx, const EMatrix& A) {
    EMatrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ctx.conj(A.a[i]);
    return C;
}

EMatrix emat_transpose(const EMatrix& A) {
    EMatrix C(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

EMatrix emat_conj_transpose(const ExtensionContext& ctx, const EMatrix& A) {
    return emat_transpose(emat_conj(ctx, A));
}

int emat_trace(const ExtensionContext& ctx, const EMatrix& A) {
    int t = 0;
    for (int i = 0; i < std::min(A.rows, A.cols); ++i) t = ctx.add(t, A.at(i, i));
    return t;
}

namespace {

// Row-reduce [A | R] in place; returns (rank, det accumulated over pivots).
// R may be empty (0 columns).
struct Reduction {
    EMatrix A, R;
    int rank = 0;
    int det = 1; // meaningful only for square A with full rank
};

Reduction row_reduce(const ExtensionContext& ctx, EMatrix A, EMatrix R) {
    Reduction red;
    int m = A.rows, n = A.cols;
    int row = 0, det = 1;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = -1;
        for (int r = row; r < m; ++r)
            if (A.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(row, j));
            for (int j = 0; j < R.cols; ++j) std::swap(R.at(piv, j), R.at(row, j));
            det = ctx.neg(det);
        }
        int pv = A.at(row, col);
        det = ctx.mul(det, pv);
        int pvinv = ctx.inv(pv);
        for (int j = 0; j < n; ++j) A.at(row, j) = ctx.mul(pvinv, A.at(row, j));
        for (int j = 0; j < R.cols; ++j) R.at(row, j) = ctx.mul(pvinv, R.at(row, j));
        for (int r = 0; r < m; ++r) {
            if (r == row || A.at(r, col) == 0) continue;
            int fac = A.at(r, col);
            for (int j = 0; j < n; ++j)
                A.at(r, j) = ctx.sub(A.at(r, j), ctx.mul(fac, A.at(row, j)));
            for (int j = 0; j < R.cols; ++j)
                R.at(r, j) = ctx.sub(R.at(r, j), ctx.mul(fac, R.at(row, j)));
        }
        ++row;
    }
    red.A = std::move(A);
    red.R = std::move(R);
    red.rank = row;
    red.det = det;
    return red;
}

} // namespace

int emat_det(const ExtensionContext& ctx, const EMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("emat_det: not square");
    auto red = row_reduce(ctx, A, EMatrix(A.rows, 0));
    return red.rank == A.rows ? red.det : 0;
}

std::optional<EMatrix> emat_inverse(const ExtensionContext& ctx, const EMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("emat_inverse: not square");
    auto red = row_reduce(ctx, A, emat_identity(A.rows));
    if (red.rank != A.rows) return std::nullopt;
    return red.R;
}

int emat_rank(const ExtensionContext& ctx, const EMatrix& A) {
    return row_reduce(ctx, A, EMatrix(A.rows, 0)).rank;
}

EMatrix emat_nullspace(const ExtensionContext& ctx, const EMatrix& A) {
    auto red = row_reduce(ctx, A, EMatrix(A.rows, 0));
    const EMatrix& E = red.A;
    int n = A.cols;
    // identify pivot columns
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(n, false);
    {
        int r = 0;
        for (int c = 0; c < n && r < red.rank; ++c) {
            if (E.at(r, c) == 1) {
                bool clean = true;
                for (int rr = 0; rr < A.rows; ++rr)
                    if (rr != r && E.at(rr, c) != 0) clean = false;
                if (clean) {
                    pivot_col.push_back(c);
                    is_pivot[c] = true;
                    ++r;
                }
            }
        }
    }
    EMatrix N(n, n - red.rank);
    int k = 0;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        N.at(c, k) = 1;
        for (int r = 0; r < (int)pivot_col.size(); ++r)
            N.at(pivot_col[r], k) = ctx.neg(E.at(r, c));
        ++k;
    }
    return N;
}

bool is_eps_hermitian(const ExtensionContext& ctx, const EMatrix& A, int eps) {
    if (A.rows != A.cols) return false;
    EMatrix H = emat_conj_transpose(ctx, A);
    EMatrix target = eps == 1 ? A : emat_neg(ctx, A);
    return H == target;
}

// ---------------------------------------------------------------------------
// spaces
// ---------------------------------------------------------------------------

EpsHermitianSpace build_space(const ExtensionContext& ctx, int eps, int dim, int disc_choice) {
    if (dim < 0) throw std::invalid_argument("build_space: negative dimension");
    EpsHermitianSpace sp;
    sp.ctx = &ctx;
    sp.eps = eps;
    sp.dim = dim;
    sp.gram = EMatrix(dim, dim);
    for (int i = 0; i < dim; ++i) sp.gram.at(i, i) = eps == 1 ? 1 : ctx.delta;
    // disc(V) = (-1)^{n(n-1)/2} * det(V); the p-adic-style sign is recorded in
    // the label only -- over the finite field a single isometry class remains.
    int det = emat_det(ctx, sp.gram);
    int sign_pow = (dim * (dim - 1) / 2) % 2;
    int disc = sign_pow ? ctx.neg(det) : det;
    std::string sign = "n/a";
    if (dim > 0) {
        int d = disc;
        if (eps == -1) {
            // divide out delta^dim
            d = ctx.mul(disc, ctx.inv(ctx.pow(ctx.delta, dim)));
        }
        if (ctx.in_F(d) && d != 0) sign = ctx.omega(d) == 1 ? "+" : "-";
    }
    sp.label = std::string(eps == 1 ? "hermitian" : "skew-hermitian") + " dim=" +
               std::to_string(dim) + " sign=" + sign + " disc_choice=" + std::to_string(disc_choice);
    return sp;
}

EpsHermitianSpace split_skew_space(const ExtensionContext& ctx, int n) {
    EpsHermitianSpace sp;
    sp.ctx = &ctx;
    sp.eps = -1;
    sp.dim = 2 * n;
    sp.gram = EMatrix(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        sp.gram.at(i, n + i) = 1;
        sp.gram.at(n + i, i) = ctx.neg(1);
    }
    sp.label = "split skew-hermitian dim=" + std::to_string(2 * n);
    return sp;
}

int form_value(const EpsHermitianSpace& sp, const std::vector<int>& u, const std::vector<int>& v) {
    const ExtensionContext& ctx = *sp.ctx;
    int s = 0;
    for (int i = 0; i < sp.dim; ++i) {
        if (u[i] == 0) continue;
        int ui = ctx.conj(u[i]);
        for (int j = 0; j < sp.dim; ++j)
            s = ctx.add(s, ctx.mul(ui, ctx.mul(sp.gram.at(i, j), v[j])));
    }
    return s;
}

WittDecomposition witt_decompose(const EpsHermitianSpace& sp) {
    const ExtensionContext& ctx = *sp.ctx;
    WittDecomposition wd;
    wd.space = sp;

    // current sub-basis, as ambient coordinate columns
    std::vector<std::vector<int>> basis;
    for (int i = 0; i < sp.dim; ++i) {
        std::vector<int> e(sp.dim, 0);
        e[i] = 1;
        basis.push_back(e);
    }

    auto combo = [&](const std::vector<std::vector<int>>& bs, const std::vector<int>& c) {
        std::vector<int> v(sp.dim, 0);
        for (size_t k = 0; k < bs.size(); ++k)
            for (int i = 0; i < sp.dim; ++i) v[i] = ctx.add(v[i], ctx.mul(c[k], bs[k][i]));
        return v;
    };

    while ((int)basis.size() >= 2) {
        int d = (int)basis.size();
        long long total = 1;
        for (int i = 0; i < d; ++i) total *= ctx.qq;
        if (total > 10000000LL) throw std::runtime_error("witt_decompose: search space too large");
        // least isotropic vector in code order
        std::vector<int> iso;
        for (long long code = 1; code < total; ++code) {
            std::vector<int> c(d);
            long long t = code;
            for (int i = 0; i < d; ++i) c[i] = (int)(t % ctx.qq), t /= ctx.qq;
            auto v = combo(basis, c);
            if (form_value(sp, v, v) == 0) {
                iso = v;
                break;
            }
        }
        if (iso.empty()) break; // anisotropic

        // partner with <iso, w> != 0 (exists by nondegeneracy)
        std::vector<int> w;
        for (auto& b : basis)
            if (form_value(sp, iso, b) != 0) {
                w = b;
                break;
            }
        if (w.empty()) throw std::logic_error("witt_decompose: degenerate restriction");
        // normalize <x, y> = 1 and <y, y> = 0
        int s = ctx.inv(form_value(sp, iso, w));
        for (auto& x : w) x = ctx.mul(x, s);
        int t = form_value(sp, w, w); // satisfies conj(t) = eps*t
        // y = w - c*iso with conj(c) + eps*c = t, solved by c = eps*(t/2)
        int c = ctx.mul(ctx.half, t);
        if (sp.eps == -1) c = ctx.neg(c);
        std::vector<int> y(sp.dim);
        for (int i = 0; i < sp.dim; ++i) y[i] = ctx.sub(w[i], ctx.mul(c, iso[i]));
        if (form_value(sp, y, y) != 0 || form_value(sp, iso, y) != 1)
            throw std::logic_error("witt_decompose: hyperbolic pair normalization failed");

        wd.x_basis.push_back(iso);
        wd.y_basis.push_back(y);

        // orthogonal complement of span(x, y) inside the current span
        EMatrix M(2, d);
        for (int k = 0; k < d; ++k) {
            M.at(0, k) = form_value(sp, iso, basis[k]);
            M.at(1, k) = form_value(sp, y, basis[k]);
        }
        EMatrix N = emat_nullspace(ctx, M);
        std::vector<std::vector<int>> next;
        for (int col = 0; col < N.cols; ++col) {
            std::vector<int> c2(d);
            for (int k = 0; k < d; ++k) c2[k] = N.at(k, col);
            next.push_back(combo(basis, c2));
        }
        basis = next;
    }
    wd.aniso_basis = basis;
    return wd;
}

long long unitary_group_order(long long q, int n) {
    long long order = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) order *= q;
    long long qi = 1;
    for (int i = 1; i <= n; ++i) {
        qi *= q;
        order *= qi - (i % 2 == 1 ? -1 : 1);
    }
    return order;
}

// ---------------------------------------------------------------------------
// MatrixIndex / MatrixGroupModel
// ---------------------------------------------------------------------------

void MatrixIndex::reserve_format(int entries, long long field_size) {
    int bits = 1;
    while ((1LL << bits) < field_size) ++bits;
    if (entries * bits <= 64) {
        packed_ = true;
        shift_ = bits;
    }
}

uint64_t MatrixIndex::pack(const EMatrix& m) const {
    uint64_t code = 0;
    for (size_t i = 0; i < m.a.size(); ++i) code |= (uint64_t)m.a[i] << (shift_ * i);
    return code;
}

void MatrixIndex::insert(const EMatrix& m, int idx) {
    if (packed_)
        packed_map_.emplace(pack(m), idx);
    else
        generic_map_.emplace(m.a, idx);
}

int MatrixIndex::find(const EMatrix& m) const {
    if (packed_) {
        auto it = packed_map_.find(pack(m));
        return it == packed_map_.end() ? -1 : it->second;
    }
    auto it = generic_map_.find(m.a);
    return it == generic_map_.end() ? -1 : it->second;
}

MatrixGroupModel MatrixGroupModel::from_elements(const ExtensionContext& ctx, int dim,
                                                 std::vector<EMatrix> elems) {
    MatrixGroupModel g;
    g.ctx = &ctx;
    g.dim = dim;
    std::sort(elems.begin(), elems.end(),
              [](const EMatrix& x, const EMatrix& y) { return x.a < y.a; });
    g.elems = std::move(elems);
    g.index.reserve_format(dim * dim, ctx.qq);
    for (int i = 0; i < (int)g.elems.size(); ++i) g.index.insert(g.elems[i], i);
    g.identity_index = g.index.find(emat_identity(dim));
    if (g.identity_index < 0) throw std::logic_error("MatrixGroupModel: identity missing");
    g.inv_idx.resize(g.elems.size());
    for (int i = 0; i < (int)g.elems.size(); ++i) {
        auto inv = emat_inverse(ctx, g.elems[i]);
        if (!inv) throw std::logic_error("MatrixGroupModel: singular element");
        int j = g.index.find(*inv);
        if (j < 0) throw std::logic_error("MatrixGroupModel: not closed under inverse");
        g.inv_idx[i] = j;
    }
    return g;
}

int MatrixGroupModel::mul(int i, int j) const {
    int k = index.find(emat_mul(*ctx, elems[i], elems[j]));
    if (k < 0) throw std::logic_error("MatrixGroupModel: not closed under product");
    return k;
}

namespace {

std::vector<EMatrix> all_matrices_filtered(const ExtensionContext& ctx, int n,
                                           const std::function<bool(const EMatrix&)>& keep) {
    long long total = 1;
    for (int i = 0; i < n * n; ++i) {
        total *= ctx.qq;
        if (total > 10000000LL)
            throw std::runtime_error("matrix enumeration: search space exceeds 10^7");
    }
    std::vector<EMatrix> out;
    EMatrix m(n, n);
    for (long long code = 0; code < total; ++code) {
        long long t = code;
        for (int i = 0; i < n * n; ++i) m.a[i] = (int)(t % ctx.qq), t /= ctx.qq;
        if (keep(m)) out.push_back(m);
    }
    return out;
}

std::vector<EMatrix> closure_from_generators(const ExtensionContext& ctx,
                                             std::vector<EMatrix> gens, int dim,
                                             long long bound) {
    MatrixIndex seen;
    seen.reserve_format(dim * dim, ctx.qq);
    std::vector<EMatrix> elems;
    auto push = [&](const EMatrix& m) {
        if (seen.find(m) < 0) {
            seen.insert(m, (int)elems.size());
            elems.push_back(m);
            return true;
        }
        return false;
    };
    push(emat_identity(dim));
    for (auto& g : gens) push(g);
    size_t frontier = 0;
    while (frontier < elems.size()) {
        EMatrix cur = elems[frontier++];
        for (auto& g : gens) {
            EMatrix prod = emat_mul(ctx, cur, g);
            push(prod);
            if ((long long)elems.size() > bound)
                throw std::runtime_error("closure enumeration: bound exceeded");
        }
    }
    return elems;
}

} // namespace

MatrixGroupModel enumerate_unitary_group(const EpsHermitianSpace& space, long long bound,
                                         EnumerationStrategy strategy) {
    const ExtensionContext& ctx = *space.ctx;
    int n = space.dim;
    if (n == 0) {
        return MatrixGroupModel::from_elements(ctx, 0, {EMatrix(0, 0)});
    }
    long long brute_total = 1;
    bool brute_ok = true;
    for (int i = 0; i < n * n; ++i) {
        brute_total *= ctx.qq;
        if (brute_total > 10000000LL) {
            brute_ok = false;
            break;
        }
    }
    if (strategy == EnumerationStrategy::Auto)
        strategy = brute_ok ? EnumerationStrategy::BruteForce : EnumerationStrategy::CayleyClosure;

    std::vector<EMatrix> elems;
    if (strategy == EnumerationStrategy::BruteForce) {
        elems = all_matrices_filtered(ctx, n, [&](const EMatrix& g) {
            if (emat_det(ctx, g) == 0) return false;
            EMatrix lhs =
                emat_mul(ctx, emat_conj_transpose(ctx, g), emat_mul(ctx, space.gram, g));
            return lhs == space.gram;
        });
    } else {
        // Cayley closure; requires the split skew space in its Witt basis
        if (space.eps != -1 || n % 2 != 0)
            throw std::invalid_argument("closure enumeration requires a split skew space");
        int half_n = n / 2;
        if (split_skew_space(ctx, half_n).gram != space.gram)
            throw std::invalid_argument("closure enumeration requires the Witt-basis Gram");
        std::vector<EMatrix> gens;
        // Levi generators: diag(gen, 1, ..), cyclic permutation, transvection
        {
            EMatrix m = emat_identity(half_n);
            m.at(0, 0) = ctx.gen;
            gens.push_back(embed_levi(ctx, m));
            if (half_n > 1) {
                EMatrix perm(half_n, half_n);
                for (int i = 0; i < half_n; ++i) perm.at(i, (i + 1) % half_n) = 1;
                gens.push_back(embed_levi(ctx, perm));
                EMatrix tv = emat_identity(half_n);
                tv.at(0, 1) = 1;
                gens.push_back(embed_levi(ctx, tv));
            }
        }
        // N(X) generators
        for (int i = 0; i < half_n; ++i) {
            EMatrix A(half_n, half_n);
            A.at(i, i) = 1;
            gens.push_back(embed_nx(A));
            for (int j = i + 1; j < half_n; ++j) {
                EMatrix S(half_n, half_n);
                S.at(i, j) = 1;
                S.at(j, i) = 1;
                gens.push_back(embed_nx(S));
                EMatrix D(half_n, half_n);
                D.at(i, j) = ctx.delta;
                D.at(j, i) = ctx.conj(ctx.delta);
                gens.push_back(embed_nx(D));
            }
        }
        // Weyl involution swapping X and Y
        {
            EMatrix w(n, n);
            for (int i = 0; i < half_n; ++i) {
                w.at(i, half_n + i) = 1;
                w.at(half_n + i, i) = ctx.neg(1);
            }
            gens.push_back(w);
        }
        elems = closure_from_generators(ctx, gens, n, bound);
        long long expected = unitary_group_order(ctx.q, half_n * 2);
        if ((long long)elems.size() != expected)
            throw std::runtime_error("closure enumeration did not reach the known group order");
    }
    if ((long long)elems.size() > bound)
        throw std::runtime_error("enumerate_unitary_group: bound exceeded");
    return MatrixGroupModel::from_elements(ctx, n, std::move(elems));
}

MatrixGroupModel enumerate_general_linear(const ExtensionContext& ctx, int n) {
    auto elems =
        all_matrices_filtered(ctx, n, [&](const EMatrix& g) { return emat_det(ctx, g) != 0; });
    return MatrixGroupModel::from_elements(ctx, n, std::move(elems));
}

std::vector<EMatrix> hermitian_matrices(const ExtensionContext& ctx, int n) {
    std::vector<EMatrix> out;
    // free entries: n diagonal (in F), n(n-1)/2 strict upper (in E)
    int nfree_diag = n, nfree_up = n * (n - 1) / 2;
    long long total = 1;
    for (int i = 0; i < nfree_diag; ++i) total *= ctx.q;
    for (int i = 0; i < nfree_up; ++i) total *= ctx.qq;
    for (long long code = 0; code < total; ++code) {
        EMatrix A(n, n);
        long long t = code;
        for (int i = 0; i < n; ++i) A.at(i, i) = (int)(t % ctx.q), t /= ctx.q;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int e = (int)(t % ctx.qq);
                t /= ctx.qq;
                A.at(i, j) = e;
                A.at(j, i) = ctx.conj(e);
            }
        out.push_back(A);
    }
    std::sort(out.begin(), out.end(), [](const EMatrix& x, const EMatrix& y) { return x.a < y.a; });
    return out;
}

std::vector<EMatrix> unitary_of_form(const ExtensionContext& ctx, const EMatrix& P) {
    return all_matrices_filtered(ctx, P.rows, [&](const EMatrix& m) {
        if (emat_det(ctx, m) == 0) return false;
        return emat_mul(ctx, emat_conj_transpose(ctx, m), emat_mul(ctx, P, m)) == P;
    });
}

// ---------------------------------------------------------------------------
// Siegel parabolic
// ---------------------------------------------------------------------------

EMatrix embed_levi(const ExtensionContext& ctx, const EMatrix& m) {
    int n = m.rows;
    auto inv = emat_inverse(ctx, emat_conj_transpose(ctx, m));
    if (!inv) throw std::invalid_argument("embed_levi: singular matrix");
    EMatrix g(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.at(i, j) = m.at(i, j);
            g.at(n + i, n + j) = inv->at(i, j);
        }
    return g;
}

EMatrix embed_nx(const EMatrix& A) {
    int n = A.rows;
    EMatrix g = emat_identity(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, n + j) = A.at(i, j);
    return g;
}

EMatrix embed_ny(const EMatrix& B) {
    int n = B.rows;
    EMatrix g = emat_identity(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(n + i, j) = B.at(i, j);
    return g;
}

cplx psi_pair(const ExtensionContext& ctx, const EMatrix& A, const EMatrix& B) {
    int tr = emat_trace(ctx, emat_mul(ctx, A, B));
    if (!ctx.in_F(tr))
        throw std::logic_error("psi_pair: tr(A o B) is not in F -- convention fault");
    return ctx.psi(ctx.base.mul(ctx.half, tr));
}

SiegelData siegel_parabolic(const ExtensionContext& ctx, const MatrixGroupModel& uw, int n) {
    if (n < 1) throw std::invalid_argument("siegel_parabolic: X must be nonempty");
    SiegelData sd;
    sd.n = n;
    sd.group = &uw;
    MatrixGroupModel glx = enumerate_general_linear(ctx, n);
    for (auto& m : glx.elems) {
        int idx = uw.find(embed_levi(ctx, m));
        if (idx < 0) throw std::logic_error("siegel_parabolic: Levi element missing from U(W)");
        sd.gl_matrices.push_back(m);
        sd.gl_elements.push_back(idx);
    }
    for (auto& A : hermitian_matrices(ctx, n)) {
        int idx = uw.find(embed_nx(A));
        if (idx < 0) throw std::logic_error("siegel_parabolic: N(X) element missing from U(W)");
        sd.nx_params.push_back(A);
        sd.nx_elements.push_back(idx);
    }
    for (auto& B : hermitian_matrices(ctx, n)) {
        int idx = uw.find(embed_ny(B));
        if (idx < 0) throw std::logic_error("siegel_parabolic: N(Y) element missing from U(W)");
        sd.ny_params.push_back(B);
        sd.ny_elements.push_back(idx);
    }
    return sd;
}

std::vector<int> shalika_subgroup(const ExtensionContext& ctx, const MatrixGroupModel& uw,
                                  const SiegelData& sd, const EMatrix& B) {
    std::vector<int> out;
    for (auto& u : unitary_of_form(ctx, B)) {
        EMatrix levi = embed_levi(ctx, u);
        for (size_t k = 0; k < sd.nx_params.size(); ++k) {
            int idx = uw.find(emat_mul(ctx, levi, embed_nx(sd.nx_params[k])));
            if (idx < 0) throw std::logic_error("shalika_subgroup: element missing from U(W)");
            out.push_back(idx);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// embeddings
// ---------------------------------------------------------------------------

std::optional<Embedding> find_embedding(const ExtensionContext& ctx, const EMatrix& P,
                                        const EpsHermitianSpace& V) {
    int n = P.rows, dv = V.dim;
    if (n > dv) return std::nullopt;
    EMatrix target = emat_conj(ctx, P); // Gram of the conjugated form
    long long total = 1;
    for (int i = 0; i < n * dv; ++i) {
        total *= ctx.qq;
        if (total > 10000000LL) throw std::runtime_error("find_embedding: search space too large");
    }
    for (long long code = 0; code < total; ++code) {
        EMatrix T(dv, n);
        long long t = code;
        for (int i = 0; i < n * dv; ++i) T.a[i] = (int)(t % ctx.qq), t /= ctx.qq;
        EMatrix G = emat_mul(ctx, emat_conj_transpose(ctx, T), emat_mul(ctx, V.gram, T));
        if (G == target) {
            Embedding emb;
            emb.map = T;
            // complement: nullspace of T^dag G_V (vectors orthogonal to the image)
            emb.complement =
                emat_nullspace(ctx, emat_mul(ctx, emat_conj_transpose(ctx, T), V.gram));
            return emb;
        }
    }
    return std::nullopt;
}

} // namespace periods
