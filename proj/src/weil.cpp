#include "periods/weil.hpp"

#include <stdexcept>

namespace periods {

PElement p_identity(int n) { return {emat_identity(n), EMatrix(n, n)}; }

PElement p_mul(const ExtensionContext& ctx, const PElement& a, const PElement& b) {
    // levi(m1) n(A1) levi(m2) n(A2) = levi(m1 m2) n(m2^{-1} A1 m2^{-dag} + A2)
    auto m2inv = emat_inverse(ctx, b.m);
    if (!m2inv) throw std::invalid_argument("p_mul: singular Levi part");
    EMatrix moved = emat_mul(ctx, *m2inv, emat_mul(ctx, a.A, emat_conj_transpose(ctx, *m2inv)));
    return {emat_mul(ctx, a.m, b.m), emat_add(ctx, moved, b.A)};
}

PElement p_inv(const ExtensionContext& ctx, const PElement& a) {
    auto minv = emat_inverse(ctx, a.m);
    if (!minv) throw std::invalid_argument("p_inv: singular Levi part");
    EMatrix moved = emat_mul(ctx, a.m, emat_mul(ctx, a.A, emat_conj_transpose(ctx, a.m)));
    return {*minv, emat_neg(ctx, moved)};
}

bool p_equal(const PElement& a, const PElement& b) { return a.m == b.m && a.A == b.A; }

std::vector<PElement> enumerate_p_elements(const ExtensionContext& ctx, int n) {
    auto gl = enumerate_general_linear(ctx, n);
    auto herm = hermitian_matrices(ctx, n);
    std::vector<PElement> out;
    out.reserve(gl.elems.size() * herm.size());
    for (auto& m : gl.elems)
        for (auto& A : herm) out.push_back({m, A});
    return out;
}

EMatrix WeilModel::decode(long long code) const {
    EMatrix t(dv, n);
    for (size_t i = 0; i < t.a.size(); ++i) {
        t.a[i] = (int)(code % ctx->qq);
        code /= ctx->qq;
    }
    return t;
}

long long WeilModel::encode(const EMatrix& t) const {
    long long code = 0;
    for (size_t i = t.a.size(); i-- > 0;) code = code * ctx->qq + t.a[i];
    return code;
}

EMatrix WeilModel::pullback_gram(const EMatrix& t) const {
    return emat_mul(*ctx, emat_conj_transpose(*ctx, t), emat_mul(*ctx, V.gram, t));
}

std::pair<long long, cplx> WeilModel::act_uv(const EMatrix& h, long long t) const {
    EMatrix T = decode(t);
    cplx scalar = ctx->eval_via_i_inverse(chi_w, emat_det(*ctx, h));
    return {encode(emat_mul(*ctx, h, T)), scalar};
}

std::pair<long long, cplx> WeilModel::act_gl(const EMatrix& m, long long t) const {
    auto inv = emat_inverse(*ctx, emat_conj(*ctx, m));
    if (!inv) throw std::invalid_argument("act_gl: singular matrix");
    cplx scalar = ctx->char_value(chi_v, emat_det(*ctx, m));
    return {encode(emat_mul(*ctx, decode(t), *inv)), scalar};
}

cplx WeilModel::act_nx_scalar(const EMatrix& A, long long t) const {
    // psi_{T^*(V)}(A), with the pulled-back form transported from X^c to X
    return psi_pair(*ctx, A, emat_conj(*ctx, pullback_gram(decode(t))));
}

std::pair<long long, cplx> WeilModel::act_p(const PElement& p, long long t) const {
    cplx s = act_nx_scalar(p.A, t);
    auto [t2, s2] = act_gl(p.m, t);
    return {t2, s * s2};
}

cplx WeilModel::character(const EMatrix& h, const PElement& p) const {
    auto minv = emat_inverse(*ctx, emat_conj(*ctx, p.m));
    if (!minv) throw std::invalid_argument("character: singular Levi part");
    cplx outer = ctx->eval_via_i_inverse(chi_w, emat_det(*ctx, h)) *
                 ctx->char_value(chi_v, emat_det(*ctx, p.m));
    cplx total = 0;
    for (long long code = 0; code < dim; ++code) {
        EMatrix T = decode(code);
        EMatrix moved = emat_mul(*ctx, h, emat_mul(*ctx, T, *minv));
        if (moved == T)
            total += outer * psi_pair(*ctx, p.A, emat_conj(*ctx, pullback_gram(T)));
    }
    return total;
}

namespace {

void self_test(const WeilModel& model) {
    const ExtensionContext& ctx = *model.ctx;
    int n = model.n;
    auto fail = [](const char* what) {
        throw std::logic_error(std::string("weil model convention self-test failed: ") + what);
    };

    // deterministic samples: keep exhaustive when everything is small
    auto herm = hermitian_matrices(ctx, n);
    if (herm.size() > 16) herm.resize(16);
    std::vector<EMatrix> ms;
    {
        long long total = 1;
        for (int i = 0; i < n * n; ++i) total *= ctx.qq;
        for (long long code = 0; code < total && ms.size() < 8; ++code) {
            EMatrix m(n, n);
            long long t = code;
            for (int i = 0; i < n * n; ++i) m.a[i] = (int)(t % ctx.qq), t /= ctx.qq;
            if (emat_det(ctx, m) != 0) ms.push_back(m);
        }
    }
    std::vector<long long> ts;
    long long stride = model.dim <= 729 ? 1 : model.dim / 64 + 1;
    for (long long code = 0; code < model.dim; code += stride) ts.push_back(code);

    // (a) the n(A) scalars define a character of N(X)
    for (auto& A : herm)
        for (auto& A2 : herm)
            for (long long t : ts) {
                cplx lhs = model.act_nx_scalar(emat_add(ctx, A, A2), t);
                cplx rhs = model.act_nx_scalar(A, t) * model.act_nx_scalar(A2, t);
                if (std::abs(lhs - rhs) > kSnapTolIntermediate) fail("n(A) additivity");
            }

    // (b) semidirect relation: gl(m) nx(A) = nx(m A m^dag) gl(m)
    for (auto& m : ms)
        for (auto& A : herm)
            for (long long t : ts) {
                auto [t2, s2] = model.act_gl(m, t);
                cplx lhs = model.act_nx_scalar(A, t) * s2;
                EMatrix conjA =
                    emat_mul(ctx, m, emat_mul(ctx, A, emat_conj_transpose(ctx, m)));
                cplx rhs = s2 * model.act_nx_scalar(conjA, t2);
                if (std::abs(lhs - rhs) > kSnapTolIntermediate) fail("GL-N semidirect relation");
            }

    // (c) homomorphism property of the joint P(X) action on samples
    for (auto& m : ms)
        for (auto& A : herm) {
            PElement p1{m, A};
            for (auto& m2 : ms)
                for (auto& A2 : herm) {
                    PElement p2{m2, A2};
                    PElement prod = p_mul(ctx, p1, p2);
                    for (long long t : ts) {
                        auto [tb, sb] = model.act_p(p2, t);
                        auto [ta, sa] = model.act_p(p1, tb);
                        auto [tc, sc] = model.act_p(prod, t);
                        if (ta != tc || std::abs(sa * sb - sc) > kSnapTolIntermediate)
                            fail("P(X) homomorphism");
                    }
                }
        }
}

} // namespace

WeilModel build_weil_model(const ExtensionContext& ctx, int n, const EpsHermitianSpace& V,
                           const MultiplicativeCharacter& chi_v,
                           const MultiplicativeCharacter& chi_w) {
    if (V.eps != 1) throw std::invalid_argument("build_weil_model: V must be Hermitian");
    if (chi_v.domain != MultiplicativeCharacter::Domain::EUnits ||
        chi_w.domain != MultiplicativeCharacter::Domain::EUnits)
        throw std::invalid_argument("build_weil_model: splitting characters live on E^x");
    // restriction conditions: chi_V|F = omega^{dim V}, chi_W|F = omega^{dim W},
    // dim W = 2n even
    long long half_step = (ctx.q - 1) / 2;
    if (((chi_v.exponent % (ctx.q - 1)) + (ctx.q - 1)) % (ctx.q - 1) !=
        (V.dim % 2) * half_step)
        throw std::invalid_argument("build_weil_model: chi_V restriction mismatch");
    if (chi_w.exponent % (ctx.q - 1) != 0)
        throw std::invalid_argument("build_weil_model: chi_W restriction mismatch");

    WeilModel model;
    model.ctx = &ctx;
    model.n = n;
    model.dv = V.dim;
    model.V = V;
    model.chi_v = chi_v;
    model.chi_w = chi_w;
    model.dim = 1;
    for (int i = 0; i < n * V.dim; ++i) {
        model.dim *= ctx.qq;
        if (model.dim > 10000000LL)
            throw std::invalid_argument("build_weil_model: model dimension exceeds 10^7");
    }
    self_test(model);
    return model;
}

std::vector<long long> embedding_locus(const WeilModel& model, const EMatrix& B) {
    const ExtensionContext& ctx = *model.ctx;
    EMatrix target = emat_conj(ctx, B); // Gram of B^c
    std::vector<long long> out;
    for (long long code = 0; code < model.dim; ++code)
        if (model.pullback_gram(model.decode(code)) == target) out.push_back(code);
    return out;
}

std::vector<std::vector<cplx>> jacquet_character(const WeilModel& model, const EMatrix& B,
                                                 const std::vector<EMatrix>& ub,
                                                 const MatrixGroupModel& uv) {
    const ExtensionContext& ctx = *model.ctx;
    if (emat_det(ctx, B) == 0)
        throw std::invalid_argument("jacquet_character: B must be nondegenerate");
    auto herm = hermitian_matrices(ctx, model.n);
    std::vector<cplx> psi_b(herm.size());
    for (size_t a = 0; a < herm.size(); ++a) psi_b[a] = psi_pair(ctx, herm[a], B);

    // projector weight of each basis point: the N(X)-average of
    // psi_{T^*(V)} against conj(psi_B); depends only on T
    std::vector<cplx> weight(model.dim);
    for (long long code = 0; code < model.dim; ++code) {
        EMatrix form_on_x = emat_conj(ctx, model.pullback_gram(model.decode(code)));
        cplx n_avg = 0;
        for (size_t a = 0; a < herm.size(); ++a)
            n_avg += psi_pair(ctx, herm[a], form_on_x) * std::conj(psi_b[a]);
        weight[code] = n_avg / (double)herm.size();
    }

    std::vector<std::vector<cplx>> values(ub.size(), std::vector<cplx>(uv.size()));
    for (size_t u = 0; u < ub.size(); ++u) {
        auto uinv = emat_inverse(ctx, emat_conj(ctx, ub[u]));
        cplx u_scalar = ctx.char_value(model.chi_v, emat_det(ctx, ub[u]));
        for (int h = 0; h < uv.size(); ++h) {
            cplx h_scalar = ctx.eval_via_i_inverse(model.chi_w, emat_det(ctx, uv.elems[h]));
            cplx total = 0;
            for (long long code = 0; code < model.dim; ++code) {
                if (std::abs(weight[code]) < 1e-14) continue;
                EMatrix T = model.decode(code);
                EMatrix moved = emat_mul(ctx, uv.elems[h], emat_mul(ctx, T, *uinv));
                if (moved == T) total += u_scalar * h_scalar * weight[code];
            }
            values[u][h] = total;
        }
    }
    return values;
}

} // namespace periods
