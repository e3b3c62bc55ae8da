// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion instantiates a structural identity exactly (integer
// snapping) or within the stated residual bound, inside its runtime budget.
#include "periods/cache.hpp"
#include "periods/lparam.hpp"
#include "periods/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

using namespace periods;

namespace {

const ExtensionContext& ctx3() {
    static ExtensionContext ctx(3, 1);
    return ctx;
}

WeilModel model_for(int n, int dv, int chi_pick = 0) {
    const auto& ctx = ctx3();
    auto chi_v = ctx.character_family(dv % 2).at(chi_pick);
    auto chi_w = ctx.character_family(0).at(chi_pick);
    return build_weil_model(ctx, n, build_space(ctx, 1, dv), chi_v, chi_w);
}

struct Criterion {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

// --- AC1: exhaustive homomorphism and dual-pair commutation checks ---------

Criterion ac1() {
    Criterion c;
    const auto& ctx = ctx3();
    double max_dev = 0;
    for (int dv : {1, 2}) {
        auto model = model_for(1, dv);
        auto ps = enumerate_p_elements(ctx, 1);
        auto uv = enumerate_unitary_group(build_space(ctx, 1, dv));
        for (auto& p1 : ps)
            for (auto& p2 : ps) {
                PElement prod = p_mul(ctx, p1, p2);
                for (long long t = 0; t < model.dim; ++t) {
                    auto [tb, sb] = model.act_p(p2, t);
                    auto [ta, sa] = model.act_p(p1, tb);
                    auto [tc, sc] = model.act_p(prod, t);
                    if (ta != tc) return c.require(false, "P(X) index mismatch"), c;
                    max_dev = std::max(max_dev, std::abs(sa * sb - sc));
                }
            }
        for (auto& h1 : uv.elems)
            for (auto& h2 : uv.elems) {
                EMatrix prod = emat_mul(ctx, h1, h2);
                for (long long t = 0; t < model.dim; ++t) {
                    auto [tb, sb] = model.act_uv(h2, t);
                    auto [ta, sa] = model.act_uv(h1, tb);
                    auto [tc, sc] = model.act_uv(prod, t);
                    if (ta != tc) return c.require(false, "U(V) index mismatch"), c;
                    max_dev = std::max(max_dev, std::abs(sa * sb - sc));
                }
            }
        for (auto& h : uv.elems)
            for (auto& p : ps)
                for (long long t = 0; t < model.dim; ++t) {
                    auto [tp, sp] = model.act_p(p, t);
                    auto [tph, sph] = model.act_uv(h, tp);
                    auto [th, sh] = model.act_uv(h, t);
                    auto [thp, shp] = model.act_p(p, th);
                    if (tph != thp) return c.require(false, "commutation index mismatch"), c;
                    max_dev = std::max(max_dev, std::abs(sp * sph - sh * shp));
                }
    }
    c.require(max_dev < 1e-9, "residual " + std::to_string(max_dev));
    std::ostringstream os;
    os << "max residual " << std::scientific << max_dev;
    if (c.detail.empty()) c.detail = os.str();
    return c;
}

// --- AC2: twisted Jacquet module vs induced module, all norm-one twists ----

Criterion ac2() {
    Criterion c;
    const auto& ctx = ctx3();
    EMatrix B(1, 1);
    B.at(0, 0) = 1;
    for (int dv : {1, 2}) {
        auto model = model_for(1, dv);
        auto rep = verify_jacquet_isomorphism(model, B);
        c.require(rep.pass(), "classwise equality failed at dim V=" + std::to_string(dv));

        // norm-one character sweep: for each of the q+1 characters mu, the
        // mu-isotypic contraction over U(B) matches the module induced to
        // U(V) from the stabilizer pair with the transported character
        auto uv = enumerate_unitary_group(build_space(ctx, 1, dv));
        auto ubm = MatrixGroupModel::from_elements(ctx, 1, unitary_of_form(ctx, B));
        auto jac = jacquet_character(model, B, ubm.elems, uv);
        auto emb = find_embedding(ctx, B, model.V);
        if (!emb) {
            c.require(false, "no embedding at dim V=" + std::to_string(dv));
            continue;
        }
        EMatrix T = emb->map, C = emb->complement;
        EMatrix Bc = emat_conj(ctx, B);
        EMatrix L = emat_mul(ctx, *emat_inverse(ctx, Bc),
                             emat_mul(ctx, emat_conj_transpose(ctx, T), model.V.gram));
        EMatrix CdG = emat_mul(ctx, emat_conj_transpose(ctx, C), model.V.gram);
        EMatrix gram_comp = emat_mul(ctx, CdG, C);
        EMatrix Lp = C.cols > 0 ? emat_mul(ctx, *emat_inverse(ctx, gram_comp), CdG)
                                : EMatrix(0, model.V.dim);
        auto Ms = unitary_of_form(ctx, Bc);
        auto Mps = unitary_of_form(ctx, gram_comp);

        const MatrixGroupModel* uvp = &uv;
        FiniteGroupModel guv =
            build_group(uv.size(), [uvp](int a, int b) { return uvp->mul(a, b); });
        std::vector<int> ub_dets(ubm.size());
        for (int u = 0; u < ubm.size(); ++u) ub_dets[u] = emat_det(ctx, ubm.elems[u]);

        for (auto& mu : ctx.e1_characters()) {
            auto lhs = class_function(guv, [&](int h) {
                cplx total = 0;
                for (int u = 0; u < ubm.size(); ++u)
                    total += jac[u][h] * std::conj(ctx.char_value(mu, ub_dets[u]));
                return total / (double)ubm.size();
            });
            std::vector<int> h_elems;
            std::unordered_map<int, cplx> h_vals;
            MultiplicativeCharacter xi{
                MultiplicativeCharacter::Domain::EUnits,
                model.chi_v.exponent * (ctx.q - 1) + model.chi_w.exponent +
                    mu.exponent * (ctx.q - 1)};
            for (auto& M : Ms) {
                cplx v1 = ctx.eval_via_i_inverse(xi, emat_det(ctx, M));
                for (auto& Mp : Mps) {
                    EMatrix g = emat_mul(ctx, T, emat_mul(ctx, M, L));
                    if (C.cols > 0)
                        g = emat_add(ctx, g, emat_mul(ctx, C, emat_mul(ctx, Mp, Lp)));
                    int idx = uv.find(g);
                    if (idx < 0) return c.require(false, "stabilizer element missing"), c;
                    h_elems.push_back(idx);
                    h_vals[idx] =
                        v1 * ctx.eval_via_i_inverse(model.chi_w, emat_det(ctx, Mp));
                }
            }
            auto rhs = induced_character(guv, h_elems, [&](int g) { return h_vals.at(g); });
            double worst = 0;
            for (int cl = 0; cl < guv.num_classes; ++cl)
                worst = std::max(worst, std::abs(lhs.values[cl] - rhs.values[cl]));
            c.require(worst < 1e-6, "mu-contraction residual " + std::to_string(worst));
        }
    }
    // the zero-module case: empty fixed-point locus forces vanishing
    auto zero = verify_jacquet_isomorphism(model_for(2, 1), emat_identity(2));
    c.require(zero.pass(), "vanishing case failed");
    if (c.detail.empty()) c.detail = "dims 4 and 24, 4 norm-one twists each, zero case";
    return c;
}

// --- AC3: Hom-dimension transfer across the dual pair ----------------------

Criterion ac3() {
    Criterion c;
    EMatrix B(1, 1);
    B.at(0, 0) = 1;
    for (int dv : {1, 2}) {
        auto rep = verify_period_transfer(model_for(1, dv), B);
        c.require(rep.pass(), "transfer failed at dim V=" + std::to_string(dv));
    }
    if (c.detail.empty())
        c.detail = "16-cell grid at dim V=1 and the full irreducible sweep at dim V=2";
    return c;
}

// --- AC4: principal series filtration and orbit stratification -------------

Criterion ac4() {
    Criterion c;
    const auto& ctx = ctx3();
    for (long long e = 0; e < ctx.qq - 1; ++e) {
        MultiplicativeCharacter chi{MultiplicativeCharacter::Domain::EUnits, e};
        auto rep = verify_linear_filtration(ctx, 1, chi);
        c.require(rep.pass(), "rank-1 filtration failed at exponent " + std::to_string(e));
    }
    MultiplicativeCharacter triv{MultiplicativeCharacter::Domain::EUnits, 0};
    c.require(verify_linear_filtration(ctx, 2, triv).pass(), "rank-2 identity failed");
    c.require(verify_rank_stratification(ctx, 2).pass(), "rank-2 stratification failed");
    if (c.detail.empty()) c.detail = "12 = 4 + 8 for all 8 characters; census 1+20+60 = 81";
    return c;
}

// --- AC5: randomized multiplicity-formula consistency suite ----------------

Criterion ac5() {
    Criterion c;
    std::mt19937_64 rng(20260823);
    auto uniform = [&](int lo, int hi) { return lo + (int)(rng() % (uint64_t)(hi - lo + 1)); };
    int shapes = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int ni = uniform(0, 4), nj = uniform(0, 4);
        if (ni == 0 && nj == 0) ni = 1;
        DiscreteParameter phi;
        for (int i = 0; i < ni; ++i)
            phi.summands.push_back({"a" + std::to_string(i), 2 * uniform(1, 3),
                                    ParameterSummand::Kind::Sympl, ""});
        for (int j = 0; j < nj; ++j) {
            std::string b = "b" + std::to_string(j);
            int d = uniform(1, 3);
            phi.summands.push_back({b, d, ParameterSummand::Kind::PairFirst, b + "*"});
            phi.summands.push_back({b + "*", d, ParameterSummand::Kind::PairSecond, b});
        }
        size_t nb = phi.summands.size();
        EtaCharacter eta;
        EpsilonData eps;
        for (size_t i = 0; i < nb; ++i) {
            eta.signs.push_back(rng() & 1 ? -1 : 1);
            eps.signs.push_back(rng() & 1 ? -1 : 1);
        }
        long long lin = mult_linear_glE(phi, eta).value;
        long long sp = mult_shalika(phi, eta, +1).value;
        long long sm = mult_shalika(phi, eta, -1).value;
        c.require(lin == sp + sm, "linear != Shalika sum at trial " + std::to_string(trial));
        try {
            mult_fj_even(phi, eta, eps, +1);
            mult_fj_even(phi, eta, eps, -1);
        } catch (const std::exception&) {
            c.require(false, "transfer composition mismatch at trial " + std::to_string(trial));
        }
        auto sg = component_group(phi);
        if (sp + sm > 0) c.require(eta.eval(sg.z()) == 1, "support constraint violated");
        long long trivial = 0;
        for (uint32_t code = 0; code < (1u << nb); ++code) {
            EtaCharacter probe;
            for (size_t i = 0; i < nb; ++i) probe.signs.push_back((code >> i) & 1 ? -1 : 1);
            if (probe.trivial_on(sg.delta_generators())) ++trivial;
        }
        c.require(trivial == (1LL << nj), "diagonal-trivial count != 2^|J|");
        ++shapes;
        if (!c.pass) break;
    }
    if (c.detail.empty())
        c.detail = std::to_string(shapes) + " shapes, 4 identities each";
    return c;
}

// --- AC6: character-engine validation --------------------------------------

Criterion ac6() {
    Criterion c;
    const auto& ctx = ctx3();
    // two independent enumeration strategies for the small isometry groups
    auto u1 = enumerate_unitary_group(build_space(ctx, 1, 1), 1000000,
                                      EnumerationStrategy::BruteForce);
    c.require(u1.size() == 4 && unitary_group_order(3, 1) == 4 &&
                  (long long)ctx.e1_elements.size() == 4,
              "U(1) order disagreement");
    auto u2_brute = enumerate_unitary_group(build_space(ctx, 1, 2), 1000000,
                                            EnumerationStrategy::BruteForce);
    auto u2_closure = enumerate_unitary_group(split_skew_space(ctx, 1), 1000000,
                                              EnumerationStrategy::CayleyClosure);
    c.require(u2_brute.size() == 96 && u2_closure.size() == 96,
              "order-96 group enumeration disagreement");

    for (const MatrixGroupModel* gm : {&u1, &u2_brute, &u2_closure}) {
        FiniteGroupModel g =
            build_group(gm->size(), [gm](int a, int b) { return gm->mul(a, b); });
        CharacterTable table = character_table(g);
        c.require(table.orthogonality_residual < 1e-8,
                  "orthogonality residual " + std::to_string(table.orthogonality_residual));
        long long sum = 0;
        for (long long d : table.degrees) sum += d * d;
        c.require(sum == g.order, "degree-square sum mismatch");
        // Frobenius reciprocity spot-check against a cyclic subgroup
        std::vector<int> h_elems;
        int x = 1 % g.order, cur = x;
        h_elems.push_back(g.identity);
        while (cur != g.identity) {
            h_elems.push_back(cur);
            cur = g.mul(cur, x);
        }
        std::sort(h_elems.begin(), h_elems.end());
        auto triv = [](int) { return cplx(1, 0); };
        auto ind = induced_character(g, h_elems, triv);
        for (size_t i = 0; i < table.irreducibles.size(); i += 3) {
            const auto& pi = table.irreducibles[i];
            long long lhs = hom_dim(ind, pi);
            cplx res = 0;
            for (int h : h_elems) res += pi.at_element(h);
            long long rhs = snap_integer(res / (double)h_elems.size());
            c.require(lhs == rhs, "Frobenius reciprocity mismatch");
        }
    }
    if (c.detail.empty())
        c.detail = "orders 4 and 96 by two strategies; tables orthonormal, degrees exact";
    return c;
}

// --- AC7: byte-identical reruns --------------------------------------------

std::string full_suite_fingerprint() {
    const ExtensionContext ctx(3, 1); // fresh context each run
    std::string out;
    EMatrix B(1, 1);
    B.at(0, 0) = 1;
    for (int dv : {1, 2}) {
        auto chi_v = ctx.character_family(dv % 2).at(0);
        auto chi_w = ctx.character_family(0).at(0);
        auto model = build_weil_model(ctx, 1, build_space(ctx, 1, dv), chi_v, chi_w);
        out += verify_jacquet_isomorphism(model, B).to_json();
        out += verify_period_transfer(model, B).to_json();
    }
    out += verify_rank_stratification(ctx, 2).to_json();
    MultiplicativeCharacter triv{MultiplicativeCharacter::Domain::EUnits, 0};
    out += verify_linear_filtration(ctx, 1, triv).to_json();
    out += verify_linear_filtration(ctx, 2, triv).to_json();

    DiscreteParameter phi;
    phi.summands.push_back({"a1", 2, ParameterSummand::Kind::Sympl, ""});
    phi.summands.push_back({"b1", 1, ParameterSummand::Kind::PairFirst, "b1*"});
    phi.summands.push_back({"b1*", 1, ParameterSummand::Kind::PairSecond, "b1"});
    auto census = packet_census(phi, EpsilonData{{1, -1, 1}});
    out += census.to_json();
    out += census.to_csv();
    return out;
}

Criterion ac7() {
    Criterion c;
    std::string first = full_suite_fingerprint();
    std::string second = full_suite_fingerprint();
    c.require(first == second, "rerun output differs");
    if (c.detail.empty())
        c.detail = "two fresh runs, " + std::to_string(first.size()) + " bytes each";
    return c;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        const char* statement;
        std::function<Criterion()> run;
        double budget_seconds;
    };
    const Entry entries[] = {
        {"AC1", "Weil-model well-formedness (exhaustive, residual < 1e-9)", ac1, 10},
        {"AC2", "twisted Jacquet module = induced module, all norm-one twists", ac2, 30},
        {"AC3", "Hom-dimension transfer for every irreducible and twist", ac3, 60},
        {"AC4", "principal series filtration and orbit stratification", ac4, 120},
        {"AC5", "multiplicity-formula consistency, 1000 seeded shapes", ac5, 5},
        {"AC6", "character-engine validation on every enumerated group", ac6, 600},
        {"AC7", "byte-identical reruns of the full suite", ac7, 600},
    };
    bool all = true;
    for (auto& e : entries) {
        auto start = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = e.run();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        if (secs > e.budget_seconds) {
            c.pass = false;
            c.detail += (c.detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        std::printf("%s: %s  [%.2fs]  %s — %s\n", e.name, c.pass ? "PASS" : "FAIL", secs,
                    e.statement, c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("ACCEPTANCE: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
