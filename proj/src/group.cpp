#include "periods/group.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace periods {

FiniteGroupModel build_group(int order, std::function<int(int, int)> mul) {
    if (order <= 0 || order > 1000000) throw std::invalid_argument("build_group: bad order");
    FiniteGroupModel g;
    g.order = order;
    g.mul = std::move(mul);

    g.identity = -1;
    for (int e = 0; e < order && g.identity < 0; ++e) {
        if (g.mul(e, 0) != 0) continue;
        bool ok = true;
        for (int x = 0; x < order && ok; ++x)
            if (g.mul(e, x) != x || g.mul(x, e) != x) ok = false;
        if (ok) g.identity = e;
    }
    if (g.identity < 0) throw std::invalid_argument("build_group: no identity");

    g.inv.assign(order, -1);
    for (int x = 0; x < order; ++x) {
        for (int y = 0; y < order; ++y)
            if (g.mul(x, y) == g.identity) {
                if (g.mul(y, x) != g.identity)
                    throw std::invalid_argument("build_group: one-sided inverse");
                g.inv[x] = y;
                break;
            }
        if (g.inv[x] < 0) throw std::invalid_argument("build_group: missing inverse");
    }

    g.class_of.assign(order, -1);
    // the identity's class is discovered first only if the identity is element
    // 0; force class 0 = identity class for a stable convention
    std::vector<int> scan_order(order);
    scan_order[0] = g.identity;
    for (int x = 0, k = 1; x < order; ++x)
        if (x != g.identity) scan_order[k++] = x;
    for (int x : scan_order) {
        if (g.class_of[x] >= 0) continue;
        int cid = g.num_classes++;
        g.class_rep.push_back(x);
        std::vector<int> members;
        for (int h = 0; h < order; ++h) {
            int y = g.mul(g.mul(h, x), g.inv[h]);
            if (g.class_of[y] < 0) {
                g.class_of[y] = cid;
                members.push_back(y);
            } else if (g.class_of[y] != cid) {
                throw std::logic_error("build_group: inconsistent conjugation");
            }
        }
        std::sort(members.begin(), members.end());
        g.class_rep[cid] = members.front();
        g.class_size.push_back((long long)members.size());
        g.class_members.push_back(std::move(members));
    }
    long long total = 0;
    for (long long s : g.class_size) {
        if (order % s != 0) throw std::logic_error("build_group: class size does not divide |G|");
        total += s;
    }
    if (total != order) throw std::logic_error("build_group: classes do not partition G");
    return g;
}

FiniteGroupModel product_group(const FiniteGroupModel& A, const FiniteGroupModel& B) {
    auto amul = A.mul;
    auto bmul = B.mul;
    int bo = B.order;
    return build_group(A.order * B.order, [amul, bmul, bo](int x, int y) {
        return amul(x / bo, y / bo) * bo + bmul(x % bo, y % bo);
    });
}

FiniteGroupModel subgroup_group(const FiniteGroupModel& G, const std::vector<int>& elements) {
    std::unordered_map<int, int> pos;
    for (int i = 0; i < (int)elements.size(); ++i) pos.emplace(elements[i], i);
    if (pos.size() != elements.size())
        throw std::invalid_argument("subgroup_group: duplicate elements");
    auto gmul = G.mul;
    auto elems = elements;
    return build_group((int)elements.size(), [gmul, elems, pos](int i, int j) {
        auto it = pos.find(gmul(elems[i], elems[j]));
        if (it == pos.end())
            throw std::invalid_argument("subgroup_group: subset not closed under product");
        return it->second;
    });
}

ClassFunction class_function(const FiniteGroupModel& G, const std::function<cplx(int)>& f) {
    ClassFunction cf;
    cf.G = &G;
    cf.values.resize(G.num_classes);
    for (int c = 0; c < G.num_classes; ++c) cf.values[c] = f(G.class_rep[c]);
    for (int x = 0; x < G.order; ++x)
        if (std::abs(f(x) - cf.values[G.class_of[x]]) > kSnapTolIntermediate)
            throw std::invalid_argument("class_function: not constant on conjugacy classes");
    return cf;
}

cplx inner_product(const ClassFunction& a, const ClassFunction& b) {
    if (a.G != b.G) throw std::invalid_argument("inner_product: different groups");
    cplx s = 0;
    for (int c = 0; c < a.G->num_classes; ++c)
        s += (double)a.G->class_size[c] * a.values[c] * std::conj(b.values[c]);
    return s / (double)a.G->order;
}

long long hom_dim(const ClassFunction& a, const ClassFunction& b) {
    long long d = snap_integer(inner_product(a, b), kSnapTolFinal);
    if (d < 0) throw std::runtime_error("hom_dim: negative inner product");
    return d;
}

CharacterTable character_table(const FiniteGroupModel& G, uint64_t seed) {
    int k = G.num_classes;
    // structure constants of the class-sum algebra:
    // K_i K_j = sum_l a_{ij}^l K_l, with a_{ij}^l = #{x in C_i : x^{-1} z_l in C_j}
    std::vector<Eigen::MatrixXcd> A(k, Eigen::MatrixXcd::Zero(k, k));
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            int zl = G.class_rep[l];
            for (int x : G.class_members[i]) {
                int j = G.class_of[G.mul(G.inv[x], zl)];
                A[i](j, l) += 1.0;
            }
        }

    std::string last_error = "character_table: no attempt made";
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (uint64_t)attempt);
        auto unit = [&rng]() { return (double)(rng() >> 11) * 0x1.0p-53; };
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(k, k);
        for (int i = 0; i < k; ++i) M += cplx(unit(), unit()) * A[i];

        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M);
        if (solver.info() != Eigen::Success) {
            last_error = "character_table: eigensolver failure";
            continue;
        }
        // distinct eigenvalues required so eigenvectors are the common ones
        double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
        bool collision = false;
        for (int a = 0; a < k && !collision; ++a)
            for (int b = a + 1; b < k; ++b)
                if (std::abs(solver.eigenvalues()[a] - solver.eigenvalues()[b]) < 1e-8 * scale) {
                    collision = true;
                    break;
                }
        if (collision) {
            last_error = "character_table: eigenvalue collision";
            continue;
        }

        CharacterTable table;
        table.G = &G;
        bool ok = true;
        for (int c = 0; c < k && ok; ++c) {
            Eigen::VectorXcd v = solver.eigenvectors().col(c);
            if (std::abs(v[0]) < 1e-12) {
                ok = false;
                last_error = "character_table: vanishing identity coordinate";
                break;
            }
            v /= v[0]; // class 0 is the identity class, omega_0 = 1
            double s = 0;
            for (int l = 0; l < k; ++l) s += std::norm(v[l]) / (double)G.class_size[l];
            double deg = std::sqrt((double)G.order / s);
            ClassFunction chi;
            chi.G = &G;
            chi.values.resize(k);
            for (int l = 0; l < k; ++l) chi.values[l] = deg * v[l] / (double)G.class_size[l];
            table.irreducibles.push_back(std::move(chi));
        }
        if (!ok) continue;

        // validate: orthogonality residual and integer degrees
        double residual = 0;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                cplx ip = inner_product(table.irreducibles[a], table.irreducibles[b]);
                residual = std::max(residual, std::abs(ip - cplx(a == b ? 1.0 : 0.0, 0)));
            }
        if (residual >= 1e-8) {
            last_error = "character_table: orthogonality residual " + std::to_string(residual);
            continue;
        }
        table.orthogonality_residual = residual;

        long long deg_sq = 0;
        bool degrees_ok = true;
        for (auto& chi : table.irreducibles) {
            if (!is_near_integer(chi.values[0], kSnapTolFinal)) {
                degrees_ok = false;
                break;
            }
            long long d = snap_integer(chi.values[0], kSnapTolFinal);
            if (d <= 0 || G.order % d != 0) {
                degrees_ok = false;
                break;
            }
            deg_sq += d * d;
        }
        if (!degrees_ok || deg_sq != G.order) {
            last_error = "character_table: degree checksum failure";
            continue;
        }

        // deterministic order: by degree, then by snapped values
        auto key = [&](const ClassFunction& chi) {
            std::vector<long long> key_values;
            for (cplx z : chi.values) {
                key_values.push_back(llround(z.real() * 1e6));
                key_values.push_back(llround(z.imag() * 1e6));
            }
            return key_values;
        };
        std::sort(table.irreducibles.begin(), table.irreducibles.end(),
                  [&](const ClassFunction& x, const ClassFunction& y) { return key(x) < key(y); });
        for (auto& chi : table.irreducibles)
            table.degrees.push_back(snap_integer(chi.values[0], kSnapTolFinal));
        return table;
    }
    throw std::runtime_error(last_error + " (after 8 retries)");
}

ClassFunction induced_character(const FiniteGroupModel& G, const std::vector<int>& h_elements,
                                const std::function<cplx(int)>& chi_h) {
    std::vector<char> in_h(G.order, 0);
    for (int h : h_elements) in_h[h] = 1;
    ClassFunction cf;
    cf.G = &G;
    cf.values.resize(G.num_classes);
    for (int c = 0; c < G.num_classes; ++c) {
        int g = G.class_rep[c];
        cplx s = 0;
        for (int x = 0; x < G.order; ++x) {
            int y = G.mul(G.inv[x], G.mul(g, x));
            if (in_h[y]) s += chi_h(y);
        }
        cf.values[c] = s / (double)h_elements.size();
    }
    return cf;
}

std::vector<cplx> twisted_coinvariant_values(int g_count, int n_count,
                                             const std::function<cplx(int, int)>& chi_m,
                                             const std::function<cplx(int)>& psi) {
    std::vector<cplx> out(g_count);
    for (int g = 0; g < g_count; ++g) {
        cplx s = 0;
        for (int n = 0; n < n_count; ++n) s += chi_m(g, n) * std::conj(psi(n));
        out[g] = s / (double)n_count;
    }
    return out;
}

} // namespace periods
