#include "ainf/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ainf/errors.hpp"

namespace ainf {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool chance(std::mt19937_64& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

int degree_sum(const GradedModule& m, const int* w, int from, int to) {
    int s = 0;
    for (int i = from; i < to; ++i) s += m.degree(w[i]);
    return s;
}

std::vector<Scalar> zeros(const Ring& ring, int n) { return std::vector<Scalar>(n, Scalar::zero(ring)); }

SparseVec from_dense(const std::vector<Scalar>& v) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) out.push_back({i, v[i]});
    return out;
}

// Classical defect to bar convention. The suspension sign relates the two on each word.
SparseVec to_bar(const GradedModule& m, const int* w, int k, const std::vector<Scalar>& dense) {
    SparseVec v = from_dense(dense);
    return suspension_sign(m, w, k) ? scaled(v, -Scalar::one(m.ring())) : v;
}

}  // namespace

Family brute_force_stasheff(const AInfStructure& m) {
    const GradedModule& mod = *m.module();
    const int K = m.K();
    std::vector<MultilinearMap> mu(K + 1);
    for (int k = 1; k <= K; ++k) mu[k] = m.classical(k);

    Family out = empty_family(K, mod.dim());
    for (int k = 1; k <= K; ++k) {
        for_each_word(mod, k, [&](const int* w, int) {
            auto acc = zeros(m.ring(), mod.dim());
            bool any = false;
            for (int r = 0; r < k; ++r)
                for (int s = 1; r + s <= k; ++s) {
                    const int t = k - r - s;
                    const int o = r + 1 + t;
                    if (o > K) continue;
                    const SparseVec* mid = mu[s].find(w + r);
                    if (!mid) continue;
                    const bool neg = ((r + s * t + s * degree_sum(mod, w, 0, r)) & 1) != 0;
                    std::vector<int> word(w, w + r);
                    word.push_back(0);
                    word.insert(word.end(), w + r + s, w + k);
                    for (const auto& term : *mid) {
                        word[r] = term.index;
                        const SparseVec* v = mu[o].find(word.data());
                        if (!v) continue;
                        for (const auto& x : *v) {
                            Scalar c = term.coeff * x.coeff;
                            if (neg) acc[x.index] -= c; else acc[x.index] += c;
                            any = true;
                        }
                    }
                }
            if (any) out[k].set(out[k].encode(w), to_bar(mod, w, k, acc));
        });
    }
    return out;
}

namespace {

// sum over compositions i_1 + ... + i_q = k of (-1)^{s + koszul} mu_q(f_{i_1}(B_1), ..., f_{i_q}(B_q)),
// s = sum_j (q - j)(i_j - 1).
void keller_rhs(const GradedModule& S, const std::vector<MultilinearMap>& f, const std::vector<MultilinearMap>& mu,
                const int* w, int k, int pos, std::vector<int>& sizes, std::vector<const SparseVec*>& vals, bool neg,
                std::vector<Scalar>& acc) {
    if (pos == k) {
        const int q = static_cast<int>(sizes.size());
        if (q >= static_cast<int>(mu.size()) || mu[q].empty()) return;
        int s = 0;
        for (int j = 0; j < q; ++j) s += (q - 1 - j) * (sizes[j] - 1);
        if (s & 1) neg = !neg;
        // expand the tensor product of the block values
        std::vector<int> word(q);
        std::function<void(int, Scalar)> rec = [&](int j, Scalar c) {
            if (j == q) {
                if (const SparseVec* v = mu[q].find(word.data()))
                    for (const auto& x : *v) {
                        if (neg) acc[x.index] -= c * x.coeff; else acc[x.index] += c * x.coeff;
                    }
                return;
            }
            for (const auto& t : *vals[j]) {
                word[j] = t.index;
                rec(j + 1, c * t.coeff);
            }
        };
        rec(0, Scalar::one(S.ring()));
        return;
    }
    const int deg_before = degree_sum(S, w, 0, pos);
    for (int len = 1; pos + len <= k && len < static_cast<int>(f.size()); ++len) {
        const SparseVec* v = f[len].find(w + pos);
        if (!v) continue;
        const bool flip = (((len - 1) * deg_before) & 1) != 0;
        sizes.push_back(len);
        vals.push_back(v);
        keller_rhs(S, f, mu, w, k, pos + len, sizes, vals, neg != flip, acc);
        sizes.pop_back();
        vals.pop_back();
    }
}

}  // namespace

Family brute_force_morphism_defect(const AInfMorphism& f) {
    const GradedModule& S = *f.source()->module();
    const GradedModule& T = *f.target()->module();
    const int K = f.K();
    std::vector<MultilinearMap> mu(K + 1), nu(K + 1), fc(K + 1);
    for (int k = 1; k <= K; ++k) {
        mu[k] = f.source()->classical(k);
        nu[k] = f.target()->classical(k);
        fc[k] = f.classical(k);
    }
    Family out = empty_family(K, S.dim());
    for (int k = 1; k <= K; ++k) {
        for_each_word(S, k, [&](const int* w, int) {
            auto acc = zeros(S.ring(), T.dim());
            for (int r = 0; r < k; ++r)
                for (int s = 1; r + s <= k; ++s) {
                    const int t = k - r - s;
                    const int o = r + 1 + t;
                    const SparseVec* mid = mu[s].find(w + r);
                    if (!mid) continue;
                    const bool neg = ((r + s * t + s * degree_sum(S, w, 0, r)) & 1) != 0;
                    std::vector<int> word(w, w + r);
                    word.push_back(0);
                    word.insert(word.end(), w + r + s, w + k);
                    for (const auto& term : *mid) {
                        word[r] = term.index;
                        const SparseVec* v = fc[o].find(word.data());
                        if (!v) continue;
                        for (const auto& x : *v) {
                            if (neg) acc[x.index] -= term.coeff * x.coeff; else acc[x.index] += term.coeff * x.coeff;
                        }
                    }
                }
            std::vector<int> sizes;
            std::vector<const SparseVec*> vals;
            keller_rhs(S, fc, nu, w, k, 0, sizes, vals, true, acc);
            SparseVec v = to_bar(S, w, k, acc);
            if (!v.empty()) out[k].set(out[k].encode(w), std::move(v));
        });
    }
    return out;
}

namespace {

using Tensor = std::map<std::vector<int>, Scalar>;

void tensor_add(Tensor& t, const std::vector<int>& w, const Scalar& c) {
    auto [it, inserted] = t.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    } else if (c.is_zero()) {
        t.erase(it);
    }
}

void expand(const std::vector<SparseVec>& factors, const Scalar& c, Tensor& out) {
    std::vector<int> word(factors.size());
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t j, Scalar x) {
        if (j == factors.size()) {
            tensor_add(out, word, x);
            return;
        }
        for (const auto& t : factors[j]) {
            word[j] = t.index;
            rec(j + 1, x * t.coeff);
        }
    };
    rec(0, c);
}

struct Perturbation {
    const GradedModule& A;
    const MultilinearMap& b2;
    const Retraction& r;
    GradedMap ip;

    bool sd_parity(const std::vector<int>& w, std::size_t upto) const {
        int s = 0;
        for (std::size_t i = 0; i < upto; ++i) s += A.degree(w[i]) + 1;
        return (s & 1) != 0;
    }

    Tensor homotopy(const Tensor& x) const {
        Tensor out;
        for (const auto& [w, c] : x)
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::vector<SparseVec> f;
                for (std::size_t m = 0; m < w.size(); ++m)
                    f.push_back(m < i ? unit_vector(A.ring(), w[m]) : m == i ? r.h.image(w[m]) : ip.image(w[m]));
                expand(f, sd_parity(w, i) ? -c : c, out);
            }
        return out;
    }

    Tensor product(const Tensor& x) const {
        Tensor out;
        for (const auto& [w, c] : x)
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                const int pair[2] = {w[i], w[i + 1]};
                const SparseVec* v = b2.find(pair);
                if (!v) continue;
                std::vector<int> nw(w.begin(), w.begin() + i);
                nw.push_back(0);
                nw.insert(nw.end(), w.begin() + i + 2, w.end());
                for (const auto& t : *v) {
                    nw[i] = t.index;
                    tensor_add(out, nw, sd_parity(w, i) ? -(c * t.coeff) : c * t.coeff);
                }
            }
        return out;
    }
};

}  // namespace

PerturbationTransfer perturbation_transfer(const AInfStructure& A, const Retraction& r) {
    const GradedModule& Am = *A.module();
    const GradedModule& H = *r.H;
    const int K = A.K();
    Perturbation P{Am, A.bar(2), r, compose_map(r.i, r.p)};
    PerturbationTransfer out{empty_family(K, H.dim()), empty_family(K, H.dim())};
    out.inclusion[1] = linear_table(r.i);
    for (int k = 2; k <= K; ++k) {
        for_each_word(H, k, [&](const int* w, int) {
            std::vector<SparseVec> f;
            for (int j = 0; j < k; ++j) f.push_back(r.i.image(w[j]));
            Tensor x;
            expand(f, Scalar::one(Am.ring()), x);
            x = P.product(x);
            for (int round = 0; round < k - 2; ++round) x = P.product(P.homotopy(x));
            SparseVec v;
            Accumulator acc(Am.ring(), Am.dim());
            for (const auto& [word, c] : x) acc.add(word[0], c);
            v = acc.take();
            const bool odd = (k & 1) != 0;
            SparseVec b = r.p.apply(v), iota = r.h.apply(v);
            if (odd) b = scaled(b, -Scalar::one(Am.ring()));
            else iota = scaled(iota, -Scalar::one(Am.ring()));
            out.structure[k].set(out.structure[k].encode(w), b);
            out.inclusion[k].set(out.inclusion[k].encode(w), iota);
        });
    }
    return out;
}

Report verify_dga(const DgAlgebra& A) {
    Report rep;
    const GradedModule& M = *A.module();
    const Matrix& d = A.d().matrix();
    rep.add("d∘d = 0", (d * d).is_zero());

    std::string assoc_fail, leibniz_fail;
    const Scalar minus = -Scalar::one(A.ring());
    for (int a = 0; a < M.dim(); ++a)
        for (int b = 0; b < M.dim(); ++b) {
            SparseVec ab = A.multiply(a, b);
            if (leibniz_fail.empty()) {
                SparseVec lhs = A.d().apply(ab);
                SparseVec t1 = A.multiply(A.d().image(a), unit_vector(A.ring(), b));
                SparseVec t2 = A.multiply(unit_vector(A.ring(), a), A.d().image(b));
                SparseVec rhs = add(t1, (M.degree(a) & 1) ? scaled(t2, minus) : t2);
                if (lhs != rhs) leibniz_fail = M.element(a).name + ", " + M.element(b).name;
            }
            if (!assoc_fail.empty()) continue;
            for (int c = 0; c < M.dim(); ++c) {
                SparseVec left = A.multiply(ab, unit_vector(A.ring(), c));
                SparseVec right = A.multiply(unit_vector(A.ring(), a), A.multiply(b, c));
                if (left != right) {
                    assoc_fail = M.element(a).name + ", " + M.element(b).name + ", " + M.element(c).name;
                    break;
                }
            }
        }
    rep.add("associative", assoc_fail.empty(), assoc_fail.empty() ? "" : "fails on (" + assoc_fail + ")");
    rep.add("Leibniz rule", leibniz_fail.empty(), leibniz_fail.empty() ? "" : "fails on (" + leibniz_fail + ")");
    return rep;
}

Scalar random_scalar(const Ring& ring, std::mt19937_64& rng, bool nonzero) {
    while (true) {
        Scalar s;
        if (ring.kind() == RingKind::prime_field) {
            s = Scalar::from_int(ring, uniform(rng, 0, static_cast<int>(std::min<std::int64_t>(ring.prime(), 1 << 30)) - 1));
        } else {
            const int num = uniform(rng, -3, 3);
            int den = uniform(rng, 0, 3) == 0 ? 2 : 1;
            if (ring.kind() == RingKind::local_integers && ring.prime() == 2) den = uniform(rng, 0, 3) == 0 ? 3 : 1;
            s = Scalar::from_fraction(ring, mpz_class(num), mpz_class(den));
        }
        if (!nonzero || !s.is_zero()) return s;
    }
}

namespace {

struct RawAlgebra {
    std::vector<BasisElement> basis;
    std::vector<std::vector<Scalar>> d;                     // d[col] dense image
    std::map<std::pair<int, int>, std::vector<Scalar>> prod;  // dense products
};

DgAlgebra assemble(const Ring& ring, const RawAlgebra& raw) {
    const int n = static_cast<int>(raw.basis.size());
    ModulePtr M = make_module(ring, raw.basis);
    Matrix d(ring, n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) d.at(i, j) = raw.d[j][i];
    MultilinearMap prod(2, n);
    for (const auto& [ab, v] : raw.prod) prod.set(std::vector<int>{ab.first, ab.second}, from_dense(v));
    return DgAlgebra(M, GradedMap(M, M, -1, std::move(d)), std::move(prod));
}

// Replaces the basis by u_a = e_a + sum_{b > a, same degree} c_ab e_b.
RawAlgebra change_basis(const Ring& ring, const RawAlgebra& raw, std::mt19937_64& rng) {
    const int n = static_cast<int>(raw.basis.size());
    Matrix P = Matrix::identity(ring, n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (raw.basis[a].degree == raw.basis[b].degree && chance(rng, 0.35))
                P.at(b, a) = random_scalar(ring, rng, false);
    const Matrix Pinv = inverse(P);
    auto to_new = [&](const std::vector<Scalar>& old) {
        std::vector<Scalar> out = zeros(ring, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!old[j].is_zero()) out[i] += Pinv.at(i, j) * old[j];
        return out;
    };
    RawAlgebra out;
    out.basis = raw.basis;
    for (int a = 0; a < n; ++a) {
        std::vector<Scalar> img = zeros(ring, n);
        for (int x = 0; x < n; ++x)
            if (!P.at(x, a).is_zero())
                for (int i = 0; i < n; ++i) img[i] += P.at(x, a) * raw.d[x][i];
        out.d.push_back(to_new(img));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<Scalar> v = zeros(ring, n);
            bool any = false;
            for (int x = 0; x < n; ++x) {
                if (P.at(x, a).is_zero()) continue;
                for (int y = 0; y < n; ++y) {
                    if (P.at(y, b).is_zero()) continue;
                    auto it = raw.prod.find({x, y});
                    if (it == raw.prod.end()) continue;
                    for (int i = 0; i < n; ++i) v[i] += P.at(x, a) * P.at(y, b) * it->second[i];
                    any = true;
                }
            }
            if (any) {
                auto nv = to_new(v);
                if (!from_dense(nv).empty()) out.prod[{a, b}] = std::move(nv);
            }
        }
    return out;
}

RawAlgebra matrix_template(const RandomDgaOptions& o, std::mt19937_64& rng) {
    const Ring& ring = o.ring;
    const int step = o.degree_step;
    const int lo = (o.min_degree + step - 1 - (o.min_degree < 0 ? step - 1 : 0)) / step;
    const int hi = o.max_degree / step;
    for (int attempt = 0;; ++attempt) {
        const int m = uniform(rng, 2, 4);
        std::vector<int> vdeg(m);
        for (auto& x : vdeg) x = step * uniform(rng, std::min(lo, hi), std::max(lo, hi));
        Matrix dV(ring, m, m);
        if (!o.zero_differential) {
            std::vector<char> used(m, 0);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < j; ++i)
                    if (!used[i] && !used[j] && vdeg[i] == vdeg[j] - 1 && chance(rng, 0.7)) {
                        dV.at(i, j) = random_scalar(ring, rng, true);
                        used[i] = used[j] = 1;
                    }
        }
        std::set<std::pair<int, int>> S;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (chance(rng, 0.5)) S.insert({i, j});
        if (S.empty()) S.insert({0, 1});
        // close under products and the commutator with dV
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<std::pair<int, int>> cur(S.begin(), S.end());
            for (auto [i, j] : cur) {
                for (auto [k, l] : cur)
                    if (j == k) grew |= S.insert({i, l}).second;
                for (int x = 0; x < m; ++x) {
                    if (!dV.at(x, i).is_zero()) grew |= S.insert({x, j}).second;
                    if (!dV.at(j, x).is_zero()) grew |= S.insert({i, x}).second;
                }
            }
        }
        if (static_cast<int>(S.size()) > o.max_dim && attempt < 64) continue;
        if (static_cast<int>(S.size()) > o.max_dim) return {};

        std::vector<std::pair<int, int>> elems(S.begin(), S.end());
        std::map<std::pair<int, int>, int> index;
        RawAlgebra raw;
        for (std::size_t a = 0; a < elems.size(); ++a) {
            auto [i, j] = elems[a];
            index[elems[a]] = static_cast<int>(a);
            raw.basis.push_back({"e" + std::to_string(i + 1) + std::to_string(j + 1), vdeg[i] - vdeg[j]});
        }
        const int n = static_cast<int>(elems.size());
        for (int a = 0; a < n; ++a) {
            auto [i, j] = elems[a];
            std::vector<Scalar> img = zeros(ring, n);
            const bool odd = (raw.basis[a].degree & 1) != 0;
            for (int x = 0; x < m; ++x) {
                if (!dV.at(x, i).is_zero()) img[index.at({x, j})] += dV.at(x, i);
                if (!dV.at(j, x).is_zero()) {
                    if (odd) img[index.at({i, x})] += dV.at(j, x); else img[index.at({i, x})] -= dV.at(j, x);
                }
            }
            raw.d.push_back(std::move(img));
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (elems[a].second == elems[b].first) {
                    std::vector<Scalar> v = zeros(ring, n);
                    v[index.at({elems[a].first, elems[b].second})] = Scalar::one(ring);
                    raw.prod[{a, b}] = std::move(v);
                }
        return change_basis(ring, raw, rng);
    }
}

RawAlgebra square_zero_template(const RandomDgaOptions& o, std::mt19937_64& rng) {
    const Ring& ring = o.ring;
    const int step = o.degree_step;
    const int lo = o.min_degree / step, hi = o.max_degree / step;
    int nu = uniform(rng, 1, 3), nw = uniform(rng, 1, 3);
    while (nu + nw > o.max_dim && (nu > 1 || nw > 1)) (nu >= nw ? nu : nw)--;
    if (nu + nw > o.max_dim) return {};
    std::vector<int> udeg(nu), wdeg(nw);
    for (auto& x : udeg) x = step * uniform(rng, std::min(lo, hi), std::max(lo, hi));
    for (auto& x : wdeg) {
        const int roll = uniform(rng, 0, 3);
        if (roll <= 1)
            x = udeg[uniform(rng, 0, nu - 1)] + udeg[uniform(rng, 0, nu - 1)];
        else if (roll == 2 && !o.zero_differential && step == 1)
            x = udeg[uniform(rng, 0, nu - 1)] - 1;
        else
            x = step * uniform(rng, std::min(lo, hi), std::max(lo, hi));
    }
    // Half of the time plant x, y, s with ds = xy and sy != 0, so <x, y, y> is a Massey product.
    std::vector<std::pair<int, int>> plants;
    if (!o.zero_differential && step == 1 && o.max_dim >= 5 && chance(rng, 0.5))
        for (int a = lo; a <= hi; ++a)
            for (int b = lo; b <= hi; ++b)
                if (a + b + 1 <= hi && a + b >= lo && a + 2 * b + 1 >= lo && a + 2 * b + 1 <= hi) plants.push_back({a, b});
    const bool planted = !plants.empty();
    if (planted) {
        const auto [a, b] = plants[uniform(rng, 0, static_cast<int>(plants.size()) - 1)];
        nu = 3;
        nw = std::max(2, std::min(nw, o.max_dim - 3));
        udeg.assign({a, b, a + b + 1});
        wdeg.resize(nw);
        wdeg[0] = a + b;
        wdeg[1] = a + 2 * b + 1;
    }
    const int n = nu + nw;
    RawAlgebra raw;
    for (int i = 0; i < nu; ++i) raw.basis.push_back({"u" + std::to_string(i + 1), udeg[i]});
    for (int i = 0; i < nw; ++i) raw.basis.push_back({"w" + std::to_string(i + 1), wdeg[i]});
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> img = zeros(ring, n);
        if (j < nu && !o.zero_differential)
            for (int w = 0; w < nw; ++w)
                if (wdeg[w] == udeg[j] - 1 && chance(rng, 0.6)) img[nu + w] = random_scalar(ring, rng, true);
        raw.d.push_back(std::move(img));
    }
    for (int a = 0; a < nu; ++a)
        for (int b = 0; b < nu; ++b) {
            std::vector<Scalar> v = zeros(ring, n);
            bool any = false;
            for (int w = 0; w < nw; ++w)
                if (wdeg[w] == udeg[a] + udeg[b] && chance(rng, 0.6)) {
                    v[nu + w] = random_scalar(ring, rng, true);
                    any = true;
                }
            if (any) raw.prod[{a, b}] = std::move(v);
        }
    if (planted) {
        raw.d[2][nu] = random_scalar(ring, rng, true);
        auto plant = [&](int a, int b, int w) {
            auto it = raw.prod.try_emplace({a, b}, zeros(ring, n)).first;
            it->second[nu + w] = random_scalar(ring, rng, true);
        };
        plant(0, 1, 0);
        plant(2, 1, 1);
    }
    return raw;
}

}  // namespace

DgAlgebra random_dga(const RandomDgaOptions& opts) {
    if (opts.degree_step < 1) throw std::invalid_argument("degree_step must be positive");
    if (opts.max_dim <= 0) return assemble(opts.ring, RawAlgebra{});
    std::mt19937_64 rng(opts.seed ^ 0x5bd1e995u);
    const DgaTemplate shape = opts.shape ? *opts.shape : (rng() & 1 ? DgaTemplate::matrix : DgaTemplate::square_zero);
    RawAlgebra raw = shape == DgaTemplate::matrix ? matrix_template(opts, rng) : square_zero_template(opts, rng);
    return assemble(opts.ring, raw);
}

DgAlgebra random_dga(int max_dim, int min_degree, int max_degree, const Ring& ring, std::uint64_t seed) {
    RandomDgaOptions o;
    o.ring = ring;
    o.max_dim = max_dim;
    o.min_degree = min_degree;
    o.max_degree = max_degree;
    o.seed = seed;
    return random_dga(o);
}

namespace {

void fill_random(MultilinearMap& table, const GradedModule& source, const GradedModule& target, int shift,
                 std::mt19937_64& rng, double density) {
    const Ring& ring = source.ring();
    for_each_word(source, table.arity(), [&](const int* w, int N) {
        if (!target.has_degree(N + shift) || !chance(rng, density)) return;
        SparseVec v;
        for (int i : target.in_degree(N + shift)) {
            Scalar c = random_scalar(ring, rng, false);
            if (!c.is_zero()) v.push_back({i, c});
        }
        table.set(table.encode(w), std::move(v));
    });
}

}  // namespace

AInfStructure random_structure(const Ring& ring, int dim, int K, int min_degree, int max_degree, std::uint64_t seed,
                               double density) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 17);
    std::vector<BasisElement> basis;
    for (int i = 0; i < dim; ++i) basis.push_back({"a" + std::to_string(i + 1), uniform(rng, min_degree, max_degree)});
    ModulePtr M = make_module(ring, basis);
    Family bar = empty_family(K, dim);
    for (int k = 1; k <= K; ++k) fill_random(bar[k], *M, *M, k - 2, rng, density);
    return AInfStructure(M, K, std::move(bar));
}

Family random_family(const ModulePtr& module, int K, std::uint64_t seed, bool identity_linear, int zero_through,
                     double density) {
    std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ull + 3);
    const Ring& ring = module->ring();
    const int D = module->dim();
    Family f = empty_family(K, D);
    Matrix lin = Matrix::identity(ring, D);
    if (!identity_linear)
        for (int n : module->degrees()) {
            const auto& idx = module->in_degree(n);
            for (std::size_t a = 0; a < idx.size(); ++a) {
                lin.at(idx[a], idx[a]) = random_scalar(ring, rng, true);
                if (ring.kind() == RingKind::local_integers)
                    while (!lin.at(idx[a], idx[a]).is_unit()) lin.at(idx[a], idx[a]) = random_scalar(ring, rng, true);
                for (std::size_t b = a + 1; b < idx.size(); ++b) lin.at(idx[a], idx[b]) = random_scalar(ring, rng, false);
            }
        }
    f[1] = linear_table(GradedMap(module, module, 0, std::move(lin)));
    for (int k = std::max(2, zero_through + 1); k <= K; ++k) fill_random(f[k], *module, *module, k - 1, rng, density);
    return f;
}

FormalInstance conjugated_formal_instance(const DgAlgebra& H, const Scalar& alpha, int c, std::uint64_t seed, int K,
                                          int zero_through, double density) {
    if (!H.d().is_zero()) throw PreconditionViolated("conjugated_formal_instance needs a zero differential");
    StructurePtr M0 = share(H.as_ainfinity(K));
    GradedMap sigma = degree_twisting(H.module(), alpha, c);
    AInfMorphism S0 = strict_from_linear(sigma, M0, M0);
    Family phi = random_family(H.module(), K, seed, true, zero_through, density);
    StructurePtr m = share(conjugate_structure(phi, *M0));
    AInfMorphism s = conjugate_morphism(phi, S0, m);
    return FormalInstance{M0, S0, std::move(phi), m, std::move(s)};
}

std::vector<std::string> fixture_names() { return {"acyclic2", "truncpoly", "massey5", "cpn_fp"}; }

namespace {

DgAlgebra build(const Ring& ring, std::vector<BasisElement> basis,
                std::vector<std::tuple<std::string, std::string, int>> diff,
                std::vector<std::tuple<std::string, std::string, std::string>> products) {
    ModulePtr M = make_module(ring, std::move(basis));
    Matrix d(ring, M->dim(), M->dim());
    for (auto& [from, to, c] : diff) d.at(*M->find(to), *M->find(from)) = Scalar::from_int(ring, c);
    MultilinearMap prod(2, M->dim());
    for (auto& [l, r, res] : products)
        prod.set(std::vector<int>{*M->find(l), *M->find(r)}, unit_vector(ring, *M->find(res)));
    return DgAlgebra(M, GradedMap(M, M, -1, std::move(d)), std::move(prod));
}

DgAlgebra truncated_polynomial(const Ring& ring) {
    return build(ring, {{"x", -2}, {"x2", -4}, {"x3", -6}}, {},
                 {{"x", "x", "x2"}, {"x", "x2", "x3"}, {"x2", "x", "x3"}});
}

}  // namespace

Fixture fixture(const std::string& name) {
    if (name == "cpn_fp") return fixture(name, Ring::prime_field(5));
    return fixture(name, Ring::rationals());
}

Fixture fixture(const std::string& name, const Ring& ring) {
    if (name == "acyclic2") {
        Fixture f{name, build(ring, {{"v", 1}, {"u", 0}}, {{"v", "u", 1}}, {}), std::nullopt, {}};
        return f;
    }
    if (name == "massey5") {
        Fixture f{name,
                  build(ring, {{"x", -1}, {"y", -1}, {"s", -1}, {"w", -2}, {"r", -2}}, {{"s", "w", 1}},
                        {{"x", "y", "w"}, {"s", "y", "r"}}),
                  std::nullopt,
                  {}};
        f.expected.homology_ranks = {{-1, 2}, {-2, 1}};
        f.expected.massey_sign = 1;
        return f;
    }
    if (name == "truncpoly" || name == "cpn_fp") {
        DgAlgebra A = truncated_polynomial(ring);
        const Scalar alpha = Scalar::from_int(ring, 2);
        Fixture f{name, A, TwistData{alpha, 2, degree_twisting(A.module(), alpha, 2)}, {}};
        f.expected.homology_ranks = {{-2, 1}, {-4, 1}, {-6, 1}};
        f.expected.flag = FormalityFlag::formal;
        if (ring.kind() == RingKind::rationals) {
            f.expected.achieved_n = default_probe_limit;
        } else {
            const UnitRange ur = unit_range(ring, alpha);
            f.expected.achieved_n = ur.n_max;
        }
        return f;
    }
    throw UnknownFixture("unknown fixture '" + name + "'");
}

}  // namespace ainf
