#include "charcensus/orbital.hpp"

#include <algorithm>
#include <set>

#include "charcensus/errors.hpp"

namespace charcensus {

std::string to_string(OrbitalSource s) {
    switch (s) {
        case OrbitalSource::TrivialSerreZero: return "trivial-serre-zero";
        case OrbitalSource::LatticeOracle: return "lattice-oracle";
        case OrbitalSource::UserSupplied: return "user-supplied";
    }
    return "?";
}

int serre_invariant(const FieldInvariants& inv, const Zint& p) {
    if (inv.index == Zint(1)) return 0;
    return static_cast<int>(pval(inv.index, p));
}

namespace {

// rank over F_p of a set of integer row vectors
int rank_mod_p_rows(const ZMat& rows, const Zint& p, int n) {
    std::uint64_t pu = p.to_u64();
    std::vector<std::vector<std::uint64_t>> a;
    for (const auto& r : rows) {
        std::vector<std::uint64_t> v(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = r[static_cast<size_t>(j)].mod_u64(pu);
        a.push_back(std::move(v));
    }
    auto mul = [pu](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<__uint128_t>(x) * y) % pu);
    };
    auto pw = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1 % pu;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    };
    size_t rank = 0;
    for (int col = 0; col < n && rank < a.size(); ++col) {
        size_t sel = a.size();
        for (size_t r = rank; r < a.size(); ++r)
            if (a[r][static_cast<size_t>(col)]) {
                sel = r;
                break;
            }
        if (sel == a.size()) continue;
        std::swap(a[rank], a[sel]);
        std::uint64_t inv = pw(a[rank][static_cast<size_t>(col)], pu - 2);
        for (int l = 0; l < n; ++l) a[rank][static_cast<size_t>(l)] = mul(a[rank][static_cast<size_t>(l)], inv);
        for (size_t r = rank + 1; r < a.size(); ++r) {
            std::uint64_t f = a[r][static_cast<size_t>(col)];
            if (!f) continue;
            for (int l = 0; l < n; ++l) {
                std::uint64_t sub = mul(f, a[rank][static_cast<size_t>(l)]);
                a[r][static_cast<size_t>(l)] =
                    a[r][static_cast<size_t>(l)] >= sub ? a[r][static_cast<size_t>(l)] - sub : a[r][static_cast<size_t>(l)] + pu - sub;
            }
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

ZRow mod_reduce_row(ZRow v, const Zint& m) {
    for (auto& z : v) z = z % m;
    return v;
}

}  // namespace

FiniteQuotientModule conductor_quotient(const IntPolynomial& chi, const OrderBasis& maximal,
                                        const Zint& p) {
    int n = chi.degree();
    OrderArithmetic ar = order_arithmetic(chi, maximal);
    Zint index = maximal.index_in_power_order();
    int serre = index == Zint(1) ? 0 : static_cast<int>(pval(index, p));
    if (serre < 1) throw ValidationError("conductor_quotient: Serre invariant is zero at p = " + p.str());

    unsigned m_prec = 2 * static_cast<unsigned>(serre) + 1;
    Zint pm = pow(p, m_prec);
    Zint ps = pow(p, static_cast<unsigned>(serre));

    // Z[gamma] + p^m Z^n as a lattice in maximal-order coordinates
    ZMat rows;
    {
        ZRow w = ar.one;
        for (int j = 0; j < n; ++j) {
            rows.push_back(mod_reduce_row(w, pm));
            w = zmat_apply(ar.gamma, w);
        }
        for (int i = 0; i < n; ++i) {
            ZRow r(static_cast<size_t>(n), Zint(0));
            r[static_cast<size_t>(i)] = pm;
            rows.push_back(std::move(r));
        }
    }
    ZMat h = hnf_rows(std::move(rows), n);
    if (hnf_det(h) != ps)
        throw ConsistencyError("conductor_quotient: power-order lattice has wrong p-index");

    // conductor: x with x * omega_j inside the power-order lattice for all j
    ZMat adjT = zmat_transpose(adjugate_upper(h));
    ZMat cond;
    cond.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        ZMat c = zmat_mul(adjT, ar.mult[static_cast<size_t>(j)]);
        for (auto& row : c) cond.push_back(mod_reduce_row(row, ps));
    }
    ZMat lambda = kernel_mod_prime_power(cond, p, static_cast<unsigned>(serre), n);

    FiniteQuotientModule M;
    M.p = p;
    M.serre = serre;
    M.n = n;
    M.conductor = hnf_rows(lambda, n);
    M.order = hnf_det(M.conductor);
    if (M.order != pow(p, 2 * static_cast<unsigned>(serre)))
        throw ConsistencyError("conductor_quotient: |O/f| != p^(2S) at p = " + p.str());
    M.diag.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) M.diag[static_cast<size_t>(i)] = M.conductor[static_cast<size_t>(i)][static_cast<size_t>(i)];
    M.group_rank = n - rank_mod_p_rows(M.conductor, p, n);
    M.gamma = ar.gamma;
    M.omega = ar.mult;

    // the conductor is an ideal for both Z[gamma] and O
    for (const auto& v : M.conductor) {
        if (!lattice_contains(M.conductor, mod_reduce_row(zmat_apply(M.gamma, v), ps)))
            throw ConsistencyError("conductor_quotient: lattice not gamma-stable");
        for (int k = 0; k < n; ++k)
            if (!lattice_contains(M.conductor, mod_reduce_row(zmat_apply(M.omega[static_cast<size_t>(k)], v), ps)))
                throw ConsistencyError("conductor_quotient: lattice not an O-module");
    }
    return M;
}

namespace {

// HNF of the gamma-closure of `gens` plus the conductor: the canonical form of
// the subgroup they generate inside Z^n / conductor.
ZMat span_lattice(const FiniteQuotientModule& M, const std::vector<ZRow>& gens, const Zint& ps) {
    ZMat rows;
    for (const auto& g : gens) {
        ZRow w = g;
        for (int j = 0; j < M.n; ++j) {
            rows.push_back(w);
            w = mod_reduce_row(zmat_apply(M.gamma, w), ps);
        }
    }
    for (const auto& r : M.conductor) rows.push_back(r);
    return hnf_rows(std::move(rows), M.n);
}

std::string lattice_key(const ZMat& h) {
    std::string key;
    for (const auto& r : h)
        for (const auto& z : r) {
            key += z.str();
            key += ',';
        }
    return key;
}

bool is_full_lattice(const ZMat& h) {
    for (size_t i = 0; i < h.size(); ++i)
        if (h[i][i] != Zint(1)) return false;
    return true;
}

}  // namespace

Zint lattice_oracle(const IntPolynomial& chi, const OrderBasis& maximal, const Zint& p) {
    Zint index = maximal.index_in_power_order();
    if (index == Zint(1) || pval(index, p) == 0) return Zint(1);
    FiniteQuotientModule M = conductor_quotient(chi, maximal, p);
    Zint ps = pow(p, static_cast<unsigned>(M.serre));

    // enumeration cost is |M|^rank generator tuples
    {
        Zint cost(1);
        for (int i = 0; i < std::max(1, M.group_rank); ++i) {
            cost *= M.order;
            if (cost > Zint(100000000L))
                throw ScaleGuardError("lattice_oracle: quotient of order " + M.order.str() +
                                      " with rank " + std::to_string(M.group_rank) +
                                      " is beyond the enumeration guard; supply the value via config");
        }
    }

    // coset representatives of Z^n / conductor decoded on the fly from a mixed
    // radix over the HNF diagonal (the quotient can be large when cyclic)
    std::vector<long> radix(static_cast<size_t>(M.n));
    std::size_t coset_count = 1;
    for (int i = 0; i < M.n; ++i) {
        radix[static_cast<size_t>(i)] = M.diag[static_cast<size_t>(i)].to_long();
        coset_count *= static_cast<std::size_t>(radix[static_cast<size_t>(i)]);
    }
    auto coset_at = [&](std::size_t ix) {
        ZRow v(static_cast<size_t>(M.n), Zint(0));
        for (int i = 0; i < M.n; ++i) {
            long d = radix[static_cast<size_t>(i)];
            v[static_cast<size_t>(i)] = Zint(static_cast<long>(ix % static_cast<std::size_t>(d)));
            ix /= static_cast<std::size_t>(d);
        }
        return v;
    };

    // spans of all generator tuples of size group_rank; nondecreasing index
    // tuples suffice since spans are symmetric in their generators
    std::set<std::string> seen;
    Zint count(0);
    int r = std::max(1, M.group_rank);
    std::vector<size_t> idx(static_cast<size_t>(r), 0);
    auto advance_sorted = [&]() {
        int pos = r - 1;
        while (pos >= 0) {
            if (++idx[static_cast<size_t>(pos)] < coset_count) {
                for (int q = pos + 1; q < r; ++q) idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(pos)];
                return true;
            }
            --pos;
        }
        return false;
    };
    while (true) {
        std::vector<ZRow> gens;
        gens.reserve(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) gens.push_back(coset_at(idx[static_cast<size_t>(i)]));
        ZMat span = span_lattice(M, gens, ps);
        std::string key = lattice_key(span);
        if (seen.insert(key).second) {
            // saturation: the O-module generated by the subgroup must be all of M
            ZMat orows;
            for (const auto& v : span) {
                orows.push_back(v);
                for (int k = 0; k < M.n; ++k)
                    orows.push_back(mod_reduce_row(zmat_apply(M.omega[static_cast<size_t>(k)], v), ps));
            }
            ZMat osat = hnf_rows(std::move(orows), M.n);
            if (is_full_lattice(osat)) count += Zint(1);
        }
        if (!advance_sorted()) break;
    }
    return count;
}

LocalGammaData orbital_integral(const IntPolynomial& chi, const OrderBasis& maximal,
                                const FieldInvariants& inv, const Zint& p,
                                const std::map<std::string, Zint>& overrides) {
    LocalGammaData out;
    out.p = p;
    out.serre = serre_invariant(inv, p);
    out.splitting = splitting_type(chi, maximal, p);
    if (out.serre == 0) {
        out.orbital = Zint(1);
        out.source = OrbitalSource::TrivialSerreZero;
        return out;
    }
    auto it = overrides.find(p.str());
    if (it != overrides.end()) {
        out.orbital = it->second;
        out.source = OrbitalSource::UserSupplied;
        return out;
    }
    out.orbital = lattice_oracle(chi, maximal, p);
    out.source = OrbitalSource::LatticeOracle;
    return out;
}

IntPolynomial fit_q_polynomial(const std::vector<std::pair<Zint, Zint>>& samples, int serre) {
    if (static_cast<int>(samples.size()) < serre + 2)
        throw ValidationError("fit_q_polynomial: need at least S+2 = " + std::to_string(serre + 2) +
                              " samples, got " + std::to_string(samples.size()));
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first == samples[j].first)
                throw ValidationError("fit_q_polynomial: duplicate sample prime " + samples[i].first.str());

    size_t k = samples.size();
    std::vector<Rat> coeffs(k, Rat(0));
    for (size_t i = 0; i < k; ++i) {
        // Lagrange basis polynomial through sample i
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * Rat(samples[j].first);
            }
            basis = std::move(next);
            denom *= Rat(samples[i].first) - Rat(samples[j].first);
        }
        Rat w = Rat(samples[i].second) / denom;
        for (size_t t = 0; t < basis.size(); ++t) coeffs[t] += basis[t] * w;
    }
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    std::vector<Zint> ic;
    for (const auto& c : coeffs) {
        if (!c.is_integer())
            throw ConsistencyError("fit_q_polynomial: non-integer coefficient " + c.str() +
                                   "; oracle inconsistency across the sample family");
        ic.push_back(c.num());
    }
    IntPolynomial fit{std::move(ic)};
    if (fit.degree() != serre)
        throw ConsistencyError("fit_q_polynomial: fitted degree " + std::to_string(fit.degree()) +
                               " != Serre invariant " + std::to_string(serre));
    if (!(fit.leading() == Zint(1)))
        throw ConsistencyError("fit_q_polynomial: fit is not monic; oracle inconsistency");
    return fit;
}

}  // namespace charcensus
