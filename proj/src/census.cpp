#include "charcensus/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "charcensus/errors.hpp"
#include "charcensus/intfactor.hpp"

namespace charcensus {

std::string to_string(Enumerator e) {
    switch (e) {
        case Enumerator::Auto: return "auto";
        case Enumerator::N2Divisor: return "n2-divisor";
        case Enumerator::GenericDfs: return "generic-dfs";
        case Enumerator::Naive: return "naive";
    }
    return "?";
}

Enumerator enumerator_from_string(const std::string& s) {
    if (s == "auto") return Enumerator::Auto;
    if (s == "n2" || s == "n2-divisor") return Enumerator::N2Divisor;
    if (s == "generic" || s == "generic-dfs") return Enumerator::GenericDfs;
    if (s == "naive") return Enumerator::Naive;
    throw ValidationError("unknown enumerator '" + s + "' (auto|n2|generic|naive)");
}

std::int64_t norm_bound_sq(double T) {
    if (!(T >= 0.0)) throw ValidationError("census: T must be nonnegative");
    if (T > 1.0e8) throw ScaleGuardError("census: T beyond 1e8 is outside the supported scale");
    long double s = static_cast<long double>(T) * static_cast<long double>(T);
    std::int64_t f = static_cast<std::int64_t>(std::floor(s));
    if (s - static_cast<long double>(f) > 1.0L - 1e-9L) f += 1;  // integer T^2 hit by float fuzz
    return f;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t query_checksum(const IntPolynomial& chi, double T, const std::string& enumerator) {
    std::string s = enumerator + "|" + std::to_string(T);
    for (const auto& c : chi.to_strings()) s += "|" + c;
    return fnv1a(s);
}

std::int64_t isqrt_i64(std::int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// characteristic coefficient targets: e_k = (-1)^k * coeff(n-k) for monic chi
std::vector<std::int64_t> elementary_targets(const IntPolynomial& chi) {
    int n = chi.degree();
    std::vector<std::int64_t> e(static_cast<size_t>(n) + 1, 0);
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Zint c = chi.coeff(n - k);
        if (k % 2 == 1) c = -c;
        e[static_cast<size_t>(k)] = c.to_long();
    }
    return e;
}

using I128 = __int128;

I128 det3(const std::int64_t m[4][4], int a, int b, int c) {
    const int idx[3] = {a, b, c};
    I128 d = 0;
    d += static_cast<I128>(m[idx[0]][idx[0]]) *
         (static_cast<I128>(m[idx[1]][idx[1]]) * m[idx[2]][idx[2]] -
          static_cast<I128>(m[idx[1]][idx[2]]) * m[idx[2]][idx[1]]);
    d -= static_cast<I128>(m[idx[0]][idx[1]]) *
         (static_cast<I128>(m[idx[1]][idx[0]]) * m[idx[2]][idx[2]] -
          static_cast<I128>(m[idx[1]][idx[2]]) * m[idx[2]][idx[0]]);
    d += static_cast<I128>(m[idx[0]][idx[2]]) *
         (static_cast<I128>(m[idx[1]][idx[0]]) * m[idx[2]][idx[1]] -
          static_cast<I128>(m[idx[1]][idx[1]]) * m[idx[2]][idx[0]]);
    return d;
}

I128 det4(const std::int64_t m[4][4]) {
    I128 d = 0;
    for (int col = 0; col < 4; ++col) {
        // minor over rows 1..3 excluding column col
        int cols[3], w = 0;
        for (int c = 0; c < 4; ++c)
            if (c != col) cols[w++] = c;
        I128 minor = 0;
        minor += static_cast<I128>(m[1][cols[0]]) *
                 (static_cast<I128>(m[2][cols[1]]) * m[3][cols[2]] -
                  static_cast<I128>(m[2][cols[2]]) * m[3][cols[1]]);
        minor -= static_cast<I128>(m[1][cols[1]]) *
                 (static_cast<I128>(m[2][cols[0]]) * m[3][cols[2]] -
                  static_cast<I128>(m[2][cols[2]]) * m[3][cols[0]]);
        minor += static_cast<I128>(m[1][cols[2]]) *
                 (static_cast<I128>(m[2][cols[0]]) * m[3][cols[1]] -
                  static_cast<I128>(m[2][cols[1]]) * m[3][cols[0]]);
        I128 term = static_cast<I128>(m[0][col]) * minor;
        d += (col % 2 == 0) ? term : -term;
    }
    return d;
}

// e_1..e_n of an n x n integer matrix (sums of principal minors)
void elementary_of_matrix(const std::int64_t m[4][4], int n, I128 out[5]) {
    out[0] = 1;
    I128 tr = 0;
    for (int i = 0; i < n; ++i) tr += m[i][i];
    out[1] = tr;
    I128 e2 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e2 += static_cast<I128>(m[i][i]) * m[j][j] - static_cast<I128>(m[i][j]) * m[j][i];
    out[2] = e2;
    if (n >= 3) {
        I128 e3 = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) e3 += det3(m, i, j, k);
        out[3] = e3;
    }
    if (n == 4) out[4] = det4(m);
}

// ---------------------------------------------------------------------------
// n = 2 divisor method
// ---------------------------------------------------------------------------

struct N2Params {
    std::int64_t t, d, B2;
};

std::uint64_t n2_count_range(const N2Params& q, std::int64_t a_lo, std::int64_t a_hi,
                             const SpfTable& spf) {
    std::uint64_t total = 0;
    std::vector<std::pair<std::uint64_t, int>> fac;
    for (std::int64_t a = a_lo; a <= a_hi; ++a) {
        std::int64_t d2 = q.t - a;
        std::int64_t rem = q.B2 - a * a - d2 * d2;
        if (rem < 0) continue;
        std::int64_t r = a * d2 - q.d;
        if (r == 0)
            throw ConsistencyError("count_n2: zero determinant defect on an irreducible target");
        std::uint64_t R = static_cast<std::uint64_t>(r < 0 ? -r : r);
        if (static_cast<std::int64_t>(2 * R) > rem) continue;  // b^2 + c^2 >= 2|bc|
        std::int64_t s = isqrt_i64(rem);
        fac.clear();
        auto f = factor_u64(R, spf);
        std::uint64_t hits = 0;
        auto divisors = divisors_from_factorization(f);
        for (std::uint64_t x : divisors) {
            if (x > static_cast<std::uint64_t>(s)) continue;
            std::uint64_t c = R / x;
            if (c > static_cast<std::uint64_t>(s)) continue;
            if (static_cast<std::int64_t>(x * x + c * c) <= rem) ++hits;
        }
        total += 2 * hits;  // sign choice of b fixes c = r/b
    }
    return total;
}

const SpfTable& shared_spf() {
    static SpfTable table((1u << 20));
    return table;
}

// ---------------------------------------------------------------------------
// generic n = 3..4 DFS
// ---------------------------------------------------------------------------

struct GenericCtx {
    int n;
    std::int64_t B2;
    std::vector<std::int64_t> targets;  // e_0..e_n
    std::vector<std::pair<int, int>> pairs;
};

std::uint64_t generic_leaf_check(const GenericCtx& ctx, std::int64_t m[4][4]) {
    I128 e[5] = {0, 0, 0, 0, 0};
    elementary_of_matrix(m, ctx.n, e);
    for (int k = 3; k <= ctx.n; ++k)
        if (e[k] != static_cast<I128>(ctx.targets[static_cast<size_t>(k)])) return 0;
    return 1;
}

// enumerate the final off-diagonal pair from the e_2 constraint
std::uint64_t generic_close_pair(const GenericCtx& ctx, std::int64_t m[4][4], std::int64_t norm2) {
    auto [i, j] = ctx.pairs.back();
    // e2 with the last pair's product treated as unknown X:
    // e2 = sum_{k<l} (m_kk m_ll) - sum_{pairs except last} m_kl m_lk - X
    std::int64_t known = 0;
    for (int k = 0; k < ctx.n; ++k)
        for (int l = k + 1; l < ctx.n; ++l) known += m[k][k] * m[l][l];
    for (size_t t = 0; t + 1 < ctx.pairs.size(); ++t) {
        auto [k, l] = ctx.pairs[t];
        known -= m[k][l] * m[l][k];
    }
    std::int64_t X = known - ctx.targets[2];  // required product m_ij * m_ji
    std::int64_t budget = ctx.B2 - norm2;
    if (budget < 0) return 0;
    std::int64_t s = isqrt_i64(budget);
    std::uint64_t total = 0;
    for (std::int64_t u = -s; u <= s; ++u) {
        std::int64_t rem2 = budget - u * u;
        if (rem2 < 0) continue;
        m[i][j] = u;
        if (u == 0) {
            if (X != 0) continue;
            std::int64_t sv = isqrt_i64(rem2);
            for (std::int64_t v = -sv; v <= sv; ++v) {
                m[j][i] = v;
                total += generic_leaf_check(ctx, m);
            }
        } else {
            if (X % u != 0) continue;
            std::int64_t v = X / u;
            if (v * v > rem2) continue;
            m[j][i] = v;
            total += generic_leaf_check(ctx, m);
        }
    }
    m[i][j] = m[j][i] = 0;
    return total;
}

std::uint64_t generic_offdiag(const GenericCtx& ctx, std::int64_t m[4][4], size_t pair_idx,
                              std::int64_t norm2) {
    if (pair_idx + 1 == ctx.pairs.size()) return generic_close_pair(ctx, m, norm2);
    auto [i, j] = ctx.pairs[pair_idx];
    std::int64_t budget = ctx.B2 - norm2;
    std::int64_t s = isqrt_i64(budget);
    std::uint64_t total = 0;
    for (std::int64_t u = -s; u <= s; ++u) {
        std::int64_t n1 = norm2 + u * u;
        std::int64_t s2 = isqrt_i64(ctx.B2 - n1);
        m[i][j] = u;
        for (std::int64_t v = -s2; v <= s2; ++v) {
            m[j][i] = v;
            total += generic_offdiag(ctx, m, pair_idx + 1, n1 + v * v);
        }
    }
    m[i][j] = m[j][i] = 0;
    return total;
}

std::uint64_t generic_diag(const GenericCtx& ctx, std::int64_t m[4][4], int pos, std::int64_t norm2,
                           std::int64_t diag_sum, std::int64_t d0_lo, std::int64_t d0_hi) {
    if (pos == ctx.n - 1) {
        std::int64_t last = ctx.targets[1] - diag_sum;
        std::int64_t n1 = norm2 + last * last;
        if (n1 > ctx.B2) return 0;
        m[pos][pos] = last;
        std::uint64_t r = generic_offdiag(ctx, m, 0, n1);
        m[pos][pos] = 0;
        return r;
    }
    std::int64_t s = isqrt_i64(ctx.B2 - norm2);
    std::int64_t lo = -s, hi = s;
    if (pos == 0) {
        lo = std::max(lo, d0_lo);
        hi = std::min(hi, d0_hi);
    }
    std::uint64_t total = 0;
    for (std::int64_t u = lo; u <= hi; ++u) {
        m[pos][pos] = u;
        total += generic_diag(ctx, m, pos + 1, norm2 + u * u, diag_sum + u, d0_lo, d0_hi);
    }
    m[pos][pos] = 0;
    return total;
}

}  // namespace

CensusResult count_n2(const IntPolynomial& chi, double T, int threads) {
    if (chi.degree() != 2 || !chi.is_monic())
        throw ValidationError("count_n2: target must be a monic quadratic");
    Zint disc = discriminant(chi);
    if (disc.is_zero() || is_perfect_square(disc))
        throw ValidationError("count_n2: quadratic is reducible over Q");
    if (!chi.coeff(1).fits_slong() || !chi.coeff(0).fits_slong() ||
        abs(chi.coeff(1)) > Zint(100000000L) || abs(chi.coeff(0)) > Zint(4) * Zint(1000000000000000L))
        throw ScaleGuardError("count_n2: coefficients beyond the supported 64-bit scale");
    auto start = std::chrono::steady_clock::now();
    N2Params q;
    q.t = (-chi.coeff(1)).to_long();
    q.d = chi.coeff(0).to_long();
    q.B2 = norm_bound_sq(T);
    const SpfTable& spf = shared_spf();

    // diagonal range: a^2 + (t-a)^2 <= B2
    std::int64_t two_b2 = 2 * q.B2 - q.t * q.t;
    std::uint64_t total = 0;
    if (two_b2 >= 0) {
        std::int64_t s = isqrt_i64(two_b2);
        std::int64_t a_lo = (q.t - s) / 2 - 1;
        std::int64_t a_hi = (q.t + s) / 2 + 1;
        threads = std::max(1, threads);
        if (threads == 1 || a_hi - a_lo < 64) {
            total = n2_count_range(q, a_lo, a_hi, spf);
        } else {
            std::vector<std::uint64_t> partial(static_cast<size_t>(threads), 0);
            std::vector<std::thread> pool;
            std::int64_t len = (a_hi - a_lo + 1 + threads - 1) / threads;
            for (int k = 0; k < threads; ++k) {
                std::int64_t lo = a_lo + k * len;
                std::int64_t hi = std::min(a_hi, lo + len - 1);
                pool.emplace_back([&, k, lo, hi]() {
                    if (lo <= hi) partial[static_cast<size_t>(k)] = n2_count_range(q, lo, hi, spf);
                });
            }
            for (auto& th : pool) th.join();
            for (auto v : partial) total += v;
        }
    }
    CensusResult out;
    out.count = total;
    out.T = T;
    out.enumerator = to_string(Enumerator::N2Divisor);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.checksum = query_checksum(chi, T, out.enumerator);
    return out;
}

CensusResult count_generic(const IntPolynomial& chi, double T, int threads) {
    int n = chi.degree();
    if (n < 3 || n > 4)
        throw ValidationError(
            "count_generic: supported degrees are 3 and 4 (use the n2 enumerator for quadratics; "
            "higher degrees only have predictions)");
    if (!chi.is_monic()) throw ValidationError("count_generic: target must be monic");
    if (T > 10000.0) throw ScaleGuardError("count_generic: T beyond 1e4 is outside the supported scale");
    auto start = std::chrono::steady_clock::now();
    GenericCtx ctx;
    ctx.n = n;
    ctx.B2 = norm_bound_sq(T);
    ctx.targets = elementary_targets(chi);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) ctx.pairs.emplace_back(i, j);

    std::int64_t s = isqrt_i64(ctx.B2);
    threads = std::max(1, threads);
    std::uint64_t total = 0;
    if (threads == 1 || 2 * s + 1 < 8) {
        std::int64_t m[4][4] = {{0}};
        total = generic_diag(ctx, m, 0, 0, 0, -s, s);
    } else {
        std::vector<std::uint64_t> partial(static_cast<size_t>(threads), 0);
        std::vector<std::thread> pool;
        std::int64_t len = (2 * s + 1 + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            std::int64_t lo = -s + k * len;
            std::int64_t hi = std::min(s, lo + len - 1);
            pool.emplace_back([&, k, lo, hi]() {
                if (lo > hi) return;
                std::int64_t m[4][4] = {{0}};
                partial[static_cast<size_t>(k)] = generic_diag(ctx, m, 0, 0, 0, lo, hi);
            });
        }
        for (auto& th : pool) th.join();
        for (auto v : partial) total += v;
    }
    CensusResult out;
    out.count = total;
    out.T = T;
    out.enumerator = to_string(Enumerator::GenericDfs);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.checksum = query_checksum(chi, T, out.enumerator);
    return out;
}

namespace {

std::uint64_t naive_rec(const GenericCtx& ctx, std::int64_t m[4][4], int pos, std::int64_t norm2) {
    int n = ctx.n;
    if (pos == n * n) {
        I128 e[5] = {0, 0, 0, 0, 0};
        elementary_of_matrix(m, n, e);
        for (int k = 1; k <= n; ++k)
            if (e[k] != static_cast<I128>(ctx.targets[static_cast<size_t>(k)])) return 0;
        return 1;
    }
    int i = pos / n, j = pos % n;
    std::int64_t s = isqrt_i64(ctx.B2 - norm2);
    std::uint64_t total = 0;
    for (std::int64_t u = -s; u <= s; ++u) {
        m[i][j] = u;
        total += naive_rec(ctx, m, pos + 1, norm2 + u * u);
    }
    m[i][j] = 0;
    return total;
}

}  // namespace

CensusResult naive_reference(const IntPolynomial& chi, double T) {
    int n = chi.degree();
    if (n < 2 || n > 4) throw ValidationError("naive_reference: supported degrees are 2..4");
    if (!chi.is_monic()) throw ValidationError("naive_reference: target must be monic");
    double box = std::pow(2.0 * std::floor(T) + 1.0, n * n);
    if (box > 2.0e10)
        throw ScaleGuardError("naive_reference: box of " + std::to_string(box) +
                              " cells exceeds the 2e10 guard");
    auto start = std::chrono::steady_clock::now();
    GenericCtx ctx;
    ctx.n = n;
    ctx.B2 = norm_bound_sq(T);
    ctx.targets = elementary_targets(chi);
    std::int64_t m[4][4] = {{0}};
    CensusResult out;
    out.count = naive_rec(ctx, m, 0, 0);
    out.T = T;
    out.enumerator = to_string(Enumerator::Naive);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.checksum = query_checksum(chi, T, out.enumerator);
    return out;
}

CensusResult run_census(const IntPolynomial& chi, double T, Enumerator which, int threads) {
    switch (which) {
        case Enumerator::N2Divisor: return count_n2(chi, T, threads);
        case Enumerator::GenericDfs: return count_generic(chi, T, threads);
        case Enumerator::Naive: return naive_reference(chi, T);
        case Enumerator::Auto:
            if (chi.degree() == 2) return count_n2(chi, T, threads);
            if (chi.degree() == 3 || chi.degree() == 4) return count_generic(chi, T, threads);
            throw ValidationError("census: no enumerator for degree " + std::to_string(chi.degree()) +
                                  " (predictions remain available)");
    }
    throw ValidationError("census: bad enumerator");
}

}  // namespace charcensus
