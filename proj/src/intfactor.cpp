#include "charcensus/intfactor.hpp"

#include <algorithm>
#include <numeric>

#include "charcensus/errors.hpp"

namespace charcensus {

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic base set for n < 2^64
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<bool> comp(static_cast<size_t>(limit) + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

SpfTable::SpfTable(std::uint32_t bound) {
    if (bound < 1) bound = 1;
    spf_.resize(static_cast<size_t>(bound) + 1, 0);
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (spf_[i] == 0) {
            for (std::uint64_t j = i; j <= bound; j += i)
                if (spf_[j] == 0) spf_[j] = i;
        }
    }
}

void SpfTable::factor_small(std::uint64_t n, std::vector<std::pair<std::uint64_t, int>>& out) const {
    while (n > 1) {
        std::uint32_t p = spf_[static_cast<std::uint32_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
    // Brent's cycle variant; n odd composite with no factor <= 13.
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t ys = y;
        const std::uint64_t m = 128;
        std::uint64_t r = 1, q = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && d == 1) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                k += lim;
            }
            r <<= 1;
        } while (d == 1);
        if (d == n) {
            d = 1;
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::pair<std::uint64_t, int>>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.emplace_back(n, 1);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

void merge_exponents(std::vector<std::pair<std::uint64_t, int>>& fac) {
    std::sort(fac.begin(), fac.end());
    size_t w = 0;
    for (size_t i = 0; i < fac.size(); ++i) {
        if (w > 0 && fac[w - 1].first == fac[i].first)
            fac[w - 1].second += fac[i].second;
        else
            fac[w++] = fac[i];
    }
    fac.resize(w);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n, const SpfTable& spf) {
    std::vector<std::pair<std::uint64_t, int>> out;
    if (n <= 1) return out;
    if (n <= spf.bound()) {
        spf.factor_small(n, out);
        std::sort(out.begin(), out.end());
        return out;
    }
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    for (std::uint64_t p = 17; p <= 4096 && p * p <= n; p += 2) {
        if (n <= spf.bound()) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (n <= spf.bound())
            spf.factor_small(n, out);
        else
            factor_rec(n, out);
    }
    merge_exponents(out);
    return out;
}

std::vector<std::uint64_t> divisors_from_factorization(
    const std::vector<std::pair<std::uint64_t, int>>& fac) {
    std::vector<std::uint64_t> divs{1};
    for (const auto& [p, e] : fac) {
        size_t base = divs.size();
        std::uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

std::vector<std::pair<Zint, int>> factor_Zint(const Zint& n_in, std::uint32_t trial_bound) {
    std::vector<std::pair<Zint, int>> out;
    Zint n = abs(n_in);
    if (n <= Zint(1)) return out;
    auto primes = primes_up_to(trial_bound);
    for (std::uint32_t p : primes) {
        Zint zp(static_cast<unsigned long>(p));
        if (divides(zp, n)) {
            int e = static_cast<int>(pval(n, zp));
            for (int i = 0; i < e; ++i) n = divexact(n, zp);
            out.emplace_back(zp, e);
        }
        if (n == Zint(1)) break;
    }
    if (n > Zint(1)) {
        if (n.probab_prime() > 0) {
            out.emplace_back(n, 1);
        } else if (mpz_sizeinbase(n.raw(), 2) <= 63) {
            SpfTable tiny(2);
            auto fac = factor_u64(n.to_u64(), tiny);
            for (const auto& [p, e] : fac) out.emplace_back(Zint(static_cast<unsigned long>(p)), e);
        } else {
            throw ScaleGuardError(
                "factor_Zint: composite cofactor " + n.str() +
                " exceeds 64 bits; supply field invariants via config to bypass factorization");
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace charcensus
