#include "charcensus/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>

#include "charcensus/errors.hpp"

namespace charcensus {

std::ostream& operator<<(std::ostream& os, const Zint& a) { return os << a.str(); }
std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << a.str(); }

// ---------------------------------------------------------------------------
// IntPolynomial basics
// ---------------------------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<Zint> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

IntPolynomial IntPolynomial::from_strings(const std::vector<std::string>& dec) {
    std::vector<Zint> c;
    c.reserve(dec.size());
    for (const auto& s : dec) c.emplace_back(s);
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::x_power(int k) {
    std::vector<Zint> c(static_cast<size_t>(k) + 1, Zint(0));
    c.back() = Zint(1);
    return IntPolynomial(std::move(c));
}

const Zint& IntPolynomial::coeff(int i) const {
    static const Zint zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

Zint IntPolynomial::eval(const Zint& x) const {
    Zint acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return IntPolynomial();
    std::vector<Zint> d;
    d.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Zint(static_cast<long>(i)));
    return IntPolynomial(std::move(d));
}

std::vector<std::string> IntPolynomial::to_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& z : c_) out.push_back(z.str());
    return out;
}

std::string IntPolynomial::pretty() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Zint& a = coeff(i);
        if (a.is_zero()) continue;
        Zint mag = abs(a);
        if (first) {
            if (a.sgn() < 0) os << "-";
            first = false;
        } else {
            os << (a.sgn() < 0 ? " - " : " + ");
        }
        bool unit = (mag == Zint(1));
        if (i == 0) {
            os << mag.str();
        } else {
            if (!unit) os << mag.str() << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Zint> c(std::max(a.c_.size(), b.c_.size()), Zint(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Zint> c(std::max(a.c_.size(), b.c_.size()), Zint(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Zint> c(a.c_.size() + b.c_.size() - 1, Zint(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<Zint> c = a.c_;
    for (auto& z : c) z = -z;
    return IntPolynomial(std::move(c));
}

void IntPolynomial::divmod_monic(const IntPolynomial& a, const IntPolynomial& b,
                                 IntPolynomial& quot, IntPolynomial& rem) {
    if (!b.is_monic()) throw ValidationError("divmod_monic: divisor must be monic");
    std::vector<Zint> r = a.c_;
    int db = b.degree();
    std::vector<Zint> q(a.degree() >= db ? static_cast<size_t>(a.degree() - db + 1) : 0, Zint(0));
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
        Zint f = r[static_cast<size_t>(i)];
        if (f.is_zero()) continue;
        q[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.coeff(j);
    }
    if (static_cast<int>(r.size()) > db) r.resize(static_cast<size_t>(db));
    quot = IntPolynomial(std::move(q));
    rem = IntPolynomial(std::move(r));
}

bool IntPolynomial::try_exact_divide(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial& quot) {
    if (b.is_zero()) return false;
    if (a.is_zero()) {
        quot = IntPolynomial();
        return true;
    }
    if (b.degree() > a.degree()) return false;
    // Long division over Q, demanding exact integer quotients step by step.
    std::vector<Zint> r = a.c_;
    int db = b.degree();
    const Zint& lb = b.leading();
    std::vector<Zint> q(static_cast<size_t>(a.degree() - db + 1), Zint(0));
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
        Zint f = r[static_cast<size_t>(i)];
        if (f.is_zero()) continue;
        if (!divides(lb, f)) return false;
        Zint t = divexact(f, lb);
        q[static_cast<size_t>(i - db)] = t;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= t * b.coeff(j);
    }
    for (const auto& z : r)
        if (!z.is_zero()) return false;
    quot = IntPolynomial(std::move(q));
    return true;
}

Zint IntPolynomial::content() const {
    Zint g(0);
    for (const auto& z : c_) g = gcd(g, z);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return *this;
    Zint g = content();
    if (leading().sgn() < 0) g = -g;
    std::vector<Zint> c = c_;
    for (auto& z : c) z = divexact(z, g);
    return IntPolynomial(std::move(c));
}

// Pseudo-remainder: lc(b)^(da-db+1) * a  mod b, exact over Z.
static IntPolynomial prem(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Zint> r = a.coeffs();
    int db = b.degree();
    const Zint& lb = b.leading();
    int steps = a.degree() - db + 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
        Zint f = r[static_cast<size_t>(i)];
        for (auto& z : r) z *= lb;
        --steps;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.coeff(j);
        r.resize(static_cast<size_t>(i));
    }
    IntPolynomial rem{std::move(r)};
    // Make up skipped scalings so the result is exactly lc(b)^(da-db+1) * a mod b.
    if (steps > 0) {
        Zint scale = pow(lb, static_cast<unsigned long>(steps));
        std::vector<Zint> c = rem.coeffs();
        for (auto& z : c) z *= scale;
        rem = IntPolynomial(std::move(c));
    }
    return rem;
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPolynomial f = a.primitive_part(), g = b.primitive_part();
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        IntPolynomial r = prem(f, g).primitive_part();
        f = g;
        g = r;
        if (!g.is_zero() && f.degree() < g.degree()) std::swap(f, g);
    }
    Zint ca = a.content(), cb = b.content();
    Zint cg = gcd(ca, cb);
    std::vector<Zint> c = f.coeffs();
    for (auto& z : c) z *= cg;
    return IntPolynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Resultant via the subresultant PRS (Cohen, Alg. 3.3.7)
// ---------------------------------------------------------------------------

Zint resultant(const IntPolynomial& a_in, const IntPolynomial& b_in) {
    if (a_in.is_zero() || b_in.is_zero()) return Zint(0);
    if (b_in.degree() == 0) return pow(b_in.coeff(0), static_cast<unsigned long>(a_in.degree()));
    if (a_in.degree() == 0) return pow(a_in.coeff(0), static_cast<unsigned long>(b_in.degree()));

    IntPolynomial A = a_in.primitive_part(), B = b_in.primitive_part();
    Zint ca = a_in.content(), cb = b_in.content();
    if (a_in.leading().sgn() < 0) ca = -ca;
    if (b_in.leading().sgn() < 0) cb = -cb;
    int s = 1;
    Zint t = pow(ca, static_cast<unsigned long>(b_in.degree())) *
             pow(cb, static_cast<unsigned long>(a_in.degree()));
    if (A.degree() < B.degree()) {
        if ((A.degree() % 2) == 1 && (B.degree() % 2) == 1) s = -s;
        std::swap(A, B);
    }
    Zint g(1), h(1);
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() % 2) == 1 && (B.degree() % 2) == 1) s = -s;
        IntPolynomial R = prem(A, B);
        A = B;
        {
            Zint div = g * pow(h, static_cast<unsigned long>(delta));
            std::vector<Zint> c = R.coeffs();
            for (auto& z : c) z = divexact(z, div);
            B = IntPolynomial(std::move(c));
        }
        g = A.leading();
        // h = g^delta * h^(1-delta)
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = divexact(pow(g, static_cast<unsigned long>(delta)),
                         pow(h, static_cast<unsigned long>(delta - 1)));
        }
        if (B.is_zero()) return Zint(0);
        if (B.degree() == 0) {
            // h' = lc(B)^deg(A) / h^(deg(A)-1)
            Zint hp = pow(B.coeff(0), static_cast<unsigned long>(A.degree()));
            if (A.degree() >= 1) hp = divexact(hp, pow(h, static_cast<unsigned long>(A.degree() - 1)));
            Zint res = hp * t;
            return s < 0 ? -res : res;
        }
    }
}

Zint discriminant(const IntPolynomial& f) {
    int n = f.degree();
    if (n < 1) throw ValidationError("discriminant: degree must be at least 1");
    if (n == 1) return Zint(1);
    Zint res = resultant(f, f.derivative());
    Zint d = divexact(res, f.leading());
    if (((static_cast<long>(n) * (n - 1)) / 2) % 2 == 1) d = -d;
    return d;
}

// ---------------------------------------------------------------------------
// Sturm chain
// ---------------------------------------------------------------------------

// Remainder scaled by a positive power of lc(b); sign-faithful for Sturm use.
static IntPolynomial prem_positive(const IntPolynomial& a, const IntPolynomial& b) {
    int delta = a.degree() - b.degree() + 1;
    int scaled = delta + (delta % 2);  // even power of lc(b) keeps signs
    IntPolynomial r = prem(a, b);
    if (scaled > delta) {
        std::vector<Zint> c = r.coeffs();
        for (auto& z : c) z *= b.leading();
        r = IntPolynomial(std::move(c));
    }
    return r;
}

static int sign_at_inf(const IntPolynomial& p, bool minus) {
    if (p.is_zero()) return 0;
    int s = p.leading().sgn();
    if (minus && (p.degree() % 2 == 1)) s = -s;
    return s;
}

int count_real_roots(const IntPolynomial& f) {
    if (f.degree() < 1) throw ValidationError("count_real_roots: degree must be at least 1");
    IntPolynomial g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) {
        throw ValidationError("count_real_roots: input is not squarefree; gcd(f, f') = " + g.pretty());
    }
    // Content is divided out with a positive scalar only: Sturm needs signs kept.
    auto shrink = [](const IntPolynomial& p) {
        if (p.is_zero()) return p;
        Zint c = p.content();
        std::vector<Zint> v = p.coeffs();
        for (auto& z : v) z = divexact(z, c);
        return IntPolynomial(std::move(v));
    };
    std::vector<IntPolynomial> chain;
    chain.push_back(shrink(f));
    chain.push_back(shrink(f.derivative()));
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        IntPolynomial r = prem_positive(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(shrink(-r));
    }
    auto variations = [&chain](bool minus) {
        int v = 0, prev = 0;
        for (const auto& p : chain) {
            int s = sign_at_inf(p, minus);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(true) - variations(false);
}

bool is_totally_real(const IntPolynomial& f) { return count_real_roots(f) == f.degree(); }

// ---------------------------------------------------------------------------
// F_p arithmetic
// ---------------------------------------------------------------------------

namespace {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, p);
        b = mulmod_u64(b, b, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    // p prime
    return powmod_u64(a % p, p - 2, p);
}

}  // namespace

void ModPolynomial::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

ModPolynomial ModPolynomial::reduce(const IntPolynomial& f, std::uint64_t p) {
    ModPolynomial g;
    g.p = p;
    g.c.reserve(static_cast<size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) g.c.push_back(f.coeff(i).mod_u64(p));
    g.trim();
    return g;
}

IntPolynomial ModPolynomial::lift() const {
    std::vector<Zint> out;
    out.reserve(c.size());
    for (auto v : c) out.emplace_back(Zint(static_cast<unsigned long>(v)));
    return IntPolynomial(std::move(out));
}

bool ModPolynomial::operator<(const ModPolynomial& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = c.size(); i-- > 0;)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

std::string ModPolynomial::pretty() const { return lift().pretty(); }

ModPolynomial mod_add(const ModPolynomial& a, const ModPolynomial& b) {
    ModPolynomial r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        std::uint64_t x = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = x >= a.p ? x - a.p : x;
    }
    r.trim();
    return r;
}

ModPolynomial mod_sub(const ModPolynomial& a, const ModPolynomial& b) {
    ModPolynomial r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        std::uint64_t x = (i < a.c.size() ? a.c[i] : 0);
        std::uint64_t y = (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = x >= y ? x - y : x + a.p - y;
    }
    r.trim();
    return r;
}

ModPolynomial mod_mul(const ModPolynomial& a, const ModPolynomial& b) {
    ModPolynomial r;
    r.p = a.p;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            r.c[i + j] = (r.c[i + j] + static_cast<__uint128_t>(a.c[i]) * b.c[j]) % a.p;
        }
    }
    r.trim();
    return r;
}

void mod_divmod(const ModPolynomial& a, const ModPolynomial& b, ModPolynomial& q, ModPolynomial& r) {
    if (b.is_zero()) throw ValidationError("mod_divmod: division by zero polynomial");
    std::uint64_t p = a.p;
    r = a;
    q.p = p;
    q.c.assign(a.degree() >= b.degree() ? static_cast<size_t>(a.degree() - b.degree() + 1) : 0, 0);
    std::uint64_t inv_lb = invmod_u64(b.c.back(), p);
    int db = b.degree();
    for (int i = r.degree(); i >= db; --i) {
        std::uint64_t f = mulmod_u64(r.c[static_cast<size_t>(i)], inv_lb, p);
        if (f == 0) continue;
        q.c[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            std::uint64_t sub = mulmod_u64(f, b.c[static_cast<size_t>(j)], p);
            std::uint64_t& tgt = r.c[static_cast<size_t>(i - db + j)];
            tgt = tgt >= sub ? tgt - sub : tgt + p - sub;
        }
    }
    if (r.degree() >= db) r.c.resize(static_cast<size_t>(db));
    r.trim();
    q.trim();
}

ModPolynomial mod_make_monic(ModPolynomial f) {
    if (f.is_zero()) return f;
    std::uint64_t inv = invmod_u64(f.c.back(), f.p);
    for (auto& x : f.c) x = mulmod_u64(x, inv, f.p);
    return f;
}

ModPolynomial mod_gcd(ModPolynomial a, ModPolynomial b) {
    while (!b.is_zero()) {
        ModPolynomial q, r;
        mod_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return mod_make_monic(a);
}

ModPolynomial mod_powmod(const ModPolynomial& base, const Zint& e, const ModPolynomial& f) {
    ModPolynomial result;
    result.p = f.p;
    result.c = {1 % f.p};
    ModPolynomial b = base;
    {
        ModPolynomial q, r;
        mod_divmod(b, f, q, r);
        b = r;
    }
    size_t bits = mpz_sizeinbase(e.raw(), 2);
    if (e.is_zero()) return result;
    for (size_t i = bits; i-- > 0;) {
        result = mod_mul(result, result);
        ModPolynomial q, r;
        mod_divmod(result, f, q, r);
        result = r;
        if (mpz_tstbit(e.raw(), i)) {
            result = mod_mul(result, b);
            mod_divmod(result, f, q, r);
            result = r;
        }
    }
    return result;
}

ModPolynomial mod_pow_x(const ModPolynomial& f, const Zint& e) {
    ModPolynomial x;
    x.p = f.p;
    x.c = {0, 1 % f.p};
    x.trim();
    return mod_powmod(x, e, f);
}

// ---------------------------------------------------------------------------
// Factorization over F_p
// ---------------------------------------------------------------------------

namespace {

ModPolynomial random_modpoly(std::uint64_t p, int deg_below, std::mt19937_64& rng) {
    ModPolynomial v;
    v.p = p;
    v.c.resize(static_cast<size_t>(deg_below), 0);
    for (auto& x : v.c) x = rng() % p;
    v.trim();
    return v;
}

// Equal-degree splitting of a monic squarefree product of degree-d irreducibles.
void equal_degree_split(const ModPolynomial& f, int d, std::vector<ModPolynomial>& out,
                        std::mt19937_64& rng) {
    if (f.degree() == d) {
        out.push_back(mod_make_monic(f));
        return;
    }
    std::uint64_t p = f.p;
    while (true) {
        ModPolynomial v = random_modpoly(p, f.degree(), rng);
        if (v.degree() < 1) continue;
        ModPolynomial w;
        if (p == 2) {
            // Artin-Schreier trace: v + v^2 + v^4 + ... + v^(2^(d-1))  mod f
            ModPolynomial acc = v, term = v;
            for (int i = 1; i < d; ++i) {
                term = mod_mul(term, term);
                ModPolynomial q, r;
                mod_divmod(term, f, q, r);
                term = r;
                acc = mod_add(acc, term);
            }
            w = acc;
        } else {
            // v^((p^d - 1)/2) - 1  mod f
            Zint e = pow(Zint(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - Zint(1);
            e = divexact(e, Zint(2));
            ModPolynomial t = mod_powmod(v, e, f);
            ModPolynomial one;
            one.p = p;
            one.c = {1};
            w = mod_sub(t, one);
        }
        ModPolynomial g = mod_gcd(f, w);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            ModPolynomial q, r;
            mod_divmod(f, g, q, r);
            equal_degree_split(g, d, out, rng);
            equal_degree_split(mod_make_monic(q), d, out, rng);
            return;
        }
    }
}

// Distinct-degree decomposition of a monic squarefree polynomial.
void split_squarefree(const ModPolynomial& f_in, std::vector<ModPolynomial>& out,
                      std::mt19937_64& rng) {
    ModPolynomial f = mod_make_monic(f_in);
    std::uint64_t p = f.p;
    ModPolynomial h;  // x^(p^d) mod f, maintained incrementally
    h.p = p;
    h.c = {0, 1 % p};
    h.trim();
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = mod_powmod(h, Zint(static_cast<unsigned long>(p)), f);
        ModPolynomial hx = h;
        // h - x
        ModPolynomial x;
        x.p = p;
        x.c = {0, 1 % p};
        x.trim();
        ModPolynomial g = mod_gcd(f, mod_sub(hx, x));
        if (g.degree() > 0) {
            equal_degree_split(g, d, out, rng);
            ModPolynomial q, r;
            mod_divmod(f, g, q, r);
            f = mod_make_monic(q);
            ModPolynomial qq, rr;
            mod_divmod(h, f, qq, rr);
            h = rr;
        }
    }
    if (f.degree() > 0) out.push_back(f);
}

// f(x) = g(x^p) -> g, valid over F_p where coefficients are Frobenius-fixed.
ModPolynomial pth_root(const ModPolynomial& f) {
    ModPolynomial g;
    g.p = f.p;
    g.c.resize(f.c.size() / static_cast<size_t>(f.p) + 1, 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        g.c[i / static_cast<size_t>(f.p)] = f.c[i];
    }
    g.trim();
    return g;
}

void factor_monic_mod(const ModPolynomial& f_in, std::vector<std::pair<ModPolynomial, int>>& out,
                      int mult_scale, std::mt19937_64& rng) {
    ModPolynomial f = f_in;
    if (f.degree() <= 0) return;
    // Derivative
    ModPolynomial df;
    df.p = f.p;
    for (size_t i = 1; i < f.c.size(); ++i)
        df.c.push_back(mulmod_u64(f.c[i], i % f.p, f.p));
    df.trim();
    if (df.is_zero()) {
        factor_monic_mod(pth_root(f), out, mult_scale * static_cast<int>(f.p), rng);
        return;
    }
    ModPolynomial u;
    {
        ModPolynomial g = mod_gcd(f, df);
        ModPolynomial q, r;
        mod_divmod(f, g, q, r);
        u = mod_make_monic(q);  // squarefree part (omits factors with multiplicity divisible by p)
    }
    std::vector<ModPolynomial> irr;
    split_squarefree(u, irr, rng);
    ModPolynomial rem = f;
    for (const auto& q : irr) {
        int m = 0;
        while (true) {
            ModPolynomial quo, r;
            mod_divmod(rem, q, quo, r);
            if (!r.is_zero()) break;
            rem = quo;
            ++m;
        }
        out.emplace_back(q, m * mult_scale);
    }
    if (rem.degree() > 0) {
        // all remaining multiplicities divisible by p
        factor_monic_mod(pth_root(rem), out, mult_scale * static_cast<int>(f.p), rng);
    }
}

}  // namespace

ModPFactorization factor_mod_p(const IntPolynomial& f, std::uint64_t p, std::uint64_t seed) {
    if (p < 2) throw ValidationError("factor_mod_p: modulus must be a prime");
    ModPFactorization out;
    out.p = p;
    ModPolynomial g = ModPolynomial::reduce(f, p);
    if (g.is_zero() || g.degree() == 0) return out;
    std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
    g = mod_make_monic(g);
    factor_monic_mod(g, out.factors, 1, rng);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

namespace {

// Coefficients reduced into [0, m).
IntPolynomial poly_mod(const IntPolynomial& f, const Zint& m) {
    std::vector<Zint> c = f.coeffs();
    for (auto& z : c) z = z % m;
    return IntPolynomial(std::move(c));
}

// Division with remainder mod m by a monic divisor (leading coefficient 1 mod m).
void divmod_mod(const IntPolynomial& a, const IntPolynomial& b, const Zint& m,
                IntPolynomial& q, IntPolynomial& r) {
    std::vector<Zint> rr = poly_mod(a, m).coeffs();
    int db = b.degree();
    std::vector<Zint> qq(static_cast<int>(rr.size()) > db ? rr.size() - static_cast<size_t>(db) : 0,
                         Zint(0));
    for (int i = static_cast<int>(rr.size()) - 1; i >= db; --i) {
        Zint f = rr[static_cast<size_t>(i)] % m;
        if (f.is_zero()) continue;
        qq[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            rr[static_cast<size_t>(i - db + j)] = (rr[static_cast<size_t>(i - db + j)] - f * b.coeff(j)) % m;
    }
    if (static_cast<int>(rr.size()) > db) rr.resize(static_cast<size_t>(db));
    q = IntPolynomial(std::move(qq));
    r = IntPolynomial(std::move(rr));
}

IntPolynomial mul_mod(const IntPolynomial& a, const IntPolynomial& b, const Zint& m) {
    return poly_mod(a * b, m);
}

}  // namespace

std::pair<IntPolynomial, IntPolynomial> hensel_lift(const IntPolynomial& f,
                                                    const IntPolynomial& g_in,
                                                    const IntPolynomial& h_in,
                                                    std::uint64_t p, unsigned k) {
    if (!f.is_monic()) throw ValidationError("hensel_lift: f must be monic");
    ModPolynomial gp = ModPolynomial::reduce(g_in, p);
    ModPolynomial hp = ModPolynomial::reduce(h_in, p);
    if (mod_gcd(gp, hp).degree() != 0)
        throw ValidationError("hensel_lift: factors not coprime mod " + std::to_string(p));
    {
        ModPolynomial prod = mod_mul(gp, hp);
        ModPolynomial fp = ModPolynomial::reduce(f, p);
        if (!(mod_sub(prod, fp).is_zero()))
            throw ValidationError("hensel_lift: f != g*h mod " + std::to_string(p));
    }

    // Bezout cofactors a*g + b*h = 1 mod p via the extended Euclidean algorithm.
    ModPolynomial r0 = gp, r1 = hp;
    ModPolynomial s0, s1, t0, t1;
    s0.p = s1.p = t0.p = t1.p = p;
    s0.c = {1};
    t1.c = {1};
    while (!r1.is_zero()) {
        ModPolynomial q, r;
        mod_divmod(r0, r1, q, r);
        ModPolynomial s2 = mod_sub(s0, mod_mul(q, s1));
        ModPolynomial t2 = mod_sub(t0, mod_mul(q, t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd = constant; normalize to 1
    std::uint64_t inv = invmod_u64(r0.c[0], p);
    for (auto& x : s0.c) x = mulmod_u64(x, inv, p);
    for (auto& x : t0.c) x = mulmod_u64(x, inv, p);

    Zint P(static_cast<unsigned long>(p));
    IntPolynomial g = poly_mod(g_in, P), h = poly_mod(h_in, P);
    IntPolynomial a = s0.lift(), b = t0.lift();  // a*g + b*h = 1 mod p
    Zint m = P;
    Zint target = pow(P, k);
    while (m < target) {
        Zint m2 = m * m;
        // Lift the factorization.
        IntPolynomial e = poly_mod(f - g * h, m2);
        IntPolynomial q, dg;
        divmod_mod(mul_mod(b, e, m2), g, m2, q, dg);
        IntPolynomial dh = poly_mod(mul_mod(a, e, m2) + mul_mod(q, h, m2), m2);
        g = poly_mod(g + dg, m2);
        h = poly_mod(h + dh, m2);
        // Lift the Bezout relation.
        IntPolynomial err = poly_mod(mul_mod(a, g, m2) + mul_mod(b, h, m2) - IntPolynomial({Zint(1)}), m2);
        IntPolynomial qa, da;
        divmod_mod(mul_mod(a, err, m2), h, m2, qa, da);
        a = poly_mod(a - da, m2);
        b = poly_mod(b - mul_mod(b, err, m2) - mul_mod(qa, g, m2), m2);
        m = m2;
    }
    return {poly_mod(g, target), poly_mod(h, target)};
}

// ---------------------------------------------------------------------------
// Irreducibility over Q
// ---------------------------------------------------------------------------

namespace {

const std::uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                      41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

IntPolynomial centered(const IntPolynomial& f, const Zint& m) {
    Zint half = m / Zint(2);
    std::vector<Zint> c = f.coeffs();
    for (auto& z : c) {
        z = z % m;
        if (z > half) z -= m;
    }
    return IntPolynomial(std::move(c));
}

}  // namespace

bool is_irreducible_over_Q(const IntPolynomial& f, std::uint64_t seed) {
    if (!f.is_monic()) throw ValidationError("is_irreducible_over_Q: polynomial must be monic");
    int n = f.degree();
    if (n > kMaxDegree) throw ValidationError("is_irreducible_over_Q: degree cap is 8");
    if (n <= 0) return false;
    if (n == 1) return true;
    Zint disc = discriminant(f);
    if (disc.is_zero()) return false;  // repeated factor

    // (i) an irreducible image mod a prime not dividing the discriminant certifies f.
    std::uint64_t good_p = 0;
    for (std::uint64_t p : kSmallPrimes) {
        if (divides(Zint(static_cast<unsigned long>(p)), disc)) continue;
        auto fac = factor_mod_p(f, p, seed);
        if (fac.factors.size() == 1 && fac.factors[0].second == 1) return true;
        if (good_p == 0) good_p = p;
    }
    if (good_p == 0) {
        // discriminant divisible by every small prime; search onward for a squarefree image
        Zint cand(101);
        while (true) {
            if (cand.probab_prime() && !divides(cand, disc)) {
                good_p = cand.to_u64();
                break;
            }
            cand += Zint(2);
        }
        auto fac = factor_mod_p(f, good_p, seed);
        if (fac.factors.size() == 1 && fac.factors[0].second == 1) return true;
    }

    // (ii) Hensel lift a squarefree mod-p factorization past the Landau-Mignotte
    // coefficient bound and try all factor-subset recombinations.
    auto fac = factor_mod_p(f, good_p, seed);
    std::vector<IntPolynomial> locals;
    for (const auto& [q, m] : fac.factors) {
        if (m != 1) throw ConsistencyError("is_irreducible_over_Q: non-squarefree image at a good prime");
        locals.push_back(q.lift());
    }
    // Landau-Mignotte: any monic factor has |coeff| <= 2^(n-1) * ||f||_2.
    Zint norm2(0);
    for (int i = 0; i <= n; ++i) norm2 += f.coeff(i) * f.coeff(i);
    Zint bound = pow(Zint(2), static_cast<unsigned long>(n - 1)) * (isqrt(norm2) + Zint(1));
    Zint P(static_cast<unsigned long>(good_p));
    unsigned k = 1;
    Zint pk = P;
    while (pk <= bound * Zint(2)) {
        pk *= pk;
        k *= 2;
    }
    // Lift the full factorization pairwise: factor off locals one at a time.
    std::vector<IntPolynomial> lifted;
    {
        IntPolynomial rest = f;
        for (size_t i = 0; i + 1 < locals.size(); ++i) {
            IntPolynomial gg = locals[i];
            IntPolynomial hh;
            {
                // product of the remaining local factors mod p
                ModPolynomial acc;
                acc.p = good_p;
                acc.c = {1};
                for (size_t j = i + 1; j < locals.size(); ++j)
                    acc = mod_mul(acc, ModPolynomial::reduce(locals[j], good_p));
                hh = acc.lift();
            }
            auto [G, H] = hensel_lift(rest, gg, hh, good_p, k);
            lifted.push_back(G);
            rest = H;
        }
        lifted.push_back(rest);
    }
    size_t r = lifted.size();
    if (r == 1) return true;
    // subsets of the lifted factors; |S| <= r/2 suffices (complements covered)
    for (std::uint32_t mask = 1; mask + 1 < (1u << r); ++mask) {
        int bits = __builtin_popcount(mask);
        if (bits > static_cast<int>(r) / 2) continue;
        if (bits == static_cast<int>(r) - bits && (mask & 1u) == 0) continue;  // fix one side of the split
        IntPolynomial cand({Zint(1)});
        for (size_t i = 0; i < r; ++i)
            if (mask & (1u << i)) cand = poly_mod(cand * lifted[i], pk);
        cand = centered(cand, pk);
        IntPolynomial quot;
        if (IntPolynomial::try_exact_divide(f, cand, quot)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Float root-product oracle (test support)
// ---------------------------------------------------------------------------

double discriminant_float_oracle(const IntPolynomial& f) {
    int n = f.degree();
    std::vector<std::complex<long double>> roots;
    // Durand-Kerner iteration
    std::vector<std::complex<long double>> z(static_cast<size_t>(n));
    std::complex<long double> seed(0.4L, 0.9L);
    std::complex<long double> acc(1.0L, 0.0L);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        z[static_cast<size_t>(i)] = acc;
    }
    auto eval = [&](std::complex<long double> x) {
        std::complex<long double> v(0.0L, 0.0L);
        for (int i = n; i >= 0; --i) v = v * x + static_cast<long double>(f.coeff(i).to_double());
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        long double moved = 0.0L;
        for (int i = 0; i < n; ++i) {
            std::complex<long double> num = eval(z[static_cast<size_t>(i)]);
            std::complex<long double> den(1.0L, 0.0L);
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
            std::complex<long double> d = num / den;
            z[static_cast<size_t>(i)] -= d;
            moved += std::abs(d);
        }
        if (moved < 1e-24L) break;
    }
    std::complex<long double> prod(1.0L, 0.0L);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto d = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            prod *= d * d;
        }
    return static_cast<double>(prod.real());
}

}  // namespace charcensus
