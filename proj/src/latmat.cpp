#include "charcensus/latmat.hpp"

#include "charcensus/errors.hpp"

namespace charcensus {

ZMat zmat_identity(int n) {
    ZMat m(static_cast<size_t>(n), ZRow(static_cast<size_t>(n), Zint(0)));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Zint(1);
    return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
    size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    ZMat out(r, ZRow(c, Zint(0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < c; ++l) out[i][l] += a[i][j] * b[j][l];
        }
    return out;
}

ZMat zmat_transpose(const ZMat& a) {
    if (a.empty()) return a;
    size_t r = a.size(), c = a[0].size();
    ZMat out(c, ZRow(r, Zint(0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out[j][i] = a[i][j];
    return out;
}

ZRow zmat_apply(const ZMat& m, const ZRow& v) {
    ZRow out(m.size(), Zint(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) {
            if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] += m[i][j] * v[j];
        }
    return out;
}

ZMat hnf_rows(ZMat rows, int n) {
    const size_t nn = static_cast<size_t>(n);
    size_t m = rows.size();
    size_t pr = 0;
    for (size_t col = 0; col < nn; ++col) {
        while (true) {
            size_t best = m;
            for (size_t r = pr; r < m; ++r) {
                if (rows[r][col].is_zero()) continue;
                if (best == m || abs(rows[r][col]) < abs(rows[best][col])) best = r;
            }
            if (best == m) throw ConsistencyError("hnf_rows: rank deficiency at column " + std::to_string(col));
            std::swap(rows[pr], rows[best]);
            if (rows[pr][col].sgn() < 0)
                for (auto& z : rows[pr]) z = -z;
            bool remaining = false;
            for (size_t r = pr + 1; r < m; ++r) {
                if (rows[r][col].is_zero()) continue;
                Zint q = rows[r][col] / rows[pr][col];  // floor division
                if (!q.is_zero())
                    for (size_t l = 0; l < nn; ++l) rows[r][l] -= q * rows[pr][l];
                if (!rows[r][col].is_zero()) remaining = true;
            }
            if (!remaining) break;
        }
        ++pr;
    }
    ZMat h(rows.begin(), rows.begin() + static_cast<long>(nn));
    // reduce entries above each pivot into [0, pivot)
    for (size_t i = 0; i < nn; ++i) {
        for (size_t j = 0; j < i; ++j) {
            Zint q = h[j][i] / h[i][i];
            if (q.is_zero()) continue;
            for (size_t l = 0; l < nn; ++l) h[j][l] -= q * h[i][l];
        }
    }
    return h;
}

Zint hnf_det(const ZMat& h) {
    Zint d(1);
    for (size_t i = 0; i < h.size(); ++i) d *= h[i][i];
    return d;
}

ZMat adjugate_upper(const ZMat& h) {
    const int n = static_cast<int>(h.size());
    Zint det = hnf_det(h);
    // solve h * X = det * I column by column (back substitution over Q)
    std::vector<std::vector<Rat>> x(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int c = 0; c < n; ++c) {
        for (int i = n - 1; i >= 0; --i) {
            Rat rhs = (i == c) ? Rat(det) : Rat(0);
            for (int k = i + 1; k < n; ++k)
                rhs = rhs - Rat(h[static_cast<size_t>(i)][static_cast<size_t>(k)]) * x[static_cast<size_t>(k)][static_cast<size_t>(c)];
            x[static_cast<size_t>(i)][static_cast<size_t>(c)] = rhs / Rat(h[static_cast<size_t>(i)][static_cast<size_t>(i)]);
        }
    }
    ZMat out(static_cast<size_t>(n), ZRow(static_cast<size_t>(n), Zint(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = x[static_cast<size_t>(i)][static_cast<size_t>(j)].to_Zint();
    return out;
}

bool lattice_contains(const ZMat& h, const ZRow& v) {
    const int n = static_cast<int>(h.size());
    ZRow rem = v;
    for (int i = 0; i < n; ++i) {
        const Zint& piv = h[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (!divides(piv, rem[static_cast<size_t>(i)])) return false;
        Zint y = divexact(rem[static_cast<size_t>(i)], piv);
        if (y.is_zero()) continue;
        for (int l = i; l < n; ++l) rem[static_cast<size_t>(l)] -= y * h[static_cast<size_t>(i)][static_cast<size_t>(l)];
    }
    return true;
}

ZMat kernel_mod_prime_power(const ZMat& a, const Zint& p, unsigned e, int n) {
    // Lattice of (x, y) with x in Z^n, y in Z^r and A x = p^e y, via one HNF
    // with the y-block leading; rows whose y-part vanished carry a basis of
    // { x : A x = 0 mod p^e }.
    const size_t r = a.size();
    const size_t nn = static_cast<size_t>(n);
    Zint pe = pow(p, e);
    ZMat rows;
    rows.reserve(nn + r);
    for (size_t i = 0; i < nn; ++i) {
        ZRow row(r + nn, Zint(0));
        for (size_t j = 0; j < r; ++j) row[j] = a[j][i];  // column i of A
        row[r + i] = Zint(1);
        rows.push_back(std::move(row));
    }
    for (size_t j = 0; j < r; ++j) {
        ZRow row(r + nn, Zint(0));
        row[j] = pe;
        rows.push_back(std::move(row));
    }
    ZMat h = hnf_rows(std::move(rows), static_cast<int>(r + nn));
    ZMat out;
    for (size_t i = r; i < r + nn; ++i) {
        ZRow x(nn);
        for (size_t j = 0; j < nn; ++j) x[j] = h[i][r + j];
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace charcensus
