#include "finstack/zlin.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace finstack {

namespace {

long long checked_mul(long long a, long long b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("integer overflow in zlin");
    return static_cast<long long>(r);
}

long long checked_add(long long a, long long b) {
    __int128 r = static_cast<__int128>(a) + b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("integer overflow in zlin");
    return static_cast<long long>(r);
}

// row[i] += k * row[j]
void row_op(ZMat& m, int i, int j, long long k) {
    for (size_t c = 0; c < m[i].size(); ++c)
        m[i][c] = checked_add(m[i][c], checked_mul(k, m[j][c]));
}

// col[i] += k * col[j]
void col_op(ZMat& m, int i, int j, long long k) {
    for (auto& row : m) row[i] = checked_add(row[i], checked_mul(k, row[j]));
}

void swap_rows(ZMat& m, int i, int j) { std::swap(m[i], m[j]); }

void swap_cols(ZMat& m, int i, int j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}

} // namespace

ZMat zmat(int rows, int cols) { return ZMat(rows, ZVec(cols, 0)); }

ZMat zmat_identity(int n) {
    ZMat m = zmat(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
    int n = static_cast<int>(a.size());
    int k = n ? static_cast<int>(a[0].size()) : 0;
    int m = b.empty() ? 0 : static_cast<int>(b[0].size());
    ZMat r = zmat(n, m);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (int j = 0; j < m; ++j)
                r[i][j] = checked_add(r[i][j], checked_mul(a[i][t], b[t][j]));
        }
    return r;
}

ZVec zmat_apply(const ZMat& m, const ZVec& x) {
    ZVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (m[i][j] != 0) r[i] = checked_add(r[i], checked_mul(m[i][j], x[j]));
    return r;
}

std::vector<long long> Smith::diag() const {
    std::vector<long long> d;
    size_t n = std::min(s.size(), s.empty() ? size_t{0} : s[0].size());
    for (size_t i = 0; i < n; ++i) d.push_back(s[i][i]);
    return d;
}

Smith smith_normal_form(ZMat m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    Smith res;
    res.u = zmat_identity(rows);
    res.v = zmat_identity(cols);

    auto urow = [&](int i, int j, long long k) { row_op(m, i, j, k); row_op(res.u, i, j, k); };
    auto vcol = [&](int i, int j, long long k) { col_op(m, i, j, k); col_op(res.v, i, j, k); };
    auto uswap = [&](int i, int j) { swap_rows(m, i, j); swap_rows(res.u, i, j); };
    auto vswap = [&](int i, int j) { swap_cols(m, i, j); swap_cols(res.v, i, j); };

    int t = 0;
    while (t < rows && t < cols) {
        // locate a pivot of minimal absolute value in the remaining block
        int pi = -1, pj = -1;
        long long best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pi < 0 || std::llabs(m[i][j]) < best)) {
                    pi = i;
                    pj = j;
                    best = std::llabs(m[i][j]);
                }
        if (pi < 0) break; // remaining block is zero
        if (pi != t) uswap(pi, t);
        if (pj != t) vswap(pj, t);

        bool clean = true;
        for (int i = t + 1; i < rows; ++i)
            if (m[i][t] != 0) {
                urow(i, t, -(m[i][t] / m[t][t]));
                if (m[i][t] != 0) clean = false;
            }
        for (int j = t + 1; j < cols; ++j)
            if (m[t][j] != 0) {
                vcol(j, t, -(m[t][j] / m[t][t]));
                if (m[t][j] != 0) clean = false;
            }
        if (!clean) continue; // pivot shrank; repeat with smaller pivot

        // enforce divisibility d_t | remaining entries
        bool redo = false;
        for (int i = t + 1; i < rows && !redo; ++i)
            for (int j = t + 1; j < cols && !redo; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    urow(t, i, 1);
                    redo = true;
                }
        if (redo) continue;

        if (m[t][t] < 0) {
            for (int j = 0; j < cols; ++j) m[t][j] = -m[t][j];
            for (int j = 0; j < rows; ++j) res.u[t][j] = -res.u[t][j];
        }
        ++t;
    }
    res.s = std::move(m);
    return res;
}

std::vector<ZVec> integer_kernel(const ZMat& m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    if (rows == 0) {
        // every vector is in the kernel
        std::vector<ZVec> basis;
        for (int j = 0; j < cols; ++j) {
            ZVec e(cols, 0);
            e[j] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    Smith sn = smith_normal_form(m);
    std::vector<ZVec> basis;
    for (int j = 0; j < cols; ++j) {
        bool free_coord = (j >= rows) || (sn.s[j][j] == 0);
        if (!free_coord) continue;
        ZVec x(cols, 0);
        for (int i = 0; i < cols; ++i) x[i] = sn.v[i][j];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<ZVec> solve_integer(const ZMat& m, const ZVec& b) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    if (rows == 0) return ZVec(cols, 0);
    Smith sn = smith_normal_form(m);
    ZVec c = zmat_apply(sn.u, b);
    ZVec y(cols, 0);
    for (int i = 0; i < rows; ++i) {
        long long d = (i < cols) ? sn.s[i][i] : 0;
        if (d != 0) {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return zmat_apply(sn.v, y);
}

std::vector<long long> cokernel_invariants(const ZMat& m, int n) {
    std::vector<long long> inv;
    if (m.empty() || m[0].empty()) {
        inv.assign(n, 0);
        return inv;
    }
    Smith sn = smith_normal_form(m);
    auto d = sn.diag();
    int rank = 0;
    for (long long x : d)
        if (x != 0) {
            if (x != 1) inv.push_back(x);
            ++rank;
        }
    for (int i = rank; i < n; ++i) inv.push_back(0);
    return inv;
}

std::optional<std::vector<int>> solve_mod(const ZMat& c, const std::vector<int>& b, int modulus) {
    int rows = static_cast<int>(c.size());
    int cols = rows ? static_cast<int>(c[0].size()) : 0;
    if (modulus == 1) return std::vector<int>(cols, 0);
    ZMat aug = zmat(rows, cols + rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = c[i][j];
        aug[i][cols + i] = modulus;
    }
    ZVec bb(b.begin(), b.end());
    auto sol = solve_integer(aug, bb);
    if (!sol) return std::nullopt;
    std::vector<int> x(cols);
    for (int j = 0; j < cols; ++j)
        x[j] = static_cast<int>((((*sol)[j] % modulus) + modulus) % modulus);
    return x;
}

std::vector<std::vector<int>> kernel_mod(const ZMat& c, int modulus) {
    int rows = static_cast<int>(c.size());
    int cols = rows ? static_cast<int>(c[0].size()) : 0;
    std::vector<std::vector<int>> out;
    if (modulus == 1) return out;
    ZMat aug = zmat(rows, cols + rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = c[i][j];
        aug[i][cols + i] = modulus;
    }
    for (const auto& k : integer_kernel(aug)) {
        std::vector<int> x(cols);
        bool nonzero = false;
        for (int j = 0; j < cols; ++j) {
            x[j] = static_cast<int>(((k[j] % modulus) + modulus) % modulus);
            nonzero |= (x[j] != 0);
        }
        if (nonzero) out.push_back(std::move(x));
    }
    return out;
}

} // namespace finstack
