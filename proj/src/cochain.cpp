#include "finstack/cochain.hpp"

namespace finstack {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int tuple_index(int group_order, const std::vector<int>& tuple) {
    long long idx = 0, stride = 1;
    for (int g : tuple) {
        idx += g * stride;
        stride *= group_order;
    }
    return static_cast<int>(idx);
}

std::vector<int> index_tuple(int group_order, int degree, long long index) {
    std::vector<int> t(degree);
    for (int i = 0; i < degree; ++i) {
        t[i] = static_cast<int>(index % group_order);
        index /= group_order;
    }
    return t;
}

int Cochain::at(const std::vector<int>& tuple, int group_order) const {
    return values[tuple_index(group_order, tuple)];
}

Cochain zero_cochain(const GroupTable& g, const FiniteAbelianGroup& a, int degree) {
    Cochain c;
    c.degree = degree;
    c.coeff = a;
    c.values.assign(pow_ll(g.n, degree), a.zero());
    c.normalized = true;
    return c;
}

bool is_normalized(const GroupTable& g, const Cochain& c) {
    long long n = static_cast<long long>(c.values.size());
    for (long long i = 0; i < n; ++i) {
        auto t = index_tuple(g.n, c.degree, i);
        bool has_unit = false;
        for (int x : t) has_unit |= (x == g.unit);
        if (has_unit && c.values[i] != c.coeff.zero()) return false;
    }
    return true;
}

Cochain bar_differential(const GroupTable& g, const GAction& rho, const Cochain& c) {
    int n = c.degree;
    const auto& a = c.coeff;
    Cochain d = zero_cochain(g, a, n + 1);
    long long total = pow_ll(g.n, n + 1);
    std::vector<int> sub(n);
    for (long long i = 0; i < total; ++i) {
        auto t = index_tuple(g.n, n + 1, i);
        int acc = a.zero();
        // face 0: drop g_1, twist by rho(g_1)
        for (int k = 0; k < n; ++k) sub[k] = t[k + 1];
        acc = a.add(acc, rho.apply(t[0], c.at(sub, g.n)));
        // inner faces
        for (int j = 1; j <= n; ++j) {
            for (int k = 0; k < n; ++k)
                sub[k] = (k < j - 1) ? t[k] : (k == j - 1 ? g.op(t[j - 1], t[j]) : t[k + 1]);
            int term = c.at(sub, g.n);
            acc = (j % 2) ? a.sub(acc, term) : a.add(acc, term);
        }
        // last face: drop g_{n+1}
        for (int k = 0; k < n; ++k) sub[k] = t[k];
        int term = c.at(sub, g.n);
        acc = ((n + 1) % 2) ? a.sub(acc, term) : a.add(acc, term);
        d.values[i] = acc;
    }
    d.normalized = c.normalized;
    return d;
}

bool is_zero(const Cochain& c) {
    for (int v : c.values)
        if (v != c.coeff.zero()) return false;
    return true;
}

Cochain cochain_add(const Cochain& a, const Cochain& b) {
    Cochain r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.coeff.add(a.values[i], b.values[i]);
    r.normalized = a.normalized && b.normalized;
    return r;
}

Cochain cochain_sub(const Cochain& a, const Cochain& b) {
    Cochain r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.coeff.sub(a.values[i], b.values[i]);
    r.normalized = a.normalized && b.normalized;
    return r;
}

} // namespace finstack
