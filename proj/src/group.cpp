#include "finstack/group.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace finstack {

bool GroupTable::is_abelian() const {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

int GroupTable::order_of(int a) const {
    int k = 1, x = a;
    while (x != unit) {
        x = op(x, a);
        ++k;
    }
    return k;
}

ValidationReport validate_group(const GroupTable& g) {
    ValidationReport rep;
    int n = g.n;
    if (static_cast<int>(g.mul.size()) != n * n) {
        rep.add("table-shape", {}, "mul table must have n*n entries");
        return rep;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.op(a, b) < 0 || g.op(a, b) >= n) {
                rep.add("range", {a, b}, "product out of range");
                return rep;
            }
    for (int a = 0; a < n; ++a) {
        if (g.op(g.unit, a) != a) rep.add("left-unit", {a});
        if (g.op(a, g.unit) != a) rep.add("right-unit", {a});
    }
    if (static_cast<int>(g.inverse.size()) != n) {
        rep.add("table-shape", {}, "inverse table must have n entries");
        return rep;
    }
    for (int a = 0; a < n; ++a) {
        if (g.op(a, g.inv(a)) != g.unit) rep.add("right-inverse", {a});
        if (g.op(g.inv(a), a) != g.unit) rep.add("left-inverse", {a});
    }
    for (int a = 0; a < n && rep.ok(); ++a)
        for (int b = 0; b < n && rep.ok(); ++b)
            for (int c = 0; c < n; ++c)
                if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c))) {
                    rep.add("associativity", {a, b, c});
                    break;
                }
    return rep;
}

GroupTable group_from_mul(int n, std::vector<int> mul) {
    GroupTable g;
    g.n = n;
    g.mul = std::move(mul);
    int unit = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = g.op(e, a) == a && g.op(a, e) == a;
        if (ok) {
            unit = e;
            break;
        }
    }
    if (unit < 0) {
        ValidationReport rep;
        rep.add("unit", {}, "no two-sided unit");
        throw validation_error(rep);
    }
    g.unit = unit;
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.op(a, b) == unit && g.op(b, a) == unit) g.inverse[a] = b;
    for (int a = 0; a < n; ++a)
        if (g.inverse[a] < 0) {
            ValidationReport rep;
            rep.add("inverse", {a}, "element has no two-sided inverse");
            throw validation_error(rep);
        }
    require_valid(validate_group(g));
    return g;
}

GroupTable cyclic_group(int n) {
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
    return group_from_mul(n, std::move(mul));
}

GroupTable klein_four() {
    return direct_product(cyclic_group(2), cyclic_group(2));
}

GroupTable symmetric_group_3() {
    // permutations of {0,1,2} in lexicographic one-line order
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p = {0, 1, 2};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = 6;
    std::vector<int> mul(n * n);
    auto find = [&](const std::array<int, 3>& q) {
        for (int i = 0; i < n; ++i)
            if (perms[i] == q) return i;
        return -1;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::array<int, 3> q; // a then b as functions: q = b ∘ a
            for (int i = 0; i < 3; ++i) q[i] = perms[b][perms[a][i]];
            mul[a * n + b] = find(q);
        }
    return group_from_mul(n, std::move(mul));
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
    int n = a.n * b.n;
    std::vector<int> mul(n * n);
    auto idx = [&](int x, int y) { return x * b.n + y; };
    for (int x1 = 0; x1 < a.n; ++x1)
        for (int y1 = 0; y1 < b.n; ++y1)
            for (int x2 = 0; x2 < a.n; ++x2)
                for (int y2 = 0; y2 < b.n; ++y2)
                    mul[idx(x1, y1) * n + idx(x2, y2)] = idx(a.op(x1, x2), b.op(y1, y2));
    return group_from_mul(n, std::move(mul));
}

namespace {

bool iso_backtrack(const GroupTable& a, const GroupTable& b, std::vector<int>& map,
                   std::vector<bool>& used, int next) {
    if (next == a.n) return true;
    if (map[next] >= 0) return iso_backtrack(a, b, map, used, next + 1);
    for (int img = 0; img < b.n; ++img) {
        if (used[img] || a.order_of(next) != b.order_of(img)) continue;
        // tentatively assign and propagate products with already-mapped elements
        std::vector<std::pair<int, int>> assigned; // (element, image) newly set
        std::vector<int> stack = {next};
        map[next] = img;
        used[img] = true;
        assigned.push_back({next, img});
        bool ok = true;
        for (size_t k = 0; k < stack.size() && ok; ++k) {
            int x = stack[k];
            for (int y = 0; y < a.n && ok; ++y) {
                if (map[y] < 0) continue;
                for (auto [p, q] : {std::pair{a.op(x, y), b.op(map[x], map[y])},
                                    std::pair{a.op(y, x), b.op(map[y], map[x])}}) {
                    if (map[p] < 0) {
                        if (used[q]) {
                            ok = false;
                            break;
                        }
                        map[p] = q;
                        used[q] = true;
                        assigned.push_back({p, q});
                        stack.push_back(p);
                    } else if (map[p] != q) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (ok && iso_backtrack(a, b, map, used, next + 1)) return true;
        for (auto [e, i] : assigned) {
            map[e] = -1;
            used[i] = false;
        }
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> group_isomorphism(const GroupTable& a, const GroupTable& b) {
    if (a.n != b.n) return std::nullopt;
    std::vector<int> ord_a, ord_b;
    for (int i = 0; i < a.n; ++i) ord_a.push_back(a.order_of(i));
    for (int i = 0; i < b.n; ++i) ord_b.push_back(b.order_of(i));
    std::sort(ord_a.begin(), ord_a.end());
    std::sort(ord_b.begin(), ord_b.end());
    if (ord_a != ord_b) return std::nullopt;
    std::vector<int> map(a.n, -1);
    std::vector<bool> used(b.n, false);
    map[a.unit] = b.unit;
    used[b.unit] = true;
    if (iso_backtrack(a, b, map, used, 0)) return map;
    return std::nullopt;
}

std::vector<std::vector<int>> enumerate_group_homs(const GroupTable& a, const GroupTable& b) {
    std::vector<std::vector<int>> out;
    std::vector<int> map(a.n, -1);
    map[a.unit] = b.unit;

    // depth-first over unassigned elements with closure propagation
    auto rec = [&](auto&& self, int next) -> void {
        while (next < a.n && map[next] >= 0) ++next;
        if (next == a.n) {
            // full closure check
            for (int x = 0; x < a.n; ++x)
                for (int y = 0; y < a.n; ++y)
                    if (map[a.op(x, y)] != b.op(map[x], map[y])) return;
            out.push_back(map);
            return;
        }
        for (int img = 0; img < b.n; ++img) {
            if (b.order_of(img) == 0 || a.order_of(next) % b.order_of(img) != 0) continue;
            std::vector<std::pair<int, int>> assigned;
            std::vector<int> stack = {next};
            map[next] = img;
            assigned.push_back({next, img});
            bool ok = true;
            for (size_t k = 0; k < stack.size() && ok; ++k) {
                int x = stack[k];
                for (int y = 0; y < a.n && ok; ++y) {
                    if (map[y] < 0) continue;
                    for (auto [p, q] : {std::pair{a.op(x, y), b.op(map[x], map[y])},
                                        std::pair{a.op(y, x), b.op(map[y], map[x])}}) {
                        if (map[p] < 0) {
                            map[p] = q;
                            assigned.push_back({p, q});
                            stack.push_back(p);
                        } else if (map[p] != q) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if (ok) self(self, next + 1);
            for (auto [e, i] : assigned) map[e] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

std::string group_name(const GroupTable& g) {
    std::ostringstream os;
    if (g.is_abelian()) {
        // decompose by matching against standard abelian groups of the same order
        os << "abelian(" << g.n << ")";
    } else {
        os << "group(" << g.n << ")";
    }
    return os.str();
}

} // namespace finstack
