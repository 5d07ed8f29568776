#include <doctest.h>

#include <random>

#include "finstack/zlin.hpp"

using namespace finstack;

namespace {

ZMat random_matrix(std::mt19937& rng, int rows, int cols, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> d(lo, hi);
    ZMat m = zmat(rows, cols);
    for (auto& row : m)
        for (auto& x : row) x = d(rng);
    return m;
}

bool is_unimodular(const ZMat& m) {
    // determinant via fraction-free elimination would do; at these sizes just
    // check that the matrix has an integer inverse by solving against e_i.
    int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        ZVec e(n, 0);
        e[i] = 1;
        if (!solve_integer(m, e)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("smith normal form factors the matrix") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
        ZMat m = random_matrix(rng, rows, cols);
        Smith sn = smith_normal_form(m);
        CHECK(zmat_mul(zmat_mul(sn.u, m), sn.v) == sn.s);
        CHECK(is_unimodular(sn.u));
        CHECK(is_unimodular(sn.v));
        auto d = sn.diag();
        for (size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i + 1] != 0) {
                CHECK(d[i] != 0);
                CHECK(d[i + 1] % d[i] == 0);
            }
        }
        // off-diagonal zero
        for (size_t i = 0; i < sn.s.size(); ++i)
            for (size_t j = 0; j < sn.s[i].size(); ++j)
                if (i != j) CHECK(sn.s[i][j] == 0);
    }
}

TEST_CASE("integer kernel vectors are killed by the matrix") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        ZMat m = random_matrix(rng, 2 + trial % 3, 3 + trial % 3);
        for (const auto& k : integer_kernel(m)) {
            ZVec img = zmat_apply(m, k);
            for (long long v : img) CHECK(v == 0);
        }
    }
}

TEST_CASE("solve_integer finds witnesses exactly when solvable") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        ZMat m = random_matrix(rng, 3, 3);
        ZVec x0 = {(long long)(rng() % 5), (long long)(rng() % 5), (long long)(rng() % 5)};
        ZVec b = zmat_apply(m, x0);
        auto sol = solve_integer(m, b);
        REQUIRE(sol.has_value());
        CHECK(zmat_apply(m, *sol) == b);
    }
    // 2x = 1 has no integer solution
    CHECK(!solve_integer({{2}}, {1}).has_value());
}

TEST_CASE("cokernel invariants of standard examples") {
    // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 in invariant-factor form
    ZMat m = {{2, 0}, {0, 3}};
    CHECK(cokernel_invariants(m, 2) == std::vector<long long>{6});
    // Z^2 / <(2,0)> = Z/2 + Z
    ZMat m2 = {{2}, {0}};
    CHECK(cokernel_invariants(m2, 2) == std::vector<long long>{2, 0});
    // zero columns: nothing quotiented
    CHECK(cokernel_invariants(zmat(2, 1), 2) == std::vector<long long>{0, 0});
}

TEST_CASE("solve_mod") {
    // 2x = 2 mod 4 has solutions x = 1, 3
    auto s = solve_mod({{2}}, {2}, 4);
    REQUIRE(s.has_value());
    CHECK((2 * (*s)[0]) % 4 == 2);
    CHECK(!solve_mod({{2}}, {1}, 4).has_value());

    auto k = kernel_mod({{2}}, 4);
    bool found_two = false;
    for (const auto& v : k) found_two |= (v[0] == 2);
    CHECK(found_two);
}
