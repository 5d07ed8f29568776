#pragma once

#include <optional>
#include <vector>

namespace finstack {

// Exact integer linear algebra on small dense matrices: Smith normal form,
// kernels, solving, cokernel presentations. All arithmetic is overflow-checked.

using ZVec = std::vector<long long>;
using ZMat = std::vector<ZVec>; // row-major

ZMat zmat(int rows, int cols);
ZMat zmat_identity(int n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);
ZVec zmat_apply(const ZMat& m, const ZVec& x);

struct Smith {
    ZMat u, s, v; // s = u * m * v with u, v unimodular; s diagonal with d1 | d2 | ...
    std::vector<long long> diag() const;
};

Smith smith_normal_form(ZMat m);

/// Basis of the integer kernel {x : m x = 0}.
std::vector<ZVec> integer_kernel(const ZMat& m);

/// One integer solution of m x = b, if any.
std::optional<ZVec> solve_integer(const ZMat& m, const ZVec& b);

/// Invariant factors of Z^n / (column span of m). Entries equal to 1 are
/// dropped; a 0 entry denotes a free Z factor.
std::vector<long long> cokernel_invariants(const ZMat& m, int n);

/// One solution of c x = b (mod modulus), entries reduced to [0, modulus).
std::optional<std::vector<int>> solve_mod(const ZMat& c, const std::vector<int>& b, int modulus);

/// Spanning set of the solution space of c x = 0 (mod modulus).
std::vector<std::vector<int>> kernel_mod(const ZMat& c, int modulus);

} // namespace finstack
