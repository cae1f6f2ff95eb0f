// Small dense exact-integer matrix helpers for lattice work (n <= 8):
// row-style Hermite normal form, upper-triangular adjugates, and kernels of
// maps over Z/p^e.  Rows are coordinate vectors of lattice generators.
#ifndef CHARCENSUS_LATMAT_HPP
#define CHARCENSUS_LATMAT_HPP

#include <vector>

#include "charcensus/bigint.hpp"

namespace charcensus {

using ZRow = std::vector<Zint>;
using ZMat = std::vector<ZRow>;

ZMat zmat_identity(int n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);
ZMat zmat_transpose(const ZMat& a);
ZRow zmat_apply(const ZMat& m, const ZRow& v);  // m * v (column convention)

// Hermite normal form of the lattice spanned by the rows: returns a square
// upper-triangular basis with positive diagonal and entries above each pivot
// reduced into [0, pivot).  Requires the rows to span a finite-index
// sublattice of Z^n.
ZMat hnf_rows(ZMat rows, int n);

Zint hnf_det(const ZMat& h);  // product of the diagonal

// adj(h) for upper-triangular h: integer matrix with adj(h)*h = det(h)*I.
// For membership of a vector v in the ROW span of h, test adj(h)^T v = 0
// mod det(h).
ZMat adjugate_upper(const ZMat& h);

// Is v a member of the lattice with HNF basis h?  (back substitution)
bool lattice_contains(const ZMat& h, const ZRow& v);

// Row basis (over Z) of { x in Z^n : A x = 0 mod p^e } given as a full-rank
// lattice containing p^e Z^n; A has arbitrary row count.
ZMat kernel_mod_prime_power(const ZMat& a, const Zint& p, unsigned e, int n);

}  // namespace charcensus

#endif
