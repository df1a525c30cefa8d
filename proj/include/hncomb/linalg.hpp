#pragma once

#include "hncomb/rational.hpp"

namespace hncomb {

/// Square integer matrix acting on V, stored as a list of columns:
/// apply(M, v) = sum_i v_i * M[i].
using IMat = std::vector<IVec>;

/// Rational matrix, same column convention.
using QMat = std::vector<Vec>;

IMat imat_identity(int n);
bool imat_is_identity(const IMat& m);
IMat imat_mul(const IMat& a, const IMat& b);  // (a*b)(v) = a(b(v))
IVec imat_apply(const IMat& m, const IVec& v);
Vec imat_apply(const IMat& m, const Vec& v);
IMat imat_inverse(const IMat& m);  // entries must stay integral

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Rat& c);
bool vec_is_zero(const Vec& a);

IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_sub(const IVec& a, const IVec& b);
IVec ivec_neg(const IVec& a);

/// Solves A x = b over the rationals (A given as columns, square or not).
/// Returns false if inconsistent; when the solution space is positive
/// dimensional an arbitrary solution is produced.
bool solve_linear(const QMat& cols, const Vec& rhs, Vec& out);

/// Exact feasibility of { x : eqs hold, ineqs >= 0 } where each row is
/// (c_0..c_{n-1}, d) meaning sum c_i x_i + d (= 0 | >= 0). On success a
/// rational witness point is produced. Fourier-Motzkin, exact.
bool polyhedron_feasible(int n, const std::vector<Vec>& eqs, const std::vector<Vec>& ineqs,
                         Vec* witness = nullptr);

}  // namespace hncomb
