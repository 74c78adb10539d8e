#ifndef MOTIVIC_LATTICE_HPP
#define MOTIVIC_LATTICE_HPP

#include <optional>
#include <vector>

#include "motivic/common.hpp"

namespace motivic::lattice {

using Vec = std::vector<Int>;
using Mat = std::vector<std::vector<Int>>;  // row-major
using QVec = std::vector<Rat>;
using QMat = std::vector<std::vector<Rat>>;

long rankQ(QMat m);

/// Any rational solution of (rows) * x = b, free variables set to zero;
/// nullopt when inconsistent.
std::optional<QVec> solveQ(QMat a, QVec b);

std::optional<QMat> inverseQ(QMat a);

/// Basis of { lambda : sum_i lambda_i * col_i = 0 } for the matrix whose
/// columns are the given vectors.
std::vector<QVec> kernelOfColumns(const std::vector<Vec>& cols);

/// Diagonalization U V W = D over Z with unimodular U, W; returns the
/// diagonal (no divisibility normalization), U^-1 and W^-1.
struct Snf {
    std::vector<Int> diag;  // length min(n, k)
    Mat uinv;               // n x n
    Mat winv;               // k x k
};
Snf smithDiagonalize(Mat v);

/// Lattice points of the half-open fundamental parallelepiped
/// { sum l_i v_i : 0 <= l_i < 1 } of linearly independent rays, enumerated
/// through the quotient group of the saturated span lattice. `index` is
/// the number of points (the cone determinant). Throws BoxLimitError when
/// the index exceeds detLimit.
struct BoxResult {
    std::vector<Vec> points;
    Int index;
};
BoxResult boxPoints(const std::vector<Vec>& rays, const Int& detLimit);

Rat dot(const QVec& a, const Vec& b);
Rat floorRat(const Rat& x);

}  // namespace motivic::lattice

#endif
