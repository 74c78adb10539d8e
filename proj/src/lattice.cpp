#include "motivic/lattice.hpp"

#include <algorithm>

namespace motivic::lattice {

long rankQ(QMat m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    long rank = 0;
    std::size_t col = 0;
    for (std::size_t row = 0; row < rows && col < cols; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::optional<QVec> solveQ(QMat a, QVec b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<long> pivotCol(rows, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[row], a[piv]);
        std::swap(b[row], b[piv]);
        Rat inv = 1 / a[row][col];
        for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
            b[i] -= f * b[row];
        }
        pivotCol[row] = static_cast<long>(col);
        ++row;
    }
    for (std::size_t i = row; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    QVec x(cols, Rat(0));
    for (std::size_t i = 0; i < row; ++i) x[pivotCol[i]] = b[i];
    return x;
}

std::optional<QMat> inverseQ(QMat a) {
    const std::size_t n = a.size();
    QMat inv(n, QVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        Rat f = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rat g = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= g * a[col][j];
                inv[i][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<QVec> kernelOfColumns(const std::vector<Vec>& cols) {
    if (cols.empty()) return {};
    const std::size_t n = cols[0].size(), m = cols.size();
    QMat a(n, QVec(m, Rat(0)));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) a[i][j] = Rat(cols[j][i]);
    // Row reduce, track pivot columns.
    std::vector<long> pivotOfCol(m, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[row], a[piv]);
        Rat inv = 1 / a[row][col];
        for (std::size_t j = col; j < m; ++j) a[row][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (std::size_t j = col; j < m; ++j) a[i][j] -= f * a[row][j];
        }
        pivotOfCol[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<QVec> basis;
    for (std::size_t freeCol = 0; freeCol < m; ++freeCol) {
        if (pivotOfCol[freeCol] >= 0) continue;
        QVec v(m, Rat(0));
        v[freeCol] = 1;
        for (std::size_t col = 0; col < m; ++col)
            if (pivotOfCol[col] >= 0) v[col] = -a[pivotOfCol[col]][freeCol];
        basis.push_back(std::move(v));
    }
    return basis;
}

Snf smithDiagonalize(Mat v) {
    const std::size_t n = v.size();
    const std::size_t k = n == 0 ? 0 : v[0].size();
    Mat uinv(n, Vec(n, Int(0))), winv(k, Vec(k, Int(0)));
    for (std::size_t i = 0; i < n; ++i) uinv[i][i] = 1;
    for (std::size_t i = 0; i < k; ++i) winv[i][i] = 1;

    auto swapRows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(v[a], v[b]);
        for (std::size_t i = 0; i < n; ++i) std::swap(uinv[i][a], uinv[i][b]);
    };
    auto swapCols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < n; ++i) std::swap(v[i][a], v[i][b]);
        std::swap(winv[a], winv[b]);
    };
    // row_i += q * row_p  =>  col_p of U^-1 -= q * col_i
    auto addRow = [&](std::size_t p, std::size_t i, const Int& q) {
        for (std::size_t j = 0; j < k; ++j) v[i][j] += q * v[p][j];
        for (std::size_t r = 0; r < n; ++r) uinv[r][p] -= q * uinv[r][i];
    };
    // col_j += q * col_p  =>  row_p of W^-1 -= q * row_j
    auto addCol = [&](std::size_t p, std::size_t j, const Int& q) {
        for (std::size_t i = 0; i < n; ++i) v[i][j] += q * v[i][p];
        for (std::size_t c = 0; c < k; ++c) winv[p][c] -= q * winv[j][c];
    };
    auto negateRow = [&](std::size_t p) {
        for (std::size_t j = 0; j < k; ++j) v[p][j] = -v[p][j];
        for (std::size_t r = 0; r < n; ++r) uinv[r][p] = -uinv[r][p];
    };

    const std::size_t steps = std::min(n, k);
    for (std::size_t p = 0; p < steps; ++p) {
        while (true) {
            // Smallest nonzero entry in the remaining block as pivot.
            bool found = false;
            std::size_t bi = p, bj = p;
            for (std::size_t i = p; i < n; ++i)
                for (std::size_t j = p; j < k; ++j) {
                    if (v[i][j] == 0) continue;
                    if (!found || cmp(abs(v[i][j]), abs(v[bi][bj])) < 0) {
                        bi = i;
                        bj = j;
                        found = true;
                    }
                }
            if (!found) break;
            swapRows(p, bi);
            swapCols(p, bj);
            bool clean = true;
            for (std::size_t i = p + 1; i < n; ++i) {
                if (v[i][p] == 0) continue;
                Int q = v[i][p] / v[p][p];
                if (q != 0) addRow(p, i, -q);
                if (v[i][p] != 0) clean = false;
            }
            for (std::size_t j = p + 1; j < k; ++j) {
                if (v[p][j] == 0) continue;
                Int q = v[p][j] / v[p][p];
                if (q != 0) addCol(p, j, -q);
                if (v[p][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (p < n && p < k && v[p][p] < 0) negateRow(p);
    }
    Snf out;
    out.diag.reserve(steps);
    for (std::size_t p = 0; p < steps; ++p) out.diag.push_back(v[p][p]);
    out.uinv = std::move(uinv);
    out.winv = std::move(winv);
    return out;
}

Rat dot(const QVec& a, const Vec& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
}

Rat floorRat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return Rat(q);
}

BoxResult boxPoints(const std::vector<Vec>& rays, const Int& detLimit) {
    BoxResult out;
    out.index = 1;
    if (rays.empty()) {
        out.points.push_back({});
        return out;
    }
    const std::size_t n = rays[0].size(), k = rays.size();
    Mat v(n, Vec(k, Int(0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) v[i][j] = rays[j][i];
    Snf snf = smithDiagonalize(v);
    for (const Int& d : snf.diag) {
        if (d == 0) throw Error("box enumeration needs linearly independent rays");
        out.index *= d;
    }
    if (out.index > detLimit)
        throw BoxLimitError("cone determinant " + out.index.get_str() +
                            " exceeds the box-enumeration limit " + detLimit.get_str());

    // Saturated span basis B = first k columns of U^-1; rays = B * A with
    // A = diag * W^-1. Box points correspond to classes of Z^k / diag Z^k.
    Mat B(n, Vec(k, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) B[i][j] = snf.uinv[i][j];
    QMat A(k, QVec(k, Rat(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) A[i][j] = Rat(snf.diag[i] * snf.winv[i][j]);
    auto Ainv = inverseQ(A);
    if (!Ainv) throw Error("internal: singular lattice coordinate change");

    std::vector<Int> z(k, Int(0));
    while (true) {
        // lambda = frac(A^-1 z); y = A lambda (integral); x = B y.
        QVec lambda(k, Rat(0));
        for (std::size_t i = 0; i < k; ++i) {
            Rat s(0);
            for (std::size_t j = 0; j < k; ++j) s += (*Ainv)[i][j] * Rat(z[j]);
            lambda[i] = s - floorRat(s);
        }
        Vec x(n, Int(0));
        for (std::size_t i = 0; i < k; ++i) {
            Rat yi(0);
            for (std::size_t j = 0; j < k; ++j) yi += A[i][j] * lambda[j];
            yi.canonicalize();
            if (yi.get_den() != 1) throw Error("internal: non-integral box coordinate");
            Int y = yi.get_num();
            for (std::size_t r = 0; r < n; ++r) x[r] += B[r][i] * y;
        }
        out.points.push_back(std::move(x));
        // Next class representative.
        std::size_t pos = 0;
        while (pos < k) {
            z[pos] += 1;
            if (z[pos] < snf.diag[pos]) break;
            z[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    return out;
}

}  // namespace motivic::lattice
