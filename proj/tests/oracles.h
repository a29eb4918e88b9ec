// Copyright 2026 The moegame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference implementations used only by the tests. Nothing in
// here calls the library's linear algebra; each routine works from the
// definitions with plain loops.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "moegame/games.h"

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Complex>(c)); }

inline Dense from(const moegame::ComplexMatrix &m) {
    Dense d = zeros(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
    return d;
}

inline Dense multiply(const Dense &a, const Dense &b) {
    Dense c = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Dense adjoint(const Dense &a) {
    Dense c = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) c[j][i] = std::conj(a[i][j]);
    return c;
}

/// Entry (i*rb + k, j*cb + l) = a(i,j) b(k,l), written out entrywise.
inline Dense kron(const Dense &a, const Dense &b) {
    const std::size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
    Dense c = zeros(ra * rb, ca * cb);
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < cb; ++l) c[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    return c;
}

inline double max_abs_diff(const Dense &a, const moegame::ComplexMatrix &b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) m = std::max(m, std::abs(a[i][j] - b(i, j)));
    return m;
}

inline Dense pauli_2x2(moegame::Pauli p) {
    const Complex i(0, 1);
    switch (p) {
        case moegame::Pauli::I: return {{1, 0}, {0, 1}};
        case moegame::Pauli::X: return {{0, 1}, {1, 0}};
        case moegame::Pauli::Y: return {{0, -i}, {i, 0}};
        case moegame::Pauli::Z: return {{1, 0}, {0, -1}};
    }
    return {};
}

/// phase * P_1 (x) ... (x) P_n by repeated Kronecker products.
inline Dense dense_pauli(const moegame::PauliString &p) {
    Dense m = {{p.phase()}};
    for (moegame::Pauli label : p.labels()) m = kron(m, pauli_2x2(label));
    return m;
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations
/// on the real symmetric embedding [[A, -B], [B, A]] of H = A + iB. Each
/// eigenvalue of H appears twice in the embedding; one copy of each is kept.
inline std::vector<double> jacobi_eigenvalues(const Dense &h) {
    const std::size_t n = h.size(), m = 2 * n;
    std::vector<std::vector<double>> a(m, std::vector<double>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = a[i + n][j + n] = h[i][j].real();
            a[i + n][j] = h[i][j].imag();
            a[i][j + n] = -h[i][j].imag();
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double tau = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1 / std::sqrt(1 + t * t), s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(m);
    for (std::size_t k = 0; k < m; ++k) ev[k] = a[k][k];
    std::sort(ev.begin(), ev.end());
    std::vector<double> out;
    for (std::size_t k = 0; k < m; k += 2) out.push_back(0.5 * (ev[k] + ev[k + 1]));
    return out;
}

inline double jacobi_lambda_max(const Dense &h) { return jacobi_eigenvalues(h).back(); }

/// Largest singular value as sqrt of the top eigenvalue of A^dagger A.
inline double singular_value_max(const Dense &a) {
    return std::sqrt(std::max(0.0, jacobi_lambda_max(multiply(adjoint(a), a))));
}

/// <k|x^theta> with qubit 1 the most significant bit, qubit by qubit.
inline double bb84_amplitude(int n, std::uint64_t k, std::uint64_t x, std::uint64_t theta) {
    double amp = 1;
    for (int q = 0; q < n; ++q) {
        const int kb = (k >> q) & 1, xb = (x >> q) & 1, tb = (theta >> q) & 1;
        if (tb == 0) {
            amp *= kb == xb ? 1.0 : 0.0;
        } else {
            amp *= (kb && xb ? -1.0 : 1.0) / std::sqrt(2.0);
        }
    }
    return amp;
}

/// E_challenge sum_{x: mask.x = c} |x^theta><x^theta|, entry by entry.
inline Dense semiclassical_operator(const moegame::AnswerTable &table) {
    const int n = table.spec().n;
    const std::size_t dim = std::size_t{1} << n;
    Dense m = zeros(dim, dim);
    for (std::size_t c = 0; c < table.size(); ++c) {
        const moegame::Challenge ch = moegame::challenge_at(table.spec(), c);
        const std::uint64_t theta = ch.theta.bits().mask(), mask = ch.mask.mask();
        for (std::uint64_t x = 0; x < dim; ++x) {
            if (moegame::parity64(x & mask) != table[c]) continue;
            for (std::uint64_t i = 0; i < dim; ++i)
                for (std::uint64_t j = 0; j < dim; ++j)
                    m[i][j] += bb84_amplitude(n, i, x, theta) * bb84_amplitude(n, j, x, theta);
        }
    }
    for (auto &row : m)
        for (auto &v : row) v /= static_cast<double>(table.size());
    return m;
}

/// Pr[parity(x) = 0] by summing Born probabilities over outcomes.
inline double parity_bias(const moegame::StateVector &v, int n, std::uint64_t theta,
                          std::uint64_t mask) {
    const std::size_t dim = std::size_t{1} << n;
    double p0 = 0;
    for (std::uint64_t x = 0; x < dim; ++x) {
        if (moegame::parity64(x & mask)) continue;
        Complex amp = 0;
        for (std::uint64_t k = 0; k < dim; ++k) amp += bb84_amplitude(n, k, x, theta) * v[k];
        p0 += std::norm(amp);
    }
    return p0;
}

}  // namespace oracle
