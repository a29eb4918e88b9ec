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

/**
 * @file
 * Dense complex linear algebra for small qubit registers: matrices, state
 * vectors, Pauli strings and Hermitian eigen-extremes.
 *
 * Everything here is sized for registers of at most a few thousand
 * amplitudes. Storage is dense and row-major.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace moegame {

using Complex = std::complex<double>;

/// Per-entry tolerance for Hermiticity checks.
inline constexpr double kHermitianTolerance = 1e-12;
/// Tolerance for "normalized" state vectors (on the squared norm).
inline constexpr double kNormTolerance = 1e-12;
/// Default cap on rows/cols of any constructed matrix.
inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 13;

class StateVector;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    /// |v><v|.
    static ComplexMatrix outer(const StateVector &v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    std::span<const Complex> entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    bool is_hermitian(double tol = kHermitianTolerance) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend StateVector operator*(const ComplexMatrix &a, const StateVector &v);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amplitudes);
    /// Zero vector of the given dimension.
    explicit StateVector(std::size_t dim);

    /// Computational basis vector e_k.
    static StateVector basis(std::size_t dim, std::size_t k);

    std::size_t size() const { return amplitudes_.size(); }
    const Complex &operator[](std::size_t k) const { return amplitudes_[k]; }
    Complex &operator[](std::size_t k) { return amplitudes_[k]; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    double norm_squared() const;
    bool is_normalized(double tol = kNormTolerance) const;
    /// Returns v / |v|; throws ContractError on the zero vector.
    StateVector normalized() const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator*=(Complex s);
    friend StateVector operator+(StateVector a, const StateVector &b) { return a += b; }
    friend StateVector operator*(Complex s, StateVector a) { return a *= s; }

  private:
    std::vector<Complex> amplitudes_;
};

/// <u|v>, conjugate-linear in u.
Complex inner_product(const StateVector &u, const StateVector &v);

/// |<u|v>| = 1 within tol for unit vectors u, v.
bool equal_up_to_phase(const StateVector &u, const StateVector &v, double tol = 1e-10);

/// Kronecker product; throws SizeError if a side would exceed `cap`.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t cap = kDefaultDimensionCap);
StateVector kron(const StateVector &a, const StateVector &b,
                 std::size_t cap = kDefaultDimensionCap);

enum class Pauli : unsigned char { I, X, Y, Z };

/// phase * P_1 (x) P_2 (x) ... (x) P_n, with P_1 acting on the most
/// significant amplitude bit.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> labels, Complex phase = 1.0);

    static PauliString identity(int n);
    /// Parses e.g. "XZIY" (optionally prefixed by "+", "-", "i", "-i").
    static PauliString parse(std::string_view text);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<Pauli> &labels() const { return labels_; }
    Complex phase() const { return phase_; }
    bool is_hermitian() const;

    /// Bits where the label flips the computational basis (X or Y).
    std::uint64_t x_mask() const;
    /// Bits where the label applies a Z sign (Z or Y).
    std::uint64_t z_mask() const;

    PauliString with_phase(Complex phase) const { return PauliString(labels_, phase); }

    /// Operator product (this * other), composing phases.
    PauliString operator*(const PauliString &other) const;

    /// Dense 2^n x 2^n matrix.
    ComplexMatrix to_matrix() const;

  private:
    std::vector<Pauli> labels_;
    Complex phase_ = 1.0;
};

/// p * v in O(2^n) time using the x/z masks of p.
StateVector apply_pauli_string(const PauliString &p, const StateVector &v);

/// <v| p |v>.
Complex expectation(const PauliString &p, const StateVector &v);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h);

struct EigenPair {
    double value;
    StateVector vector;
};

/// Largest eigenvalue of a Hermitian matrix (absolute accuracy ~1e-12 at
/// the sizes used here). Throws ContractError for non-Hermitian input and
/// ConvergenceError if the solver fails.
double lambda_max(const ComplexMatrix &h);
double lambda_min(const ComplexMatrix &h);

/// Largest eigenvalue with a unit eigenvector.
EigenPair top_eigenpair(const ComplexMatrix &h);

/// Spectral norm sqrt(lambda_max(a^dagger a)).
double operator_norm(const ComplexMatrix &a);

}  // namespace moegame
