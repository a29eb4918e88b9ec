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

#include "moegame/qcore.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "moegame/bits.h"
#include "moegame/errors.h"

namespace moegame {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string dims(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_hermitian(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw ContractError("expected a square matrix, got " + dims(h.rows(), h.cols()));
    }
    if (h.rows() == 0) {
        throw ContractError("empty matrix has no eigenvalues");
    }
    if (!h.is_hermitian()) {
        throw ContractError("matrix is not Hermitian within " + std::to_string(kHermitianTolerance));
    }
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve(const ComplexMatrix &h, bool vectors) {
    Eigen::Map<const RowMajorMatrix> m(h.entries().data(), static_cast<Eigen::Index>(h.rows()),
                                       static_cast<Eigen::Index>(h.cols()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("Hermitian eigensolver hit its iteration limit on a " +
                               dims(h.rows(), h.cols()) + " matrix");
    }
    return solver;
}

// Single-qubit product a*b = phase * label.
struct PauliProduct {
    Complex phase;
    Pauli label;
};

PauliProduct multiply(Pauli a, Pauli b) {
    const Complex i(0, 1);
    if (a == Pauli::I) return {1.0, b};
    if (b == Pauli::I) return {1.0, a};
    if (a == b) return {1.0, Pauli::I};
    switch (a) {
        case Pauli::X: return b == Pauli::Y ? PauliProduct{i, Pauli::Z} : PauliProduct{-i, Pauli::Y};
        case Pauli::Y: return b == Pauli::Z ? PauliProduct{i, Pauli::X} : PauliProduct{-i, Pauli::Z};
        case Pauli::Z: return b == Pauli::X ? PauliProduct{i, Pauli::Y} : PauliProduct{-i, Pauli::X};
        default: break;
    }
    return {1.0, Pauli::I};
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw ContractError("matrix " + dims(rows, cols) + " needs " + std::to_string(rows * cols) +
                            " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) m(k, k) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::outer(const StateVector &v) {
    const std::size_t d = v.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (v[i] == Complex{}) continue;
        for (std::size_t j = 0; j < d; ++j) m(i, j) = v[i] * std::conj(v[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const Complex &z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw ContractError("matrix sum of " + dims(rows_, cols_) + " and " +
                            dims(other.rows_, other.cols_));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw ContractError("matrix difference of " + dims(rows_, cols_) + " and " +
                            dims(other.rows_, other.cols_));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (Complex &z : entries_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols_ != b.rows_) {
        throw ContractError("matrix product of " + dims(a.rows_, a.cols_) + " and " +
                            dims(b.rows_, b.cols_));
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

StateVector operator*(const ComplexMatrix &a, const StateVector &v) {
    if (a.cols_ != v.size()) {
        throw ContractError("matrix " + dims(a.rows_, a.cols_) + " applied to vector of size " +
                            std::to_string(v.size()));
    }
    StateVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Complex s = 0;
        for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {}

StateVector::StateVector(std::size_t dim) : amplitudes_(dim) {}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw ContractError("basis index " + std::to_string(k) + " out of range " +
                            std::to_string(dim));
    }
    StateVector v(dim);
    v[k] = 1.0;
    return v;
}

double StateVector::norm_squared() const {
    double s = 0;
    for (const Complex &z : amplitudes_) s += std::norm(z);
    return s;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
    const double n2 = norm_squared();
    if (n2 == 0.0) throw ContractError("cannot normalize the zero vector");
    StateVector out = *this;
    out *= 1.0 / std::sqrt(n2);
    return out;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    if (size() != other.size()) {
        throw ContractError("vector sum of sizes " + std::to_string(size()) + " and " +
                            std::to_string(other.size()));
    }
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) amplitudes_[k] += other.amplitudes_[k];
    return *this;
}

StateVector &StateVector::operator*=(Complex s) {
    for (Complex &z : amplitudes_) z *= s;
    return *this;
}

Complex inner_product(const StateVector &u, const StateVector &v) {
    if (u.size() != v.size()) {
        throw ContractError("inner product of sizes " + std::to_string(u.size()) + " and " +
                            std::to_string(v.size()));
    }
    Complex s = 0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
}

bool equal_up_to_phase(const StateVector &u, const StateVector &v, double tol) {
    return std::abs(std::abs(inner_product(u, v)) - 1.0) <= tol;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t cap) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > cap || cols > cap) {
        throw SizeError("Kronecker product " + dims(rows, cols) + " exceeds cap " +
                        std::to_string(cap));
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

StateVector kron(const StateVector &a, const StateVector &b, std::size_t cap) {
    const std::size_t d = a.size() * b.size();
    if (d > cap) {
        throw SizeError("Kronecker product of length " + std::to_string(d) + " exceeds cap " +
                        std::to_string(cap));
    }
    StateVector out(d);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
    return out;
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(std::vector<Pauli> labels, Complex phase)
    : labels_(std::move(labels)), phase_(phase) {
    if (labels_.size() > static_cast<std::size_t>(kMaxBits)) {
        throw SizeError("Pauli string on " + std::to_string(labels_.size()) + " qubits");
    }
    if (std::abs(std::abs(phase_) - 1.0) > 1e-12) {
        throw ContractError("Pauli string phase must have modulus 1");
    }
}

PauliString PauliString::identity(int n) {
    return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I));
}

PauliString PauliString::parse(std::string_view text) {
    Complex phase = 1.0;
    if (text.starts_with("-i")) {
        phase = Complex(0, -1);
        text.remove_prefix(2);
    } else if (text.starts_with("+i") || text.starts_with("i")) {
        phase = Complex(0, 1);
        text.remove_prefix(text[0] == '+' ? 2 : 1);
    } else if (text.starts_with("-")) {
        phase = -1.0;
        text.remove_prefix(1);
    } else if (text.starts_with("+")) {
        text.remove_prefix(1);
    }
    std::vector<Pauli> labels;
    for (char ch : text) {
        switch (ch) {
            case 'I': case '_': labels.push_back(Pauli::I); break;
            case 'X': labels.push_back(Pauli::X); break;
            case 'Y': labels.push_back(Pauli::Y); break;
            case 'Z': labels.push_back(Pauli::Z); break;
            default: throw InputError("invalid Pauli label '" + std::string(1, ch) + "'");
        }
    }
    return PauliString(std::move(labels), phase);
}

bool PauliString::is_hermitian() const { return std::abs(phase_.imag()) <= 1e-12; }

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    const int n = size();
    for (int j = 0; j < n; ++j) {
        const Pauli p = labels_[static_cast<std::size_t>(j)];
        if (p == Pauli::X || p == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - j);
    }
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    const int n = size();
    for (int j = 0; j < n; ++j) {
        const Pauli p = labels_[static_cast<std::size_t>(j)];
        if (p == Pauli::Z || p == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - j);
    }
    return m;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (size() != other.size()) {
        throw ContractError("Pauli product of strings on " + std::to_string(size()) + " and " +
                            std::to_string(other.size()) + " qubits");
    }
    Complex phase = phase_ * other.phase_;
    std::vector<Pauli> labels(labels_.size());
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        const PauliProduct p = multiply(labels_[j], other.labels_[j]);
        phase *= p.phase;
        labels[j] = p.label;
    }
    return PauliString(std::move(labels), phase);
}

ComplexMatrix PauliString::to_matrix() const {
    const std::size_t dim = std::size_t{1} << size();
    ComplexMatrix m(dim, dim);
    const std::uint64_t xm = x_mask();
    const std::uint64_t zm = z_mask();
    const int ny = std::popcount(xm & zm);
    const Complex i_pow[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
    const Complex coeff = phase_ * i_pow[ny % 4];
    for (std::uint64_t k = 0; k < dim; ++k) {
        m(k ^ xm, k) = parity64(k & zm) ? -coeff : coeff;
    }
    return m;
}

StateVector apply_pauli_string(const PauliString &p, const StateVector &v) {
    const std::size_t dim = std::size_t{1} << p.size();
    if (v.size() != dim) {
        throw ContractError("Pauli string on " + std::to_string(p.size()) +
                            " qubits applied to vector of size " + std::to_string(v.size()));
    }
    // Y = i X Z per qubit, so P|k> = phase i^{#Y} (-1)^{k.z} |k ^ x>.
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    const Complex i_pow[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
    const Complex coeff = p.phase() * i_pow[std::popcount(xm & zm) % 4];
    StateVector out(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        out[k ^ xm] = (parity64(k & zm) ? -coeff : coeff) * v[k];
    }
    return out;
}

Complex expectation(const PauliString &p, const StateVector &v) {
    return inner_product(v, apply_pauli_string(p, v));
}

// ---------------------------------------------------------------------------
// Eigen-extremes

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    require_hermitian(h);
    const auto solver = solve(h, false);
    const auto &ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double lambda_max(const ComplexMatrix &h) {
    require_hermitian(h);
    const auto solver = solve(h, false);
    return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

double lambda_min(const ComplexMatrix &h) {
    require_hermitian(h);
    return solve(h, false).eigenvalues()(0);
}

EigenPair top_eigenpair(const ComplexMatrix &h) {
    require_hermitian(h);
    const auto solver = solve(h, true);
    const Eigen::Index top = solver.eigenvalues().size() - 1;
    std::vector<Complex> vec(h.rows());
    for (std::size_t k = 0; k < h.rows(); ++k) {
        vec[k] = solver.eigenvectors()(static_cast<Eigen::Index>(k), top);
    }
    return {solver.eigenvalues()(top), StateVector(std::move(vec)).normalized()};
}

double operator_norm(const ComplexMatrix &a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    // Gram matrix of the smaller side; symmetrize away rounding asymmetry.
    ComplexMatrix g = a.rows() >= a.cols() ? a.adjoint() * a : a * a.adjoint();
    for (std::size_t i = 0; i < g.rows(); ++i) {
        g(i, i) = g(i, i).real();
        for (std::size_t j = i + 1; j < g.cols(); ++j) {
            const Complex avg = 0.5 * (g(i, j) + std::conj(g(j, i)));
            g(i, j) = avg;
            g(j, i) = std::conj(avg);
        }
    }
    return std::sqrt(std::max(0.0, lambda_max(g)));
}

}  // namespace moegame
