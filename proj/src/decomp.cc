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

#include "moegame/decomp.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "moegame/errors.h"

namespace moegame {

namespace {

constexpr int kMaxDecompQubits = 6;
constexpr std::size_t kMaxDecompDim = 256;
constexpr int kMaxParsevalBits = 12;
constexpr int kMaxSumXorBits = 16;

bool in_S_masks(std::uint64_t theta, std::uint64_t r) { return theta != 0 && (r & theta) != 0; }

void require_gl(const Measurements &m, const char *what) {
    if (m.spec().variant != GameVariant::kGl) {
        throw ContractError(std::string(what) + " is defined for the GL game only");
    }
    const std::size_t dim = (std::size_t{1} << m.spec().n) * m.dim_bc();
    if (m.spec().n > kMaxDecompQubits || dim > kMaxDecompDim) {
        throw SizeError(std::string(what) + ": total dimension " + std::to_string(dim) +
                        " exceeds the cap of " + std::to_string(kMaxDecompDim));
    }
}

// R_0 + R_1 and R_0 - R_1 where R_b = P_b (x) Q_b.
struct ChallengeBlocks {
    ComplexMatrix sum;
    ComplexMatrix diff;
};

ChallengeBlocks challenge_blocks(const Measurements &m, std::size_t c) {
    const ComplexMatrix r0 = kron(m.bob()[c].p0, m.charlie()[c].p0);
    const ComplexMatrix r1 = kron(m.bob()[c].p1, m.charlie()[c].p1);
    return {r0 + r1, r0 - r1};
}

// Adds coeff * block at block position (bi, bj) of a matrix with square
// blocks of size d.
void add_block(ComplexMatrix &out, std::size_t bi, std::size_t bj, const ComplexMatrix &block,
               double coeff) {
    const std::size_t d = block.rows();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) out(bi * d + a, bj * d + b) += coeff * block(a, b);
}

}  // namespace

bool in_S(const BasisChoice &theta, const BitString &r) {
    if (theta.size() != r.size()) throw ContractError("in_S: theta and r lengths differ");
    return in_S_masks(theta.bits().mask(), r.mask());
}

Rational prob_S(int n) {
    if (n < 1 || n > kMaxEnumeratedS) {
        throw SizeError("prob_S enumerates n in [1, " + std::to_string(kMaxEnumeratedS) + "]");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::uint64_t count = 0;
    for (std::uint64_t theta = 0; theta < dim; ++theta)
        for (std::uint64_t r = 0; r < dim; ++r) count += in_S_masks(theta, r) ? 1 : 0;
    const std::uint64_t den = dim * dim;
    const std::uint64_t g = std::gcd(count, den);
    return {count / g, den / g};
}

ChallengeSet ChallengeSet::enumerate(int n) {
    ChallengeSet s;
    s.n = n;
    s.prob = prob_S(n);
    s.size = (s.prob.num << (2 * n)) / s.prob.den;
    s.delta = (1.0 - s.prob.value()) / s.prob.value();
    return s;
}

SSetAudit audit_s_set(int n) {
    SSetAudit a;
    a.n = n;
    a.enumerated = prob_S(n);
    a.enumerated_value = a.enumerated.value();
    const double two_pow = std::ldexp(1.0, -n);
    a.one_minus_two_pow = 1.0 - two_pow;
    a.one_minus_three_quarters = 1.0 - std::pow(0.75, n);
    // Exact comparisons against (2^n - 1)/2^n and (4^n - 3^n)/4^n.
    const std::uint64_t p2 = std::uint64_t{1} << n;
    a.matches_two_pow = a.enumerated.num * p2 == a.enumerated.den * (p2 - 1);
    std::uint64_t p3 = 1;
    for (int k = 0; k < n; ++k) p3 *= 3;
    const std::uint64_t p4 = p2 * p2;
    a.matches_three_quarters = a.enumerated.num * p4 == a.enumerated.den * (p4 - p3);
    a.delta_enumerated = (1.0 - a.enumerated_value) / a.enumerated_value;
    a.delta_two_pow = two_pow / (1.0 - two_pow);
    return a;
}

std::int64_t sum_xor(int N, const BitString &r, const BitString &u, int b) {
    if (r.size() != N || u.size() != N) throw ContractError("sum_xor: lengths must equal N");
    if (r.mask() == 0) throw ContractError("sum_xor requires r != 0");
    const std::int64_t half = std::int64_t{1} << (N - 1);
    if (u.mask() == 0) return half;
    if (u == r) return (b & 1) ? -half : half;
    return 0;
}

std::int64_t sum_xor_brute(int N, const BitString &r, const BitString &u, int b) {
    if (N < 0 || N > kMaxSumXorBits) {
        throw SizeError("sum_xor_brute enumerates N <= " + std::to_string(kMaxSumXorBits));
    }
    if (r.size() != N || u.size() != N) throw ContractError("sum_xor_brute: lengths must equal N");
    std::int64_t total = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << N); ++x) {
        if (parity64(r.mask() & x) != (b & 1)) continue;
        total += parity64(u.mask() & x) ? -1 : 1;
    }
    return total;
}

// ---------------------------------------------------------------------------
// SliceFamily

SliceFamily::SliceFamily(int n, std::size_t dim_bc, std::vector<StateVector> vectors)
    : n_(n), dim_bc_(dim_bc), vectors_(std::move(vectors)) {
    if (n_ < 1 || n_ > kMaxGameQubits) throw ContractError("slice family n out of range");
    const std::size_t count = std::size_t{1} << n_;
    if (vectors_.size() != count) {
        throw ContractError("slice family needs " + std::to_string(count) + " slices, got " +
                            std::to_string(vectors_.size()));
    }
    double total = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (vectors_[i].size() != dim_bc_) {
            throw ContractError("slice " + std::to_string(i) + " has dimension " +
                                std::to_string(vectors_[i].size()) + ", expected " +
                                std::to_string(dim_bc_));
        }
        total += vectors_[i].norm_squared();
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ContractError("slice norms squared sum to " + std::to_string(total) + ", not 1");
    }
}

SliceFamily SliceFamily::from_joint_state(int n, std::size_t dim_bc, const StateVector &joint) {
    const std::size_t count = std::size_t{1} << n;
    if (joint.size() != count * dim_bc) {
        throw ContractError("joint state size does not match 2^n * dim_bc");
    }
    std::vector<StateVector> slices;
    slices.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto amps = joint.amplitudes().subspan(i * dim_bc, dim_bc);
        slices.emplace_back(std::vector<Complex>(amps.begin(), amps.end()));
    }
    return SliceFamily(n, dim_bc, std::move(slices));
}

StateVector SliceFamily::joint_state() const {
    std::vector<Complex> amps;
    amps.reserve(vectors_.size() * dim_bc_);
    for (const StateVector &v : vectors_) {
        amps.insert(amps.end(), v.amplitudes().begin(), v.amplitudes().end());
    }
    return StateVector(std::move(amps));
}

// ---------------------------------------------------------------------------
// Decomposition

ComplexMatrix build_avg_projector_on_S(const Measurements &m) {
    require_gl(m, "build_avg_projector_on_S");
    const GameSpec &spec = m.spec();
    const std::size_t dim = (std::size_t{1} << spec.n) * m.dim_bc();
    const ChallengeSet s = ChallengeSet::enumerate(spec.n);
    ComplexMatrix avg(dim, dim);
    for (std::size_t c = 0; c < challenge_count(spec); ++c) {
        const Challenge ch = challenge_at(spec, c);
        if (!in_S(ch.theta, ch.mask)) continue;
        avg += game_projector(m, c);
    }
    avg *= 1.0 / static_cast<double>(s.size);
    return avg;
}

ComplexMatrix build_W1(const Measurements &m, bool conditioned) {
    require_gl(m, "build_W1");
    const GameSpec &spec = m.spec();
    const std::size_t dbc = m.dim_bc();
    ComplexMatrix avg(dbc, dbc);
    std::size_t terms = 0;
    for (std::size_t c = 0; c < challenge_count(spec); ++c) {
        const Challenge ch = challenge_at(spec, c);
        if (conditioned && !in_S(ch.theta, ch.mask)) continue;
        avg += challenge_blocks(m, c).sum;
        ++terms;
    }
    avg *= 0.5 / static_cast<double>(terms);
    return kron(ComplexMatrix::identity(std::size_t{1} << spec.n), avg);
}

ComplexMatrix build_W2_closed_form(const Measurements &m) {
    require_gl(m, "build_W2_closed_form");
    const GameSpec &spec = m.spec();
    const std::size_t dim_a = std::size_t{1} << spec.n;
    const std::size_t dbc = m.dim_bc();
    const ChallengeSet s = ChallengeSet::enumerate(spec.n);
    const double coeff = 0.5 / static_cast<double>(s.size);
    ComplexMatrix w2(dim_a * dbc, dim_a * dbc);
    for (std::size_t c = 0; c < challenge_count(spec); ++c) {
        const Challenge ch = challenge_at(spec, c);
        const std::uint64_t theta = ch.theta.bits().mask();
        const std::uint64_t r = ch.mask.mask();
        if (!in_S_masks(theta, r)) continue;
        const std::uint64_t delta = r & theta;
        const std::uint64_t r_c = r & ~theta;
        const ComplexMatrix diff = challenge_blocks(m, c).diff;
        for (std::uint64_t i = 0; i < dim_a; ++i) {
            add_block(w2, i, i ^ delta, diff, parity64(r_c & i) ? -coeff : coeff);
        }
    }
    return w2;
}

double decomposition_residual(const Measurements &m, double threshold) {
    ComplexMatrix diff = build_avg_projector_on_S(m);
    diff -= build_W1(m, true);
    diff -= build_W2_closed_form(m);
    const double residual = diff.frobenius_norm();
    if (!(residual <= threshold)) {
        throw DecompositionMismatch("decomposition residual " + std::to_string(residual) +
                                        " exceeds " + std::to_string(threshold),
                                    residual);
    }
    return residual;
}

double w2_norm_semiclassical(const AnswerTable &answers) {
    const GameSpec &spec = answers.spec();
    if (spec.variant != GameVariant::kGl) throw ContractError("w2_norm_semiclassical needs a GL table");
    if (spec.n > kMaxDecompQubits) {
        throw SizeError("w2_norm_semiclassical supports n <= " + std::to_string(kMaxDecompQubits));
    }
    const std::size_t dim = std::size_t{1} << spec.n;
    const ChallengeSet s = ChallengeSet::enumerate(spec.n);
    const double coeff = 0.5 / static_cast<double>(s.size);
    ComplexMatrix w2(dim, dim);
    for (std::size_t c = 0; c < answers.size(); ++c) {
        const Challenge ch = challenge_at(spec, c);
        const std::uint64_t theta = ch.theta.bits().mask();
        const std::uint64_t r = ch.mask.mask();
        if (!in_S_masks(theta, r)) continue;
        const std::uint64_t delta = r & theta;
        const std::uint64_t r_c = r & ~theta;
        const double signed_coeff = answers[c] ? -coeff : coeff;
        for (std::uint64_t i = 0; i < dim; ++i) {
            w2(i, i ^ delta) += parity64(r_c & i) ? -signed_coeff : signed_coeff;
        }
    }
    // W2 is Hermitian, so its operator norm is the largest |eigenvalue|.
    const std::vector<double> ev = hermitian_eigenvalues(w2);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

W2Bound w2_bound(int n) {
    if (n < 1) throw ContractError("w2_bound needs n >= 1");
    const double rate = std::pow((4.0 + 2.0 * std::sqrt(2.0)) / 8.0, 0.5 * n);
    const double two_pow = std::ldexp(1.0, -n);
    const double delta_two_pow = two_pow / (1.0 - two_pow);
    W2Bound b;
    if (n <= kMaxEnumeratedS) {
        b.exact = 0.5 * (1.0 + ChallengeSet::enumerate(n).delta) * rate;
    } else {
        // Beyond enumeration, the count 4^n - 3^n is exact in closed form.
        b.exact = 0.5 / (1.0 - std::pow(0.75, n)) * rate;
    }
    b.published = 0.5 * (1.0 + delta_two_pow) * std::pow(0.93, n);
    b.headline = 0.5 + std::pow(0.93, n);
    return b;
}

ParsevalResult parseval_check(const std::vector<double> &f, int N) {
    if (N < 0 || N > kMaxParsevalBits) {
        throw SizeError("parseval_check supports N <= " + std::to_string(kMaxParsevalBits));
    }
    const std::size_t size = std::size_t{1} << N;
    if (f.size() != size) {
        throw ContractError("parseval_check: table has " + std::to_string(f.size()) +
                            " entries, expected 2^N = " + std::to_string(size));
    }
    std::vector<double> hat = f;
    for (std::size_t len = 1; len < size; len <<= 1) {
        for (std::size_t i = 0; i < size; i += 2 * len) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double a = hat[j], b = hat[j + len];
                hat[j] = a + b;
                hat[j + len] = a - b;
            }
        }
    }
    ParsevalResult out;
    for (double h : hat) out.lhs += h * h;
    double sq = 0;
    for (double v : f) sq += v * v;
    out.rhs = static_cast<double>(size) * sq;
    return out;
}

BlockNormResult block_norm_bound(const std::vector<std::vector<ComplexMatrix>> &blocks) {
    if (blocks.empty() || blocks.front().empty()) {
        throw ContractError("block_norm_bound needs at least one block");
    }
    const std::size_t br = blocks.size(), bc = blocks.front().size();
    std::vector<std::size_t> row_dim(br), col_dim(bc);
    for (std::size_t i = 0; i < br; ++i) {
        if (blocks[i].size() != bc) throw ContractError("block grid is ragged");
        row_dim[i] = blocks[i][0].rows();
    }
    for (std::size_t j = 0; j < bc; ++j) col_dim[j] = blocks[0][j].cols();
    for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j)
            if (blocks[i][j].rows() != row_dim[i] || blocks[i][j].cols() != col_dim[j]) {
                throw ContractError("block (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") has inconsistent dimensions");
            }
    std::vector<std::size_t> row_off(br + 1, 0), col_off(bc + 1, 0);
    std::partial_sum(row_dim.begin(), row_dim.end(), row_off.begin() + 1);
    std::partial_sum(col_dim.begin(), col_dim.end(), col_off.begin() + 1);

    ComplexMatrix full(row_off[br], col_off[bc]);
    double sum_sq = 0;
    for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j) {
            const ComplexMatrix &b = blocks[i][j];
            const double nb = operator_norm(b);
            sum_sq += nb * nb;
            for (std::size_t a = 0; a < b.rows(); ++a)
                for (std::size_t c = 0; c < b.cols(); ++c) full(row_off[i] + a, col_off[j] + c) = b(a, c);
        }
    return {std::sqrt(sum_sq), operator_norm(full)};
}

ConjectureTerms conjecture_lhs(const Measurements &m, const SliceFamily &slices) {
    if (m.spec().variant != GameVariant::kGl) throw ContractError("conjecture_lhs needs the GL game");
    if (slices.n() != m.spec().n || slices.dim_bc() != m.dim_bc()) {
        throw ContractError("slice family does not match the measurement dimensions");
    }
    const GameSpec &spec = m.spec();
    const std::size_t dim_a = std::size_t{1} << spec.n;
    const std::size_t count = challenge_count(spec);
    double term1 = 0;
    Complex term2 = 0;
    for (std::size_t c = 0; c < count; ++c) {
        const Challenge ch = challenge_at(spec, c);
        const std::uint64_t theta = ch.theta.bits().mask();
        const std::uint64_t r = ch.mask.mask();
        const std::uint64_t delta = r & theta;
        const std::uint64_t r_c = r & ~theta;
        const ChallengeBlocks blk = challenge_blocks(m, c);
        for (std::uint64_t i = 0; i < dim_a; ++i) {
            const StateVector &vi = slices[i];
            // E_b <v_i|R_b|v_i> = 1/2 <v_i|R_0 + R_1|v_i>.
            term1 += 0.5 * inner_product(vi, blk.sum * vi).real();
            const Complex t = inner_product(vi, blk.diff * slices[i ^ delta]);
            term2 += parity64(r_c & i) ? -0.5 * t : 0.5 * t;
        }
    }
    term1 /= static_cast<double>(count);
    term2 /= static_cast<double>(count);
    if (std::abs(term2.imag()) > 1e-9) {
        throw ContractError("conjecture term2 has imaginary part " + std::to_string(term2.imag()));
    }
    return {term1, term2.real(), term1 + term2.real()};
}

}  // namespace moegame
