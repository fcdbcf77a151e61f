// Copyright 2026 The qftverify Authors
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

#include "qftv/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qftv {

namespace {

using Index = Eigen::Index;

// Choi eigenvalues at or below this (relative to trace = dim) are rounding noise.
constexpr double kChoiCutoff = 1e-14;

void require_qubits(int n, const char *who) {
    if (n < 1 || n > kMaxQubits) {
        std::ostringstream msg;
        msg << who << ": qubit count " << n << " outside [1, " << kMaxQubits << "]";
        throw std::invalid_argument(msg.str());
    }
}

Complex unit_phase(double turns) {
    double angle = 2.0 * std::numbers::pi * turns;
    return {std::cos(angle), std::sin(angle)};
}

std::vector<CMatrix> reduce_via_choi(const std::vector<CMatrix> &ops) {
    auto n = ops.front().rows();
    CMatrix choi = CMatrix::Zero(n * n, n * n);
    for (const auto &a : ops) {
        CVector v(n * n);
        for (Index r = 0; r < n; ++r) {
            for (Index c = 0; c < n; ++c) {
                v(r * n + c) = a(r, c);
            }
        }
        choi.noalias() += v * v.adjoint();
    }
    return from_choi(choi, static_cast<std::size_t>(n)).kraus_ops();
}

void check_trace_preserving(const std::vector<CMatrix> &ops) {
    auto n = ops.front().rows();
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto &a : ops) {
        sum.noalias() += a.adjoint() * a;
    }
    sum -= CMatrix::Identity(n, n);
    double dev = max_abs(sum);
    if (dev > tol::kUnitary) {
        std::ostringstream msg;
        msg << "KrausChannel: sum A_i^dagger A_i deviates from identity by " << dev;
        throw std::invalid_argument(msg.str());
    }
}

void require_same_dim(const KrausChannel &a, const KrausChannel &b, const char *who) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << who << ": dimension mismatch " << a.dim() << " vs " << b.dim();
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

PhaseRegister::PhaseRegister(int n) : n_(n), dim_(0) {
    require_qubits(n, "PhaseRegister");
    dim_ = std::size_t{1} << n;
}

std::size_t PhaseRegister::wrap(long long k) const {
    auto m = static_cast<long long>(dim_);
    long long r = k % m;
    if (r < 0) {
        r += m;
    }
    return static_cast<std::size_t>(r);
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
    if (ops_.empty()) {
        throw std::invalid_argument("KrausChannel: empty Kraus family");
    }
    auto n = ops_.front().rows();
    if (n == 0) {
        throw std::invalid_argument("KrausChannel: zero-dimensional operator");
    }
    for (const auto &a : ops_) {
        if (a.rows() != n || a.cols() != n) {
            throw std::invalid_argument("KrausChannel: Kraus operators must all be dim x dim");
        }
    }
    check_trace_preserving(ops_);
    if (ops_.size() > static_cast<std::size_t>(n * n)) {
        ops_ = reduce_via_choi(ops_);
        check_trace_preserving(ops_);
    }
}

const CMatrix &KrausChannel::unitary() const {
    if (!is_unitary()) {
        throw std::invalid_argument("KrausChannel::unitary: channel has more than one Kraus operator");
    }
    return ops_.front();
}

CMatrix qft_matrix(int n) {
    PhaseRegister reg(n);
    auto dim = static_cast<Index>(reg.dim());
    double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    CMatrix f(dim, dim);
    for (Index j = 0; j < dim; ++j) {
        for (Index k = 0; k < dim; ++k) {
            // Reduce jk mod N first so the phase argument stays small and exact.
            auto jk = static_cast<std::size_t>(j * k) % reg.dim();
            f(j, k) = scale * unit_phase(static_cast<double>(jk) / static_cast<double>(dim));
        }
    }
    return f;
}

PureState fourier_basis_state(long long k, int n) {
    PhaseRegister reg(n);
    std::size_t kk = reg.wrap(k);
    auto dim = static_cast<Index>(reg.dim());
    double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    CVector v(dim);
    for (Index l = 0; l < dim; ++l) {
        auto kl = (kk * static_cast<std::size_t>(l)) % reg.dim();
        v(l) = scale * unit_phase(static_cast<double>(kl) / static_cast<double>(dim));
    }
    return PureState(std::move(v));
}

CMatrix phase_unitary(long long k, int n) {
    PhaseRegister reg(n);
    std::size_t kk = reg.wrap(k);
    auto dim = static_cast<Index>(reg.dim());
    // Qubit l = 1 is the most significant bit and carries e^{2 pi i k / 2}.
    CVector diag = CVector::Ones(dim);
    for (Index idx = 0; idx < dim; ++idx) {
        for (int l = 1; l <= n; ++l) {
            bool bit = (static_cast<std::size_t>(idx) >> (n - l)) & 1U;
            if (bit) {
                std::size_t denom = std::size_t{1} << l;
                diag(idx) *= unit_phase(static_cast<double>(kk % denom) / static_cast<double>(denom));
            }
        }
    }
    return diag.asDiagonal();
}

CMatrix hadamard_all(int n) {
    PhaseRegister reg(n);
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CMatrix out = h;
    for (int q = 1; q < n; ++q) {
        out = tensor(out, h);
    }
    return out;
}

CMatrix reflection_matrix(int n) {
    PhaseRegister reg(n);
    auto dim = static_cast<Index>(reg.dim());
    CMatrix r = CMatrix::Zero(dim, dim);
    for (Index k = 0; k < dim; ++k) {
        r(static_cast<Index>(reg.wrap(-k)), k) = 1.0;
    }
    return r;
}

KrausChannel identity_channel(std::size_t dim) {
    auto d = static_cast<Index>(dim);
    return KrausChannel({CMatrix::Identity(d, d)});
}

KrausChannel unitary_channel(const CMatrix &u) {
    require_unitary(u, "unitary_channel: input");
    return KrausChannel({u});
}

KrausChannel reflection_channel(int n) { return KrausChannel({reflection_matrix(n)}); }

KrausChannel inverse_channel(const KrausChannel &c) {
    return KrausChannel({c.unitary().adjoint()});
}

CMatrix apply_to_operator(const KrausChannel &c, const CMatrix &x) {
    auto n = static_cast<Index>(c.dim());
    if (x.rows() != n || x.cols() != n) {
        std::ostringstream msg;
        msg << "apply: operator is " << x.rows() << "x" << x.cols() << ", channel dim " << n;
        throw std::invalid_argument(msg.str());
    }
    CMatrix out = CMatrix::Zero(n, n);
    for (const auto &a : c.kraus_ops()) {
        out.noalias() += a * x * a.adjoint();
    }
    return out;
}

DensityOp apply(const KrausChannel &c, const DensityOp &rho) {
    return DensityOp(apply_to_operator(c, rho.matrix()));
}

CMatrix superoperator(const KrausChannel &c) {
    auto n = static_cast<Index>(c.dim());
    CMatrix s = CMatrix::Zero(n * n, n * n);
    for (const auto &a : c.kraus_ops()) {
        CMatrix ac = a.conjugate();
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                s.block(i * n, j * n, n, n) += a(i, j) * ac;
            }
        }
    }
    return s;
}

CMatrix choi_matrix(const KrausChannel &c) {
    auto n = static_cast<Index>(c.dim());
    CMatrix choi = CMatrix::Zero(n * n, n * n);
    for (const auto &a : c.kraus_ops()) {
        CVector v(n * n);
        for (Index r = 0; r < n; ++r) {
            for (Index col = 0; col < n; ++col) {
                v(r * n + col) = a(r, col);
            }
        }
        choi.noalias() += v * v.adjoint();
    }
    return choi;
}

KrausChannel from_choi(const CMatrix &choi, std::size_t dim) {
    auto n = static_cast<Index>(dim);
    if (choi.rows() != n * n || choi.cols() != n * n) {
        throw std::invalid_argument("from_choi: Choi matrix must be dim^2 x dim^2");
    }
    HermEig eig = herm_eig(choi);
    if (eig.values(eig.values.size() - 1) < -tol::kPsd) {
        throw std::invalid_argument("from_choi: Choi matrix is not positive semidefinite");
    }
    double cutoff = kChoiCutoff * static_cast<double>(dim);
    std::vector<CMatrix> ops;
    for (Index j = 0; j < eig.values.size(); ++j) {
        double lambda = eig.values(j);
        if (lambda <= cutoff) {
            break;  // descending order
        }
        double w = std::sqrt(lambda);
        CMatrix a(n, n);
        for (Index r = 0; r < n; ++r) {
            for (Index col = 0; col < n; ++col) {
                a(r, col) = w * eig.vectors(r * n + col, j);
            }
        }
        ops.push_back(std::move(a));
    }
    if (ops.empty()) {
        throw std::invalid_argument("from_choi: Choi matrix has no positive eigenvalues");
    }
    return KrausChannel(std::move(ops));
}

namespace {

// Choi of outer o inner from the product of superoperators:
// J_{(a,a'),(b,b')} = S_{(a,b),(a',b')}.
CMatrix choi_from_superop(const CMatrix &s, Index n) {
    CMatrix choi(n * n, n * n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            for (Index ap = 0; ap < n; ++ap) {
                for (Index bp = 0; bp < n; ++bp) {
                    choi(a * n + ap, b * n + bp) = s(a * n + b, ap * n + bp);
                }
            }
        }
    }
    return 0.5 * (choi + choi.adjoint());
}

}  // namespace

KrausChannel compose(const KrausChannel &outer, const KrausChannel &inner) {
    require_same_dim(outer, inner, "compose");
    auto n = static_cast<Index>(outer.dim());
    std::size_t count = outer.kraus_count() * inner.kraus_count();
    if (count <= static_cast<std::size_t>(n * n)) {
        std::vector<CMatrix> ops;
        ops.reserve(count);
        for (const auto &b : outer.kraus_ops()) {
            for (const auto &a : inner.kraus_ops()) {
                ops.push_back(b * a);
            }
        }
        return KrausChannel(std::move(ops));
    }
    CMatrix s = superoperator(outer) * superoperator(inner);
    return from_choi(choi_from_superop(s, n), outer.dim());
}

KrausChannel channel_power(const KrausChannel &c, int p) {
    if (p < 1 || p > 3) {
        throw std::invalid_argument("channel_power: exponent must be 1, 2 or 3");
    }
    KrausChannel acc = c;
    for (int i = 1; i < p; ++i) {
        acc = compose(c, acc);
    }
    return acc;
}

KrausChannel lift_left(const KrausChannel &c, std::size_t right_dim) {
    if (right_dim == 0) {
        throw std::invalid_argument("lift_left: right_dim must be positive");
    }
    auto d = static_cast<Index>(right_dim);
    CMatrix id = CMatrix::Identity(d, d);
    std::vector<CMatrix> ops;
    ops.reserve(c.kraus_count());
    for (const auto &a : c.kraus_ops()) {
        ops.push_back(tensor(a, id));
    }
    return KrausChannel(std::move(ops));
}

CMatrix apply_lifted(const KrausChannel &c, const CMatrix &x, std::size_t right_dim) {
    auto n = static_cast<Index>(c.dim());
    auto m = static_cast<Index>(right_dim);
    auto total = n * m;
    if (x.rows() != total || x.cols() != total) {
        throw std::invalid_argument("apply_lifted: operator does not match (N x right_dim)");
    }
    auto r = static_cast<Index>(c.kraus_count());
    if (2 * r < n) {
        CMatrix out = CMatrix::Zero(total, total);
        CMatrix id = CMatrix::Identity(m, m);
        for (const auto &a : c.kraus_ops()) {
            CMatrix big = tensor(a, id);
            out.noalias() += big * x * big.adjoint();
        }
        return out;
    }
    // Gather the N x N sub-blocks X_{xy}[a, b] = x[(a, x), (b, y)] into columns.
    CMatrix s = superoperator(c);
    CMatrix gathered(n * n, m * m);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            for (Index xi = 0; xi < m; ++xi) {
                for (Index yi = 0; yi < m; ++yi) {
                    gathered(a * n + b, xi * m + yi) = x(a * m + xi, b * m + yi);
                }
            }
        }
    }
    CMatrix mapped = s * gathered;
    CMatrix out(total, total);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            for (Index xi = 0; xi < m; ++xi) {
                for (Index yi = 0; yi < m; ++yi) {
                    out(a * m + xi, b * m + yi) = mapped(a * n + b, xi * m + yi);
                }
            }
        }
    }
    return out;
}

bool channels_equal(const KrausChannel &a, const KrausChannel &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    auto n = static_cast<Index>(a.dim());
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            CMatrix unit = CMatrix::Zero(n, n);
            unit(i, j) = 1.0;
            if (max_abs(apply_to_operator(a, unit) - apply_to_operator(b, unit)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qftv
