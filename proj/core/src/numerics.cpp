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

#include "qftv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qftv {

namespace {

std::string dims_str(std::size_t a, std::size_t b) {
    std::ostringstream out;
    out << a << " vs " << b;
    return out.str();
}

}  // namespace

double max_abs(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix &m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    CMatrix gram = m.adjoint() * m;
    gram -= CMatrix::Identity(m.rows(), m.cols());
    return max_abs(gram) <= tol;
}

void require_unitary(const CMatrix &m, const std::string &what) {
    if (!is_unitary(m)) {
        throw std::invalid_argument(what + " is not unitary within tolerance");
    }
}

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    double norm = amps_.norm();
    if (std::abs(norm - 1.0) > tol::kNorm) {
        std::ostringstream msg;
        msg << "PureState: norm " << norm << " differs from 1";
        throw std::invalid_argument(msg.str());
    }
}

PureState PureState::normalized(const CVector &v) {
    double norm = v.norm();
    if (!(norm > 0.0)) {
        throw std::invalid_argument("PureState::normalized: zero vector");
    }
    return PureState(v / norm);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("PureState::basis: index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

Complex inner(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner: dimension mismatch " + dims_str(a.dim(), b.dim()));
    }
    return a.amplitudes().dot(b.amplitudes());
}

DensityOp::DensityOp(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw std::invalid_argument("DensityOp: matrix must be square and nonempty");
    }
    if (!is_hermitian(m_)) {
        throw std::invalid_argument("DensityOp: matrix is not Hermitian");
    }
    Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > tol::kNorm) {
        std::ostringstream msg;
        msg << "DensityOp: trace " << tr << " differs from 1";
        throw std::invalid_argument(msg.str());
    }
    // Hermitian part only; the anti-Hermitian residue is below kHermitian.
    CMatrix herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol::kPsd) {
        std::ostringstream msg;
        msg << "DensityOp: negative eigenvalue " << solver.eigenvalues().minCoeff();
        throw std::invalid_argument(msg.str());
    }
}

DensityOp DensityOp::pure(const PureState &psi) { return DensityOp(psi.projector()); }

DensityOp DensityOp::maximally_mixed(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return DensityOp(CMatrix::Identity(d, d) / static_cast<double>(dim));
}

RVector DensityOp::probabilities() const {
    RVector p = m_.diagonal().real();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        p(i) = std::max(p(i), 0.0);
    }
    return p;
}

CMatrix tensor(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix &m, std::size_t dim_a, std::size_t dim_b, Keep keep) {
    auto da = static_cast<Eigen::Index>(dim_a);
    auto db = static_cast<Eigen::Index>(dim_b);
    if (m.rows() != da * db || m.cols() != da * db) {
        throw std::invalid_argument("partial_trace: matrix is not " + dims_str(dim_a, dim_b) +
                                    " bipartite");
    }
    if (keep == Keep::first) {
        CMatrix out = CMatrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < da; ++j) {
                out(i, j) = m.block(i * db, j * db, db, db).trace();
            }
        }
        return out;
    }
    CMatrix out = CMatrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i) {
        out += m.block(i * db, i * db, db, db);
    }
    return out;
}

DensityOp partial_trace(const DensityOp &rho, std::size_t dim_a, std::size_t dim_b, Keep keep) {
    return DensityOp(partial_trace(rho.matrix(), dim_a, dim_b, keep));
}

HermEig herm_eig(const CMatrix &h) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("herm_eig: input is not Hermitian");
    }
    CMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("herm_eig: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    HermEig out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

double operator_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double fidelity_pure(const DensityOp &rho, const PureState &psi) {
    if (rho.dim() != psi.dim()) {
        throw std::invalid_argument("fidelity_pure: dimension mismatch " +
                                    dims_str(rho.dim(), psi.dim()));
    }
    Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
    if (std::abs(f.imag()) > tol::kImag) {
        throw std::logic_error("fidelity_pure: expectation has an imaginary part");
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

double trace_distance(const DensityOp &rho, const DensityOp &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch " +
                                    dims_str(rho.dim(), sigma.dim()));
    }
    CMatrix diff = rho.matrix() - sigma.matrix();
    diff = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff, Eigen::EigenvaluesOnly);
    double t = 0.5 * solver.eigenvalues().cwiseAbs().sum();
    return std::clamp(t, 0.0, 1.0);
}

double fidelity_chain_bound(double f_ab, double f_bc) {
    auto in_range = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!in_range(f_ab) || !in_range(f_bc)) {
        throw std::invalid_argument("fidelity_chain_bound: fidelities must lie in [0, 1]");
    }
    return 1.0 - std::sqrt(1.0 - f_ab) - std::sqrt(1.0 - f_bc);
}

}  // namespace qftv
