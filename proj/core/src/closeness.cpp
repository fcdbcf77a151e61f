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

#include "qftv/closeness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qftv {

namespace {

using Index = Eigen::Index;

int qubits_of(std::size_t dim) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if ((std::size_t{1} << n) != dim || n < 1) {
        throw std::invalid_argument("closeness: channel dimension must be a power of two >= 2");
    }
    return n;
}

// Matrix elements of a channel read off its superoperator. Every measure
// below goes through here, so none of them relies on the Kraus family.
class Probe {
 public:
    explicit Probe(const KrausChannel &c)
        : n_(static_cast<Index>(c.dim())), f_(qft_matrix(qubits_of(c.dim()))), s_(superoperator(c)) {}

    Index dim() const { return n_; }
    const CMatrix &qft() const { return f_; }
    Index wrap(Index k) const { return ((k % n_) + n_) % n_; }

    // <ra| C(|u><v|) |rb>
    Complex out_elem(Index ra, Index rb, const CVector &u, const CVector &v) const {
        Complex acc = 0.0;
        Index row = ra * n_ + rb;
        for (Index a = 0; a < n_; ++a) {
            Complex ua = u(a);
            for (Index b = 0; b < n_; ++b) {
                acc += s_(row, a * n_ + b) * ua * std::conj(v(b));
            }
        }
        return acc;
    }

    // <x| C(|k><l|) |y>
    Complex in_elem(const CVector &x, Index k, Index l, const CVector &y) const {
        Complex acc = 0.0;
        Index col = k * n_ + l;
        for (Index a = 0; a < n_; ++a) {
            Complex xa = std::conj(x(a));
            for (Index b = 0; b < n_; ++b) {
                acc += xa * s_(a * n_ + b, col) * y(b);
            }
        }
        return acc;
    }

    const CMatrix &superop() const { return s_; }

 private:
    Index n_;
    CMatrix f_;
    CMatrix s_;
};

double real_average(Complex sum, double count, const char *what) {
    Complex mean = sum / count;
    if (std::abs(mean.imag()) > tol::kImag) {
        std::ostringstream msg;
        msg << what << ": expected a real value, imaginary part " << mean.imag();
        throw ConsistencyError(msg.str());
    }
    return mean.real();
}

double s1_of(const Probe &pr) {
    Complex sum = 0.0;
    for (Index k = 0; k < pr.dim(); ++k) {
        CVector fk = pr.qft().col(k);
        sum += pr.out_elem(k, k, fk, fk);
    }
    return real_average(sum, static_cast<double>(pr.dim()), "s1_measure");
}

double s2_of(const Probe &pr) {
    Complex sum = 0.0;
    for (Index k = 0; k < pr.dim(); ++k) {
        CVector fmk = pr.qft().col(pr.wrap(-k));
        sum += pr.in_elem(fmk, k, k, fmk);
    }
    return real_average(sum, static_cast<double>(pr.dim()), "s2_measure");
}

double t1_of(const Probe &pr) {
    Complex sum = 0.0;
    for (Index k = 0; k < pr.dim(); ++k) {
        CVector fk = pr.qft().col(k);
        Index mk = pr.wrap(-k);
        sum += pr.out_elem(mk, mk, fk, fk);
    }
    return real_average(sum, static_cast<double>(pr.dim()), "t1_measure");
}

double t2_of(const Probe &pr) {
    Complex sum = 0.0;
    for (Index k = 0; k < pr.dim(); ++k) {
        CVector fk = pr.qft().col(k);
        sum += pr.in_elem(fk, k, k, fk);
    }
    return real_average(sum, static_cast<double>(pr.dim()), "t2_measure");
}

double s3_double_of(const Probe &pr) {
    Complex sum = 0.0;
    for (Index k = 0; k < pr.dim(); ++k) {
        CVector fk = pr.qft().col(k);
        for (Index l = 0; l < pr.dim(); ++l) {
            sum += pr.out_elem(k, l, fk, pr.qft().col(l));
        }
    }
    double n = static_cast<double>(pr.dim());
    double v = real_average(sum, n * n, "s3 double average");
    if (v < -tol::kImag) {
        throw ConsistencyError("s3 double average is negative");
    }
    return v;
}

double t3_double_of(const Probe &pr) {
    Complex sum = 0.0;
    for (Index k = 0; k < pr.dim(); ++k) {
        CVector fk = pr.qft().col(k);
        for (Index l = 0; l < pr.dim(); ++l) {
            sum += pr.in_elem(fk, k, l, pr.qft().col(l));
        }
    }
    double n = static_cast<double>(pr.dim());
    double v = real_average(sum, n * n, "t3 double average");
    if (v < -tol::kImag) {
        throw ConsistencyError("t3 double average is negative");
    }
    return v;
}

double kraus_trace(const KrausChannel &c, const CMatrix &g) {
    double n = static_cast<double>(c.dim());
    double acc = 0.0;
    for (const auto &a : c.kraus_ops()) {
        Complex tr = (a * g).trace() / n;
        acc += std::norm(tr);
    }
    return acc;
}

double checked(double kraus, double dbl, const char *what) {
    if (std::abs(kraus - dbl) > kDualRouteTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": Kraus-trace route " << kraus << " disagrees with double average " << dbl;
        throw ConsistencyError(msg.str());
    }
    return kraus;
}

}  // namespace

double s1_measure(const KrausChannel &c) { return s1_of(Probe(c)); }
double s2_measure(const KrausChannel &c) { return s2_of(Probe(c)); }
double t1_measure(const KrausChannel &p) { return t1_of(Probe(p)); }
double t2_measure(const KrausChannel &p) { return t2_of(Probe(p)); }

double s3_kraus_trace(const KrausChannel &c) {
    return kraus_trace(c, qft_matrix(qubits_of(c.dim())));
}

double t3_kraus_trace(const KrausChannel &p) {
    return kraus_trace(p, qft_matrix(qubits_of(p.dim())).adjoint());
}

double s3_double_average(const KrausChannel &c) { return s3_double_of(Probe(c)); }
double t3_double_average(const KrausChannel &p) { return t3_double_of(Probe(p)); }

double s3_measure(const KrausChannel &c) {
    return checked(s3_kraus_trace(c), s3_double_average(c), "s3_measure");
}

double t3_measure(const KrausChannel &p) {
    return checked(t3_kraus_trace(p), t3_double_average(p), "t3_measure");
}

double cp_trace_measure(const KrausChannel &c, const KrausChannel &p) {
    if (!c.is_unitary() || !p.is_unitary()) {
        throw std::invalid_argument("cp_trace_measure: both channels must be unitary");
    }
    if (c.dim() != p.dim()) {
        throw std::invalid_argument("cp_trace_measure: dimension mismatch");
    }
    Complex tr = (c.unitary() * p.unitary()).trace();
    return std::abs(tr) / static_cast<double>(c.dim());
}

double offdiag_leakage(const KrausChannel &c, long long k) {
    Probe pr(c);
    auto n = static_cast<long long>(pr.dim());
    long long kk = ((k % n) + n) % n;
    if (kk == 0) {
        throw std::invalid_argument("offdiag_leakage: k must be nonzero mod N");
    }
    Complex sum = 0.0;
    for (Index l = 0; l < pr.dim(); ++l) {
        CVector fl = pr.qft().col(l);
        Index row = pr.wrap(static_cast<Index>(kk) + l);
        sum += pr.out_elem(row, row, fl, fl);
    }
    return real_average(sum, static_cast<double>(pr.dim()), "offdiag_leakage");
}

double orthobasis_measure(const KrausChannel &c, const CMatrix &basis) {
    Probe pr(c);
    Index n = pr.dim();
    if (basis.rows() != n || basis.cols() != n) {
        throw std::invalid_argument("orthobasis_measure: basis must be N x N");
    }
    require_unitary(basis, "orthobasis_measure: basis");
    // Column (k,l) of kron(W, conj W) is vec(F|u_k><u_l|F^dagger) with W = F U.
    CMatrix w = pr.qft() * basis;
    CMatrix kw = tensor(w, w.conjugate());
    CMatrix ku = tensor(basis, basis.conjugate());
    CMatrix mapped = pr.superop() * kw;
    Complex sum = 0.0;
    for (Index j = 0; j < n * n; ++j) {
        sum += ku.col(j).dot(mapped.col(j));
    }
    double nn = static_cast<double>(n);
    return real_average(sum, nn * nn, "orthobasis_measure");
}

PhaseCoherence phase_coherence(const std::vector<Complex> &xs) {
    if (xs.empty()) {
        throw std::invalid_argument("phase_coherence: empty input");
    }
    std::vector<double> theta(xs.size());
    Complex mean = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        double mag = std::abs(xs[p]);
        if (mag > 1.0 + 1e-12) {
            throw std::invalid_argument("phase_coherence: magnitude above 1");
        }
        theta[p] = mag > 0.0 ? std::arg(xs[p]) : 0.0;
        mean += xs[p];
    }
    double m = static_cast<double>(xs.size());
    mean /= m;
    double cos_sum = 0.0;
    for (double tp : theta) {
        for (double tq : theta) {
            cos_sum += std::cos(tp - tq);
        }
    }
    return {std::norm(mean), cos_sum / (m * m)};
}

namespace {

void fill_s(ClosenessReport &r, const KrausChannel &c) {
    Probe pr(c);
    r.s1 = s1_of(pr);
    r.s2 = s2_of(pr);
    r.s3 = checked(s3_kraus_trace(c), s3_double_of(pr), "s3_measure");
    r.eta_s1 = 1.0 - r.s1;
    r.eta_s2 = 1.0 - r.s2;
    r.eta_s3 = 1.0 - r.s3;
}

void fill_t(ClosenessReport &r, const KrausChannel &p) {
    Probe pr(p);
    r.t1 = t1_of(pr);
    r.t2 = t2_of(pr);
    r.t3 = checked(t3_kraus_trace(p), t3_double_of(pr), "t3_measure");
    r.eta_t1 = 1.0 - r.t1;
    r.eta_t2 = 1.0 - r.t2;
    r.eta_t3 = 1.0 - r.t3;
}

}  // namespace

ClosenessReport closeness_report(const KrausChannel &c, const KrausChannel &p) {
    ClosenessReport r;
    fill_s(r, c);
    fill_t(r, p);
    if (c.is_unitary() && p.is_unitary()) {
        r.cp_trace = cp_trace_measure(c, p);
    }
    return r;
}

ClosenessReport closeness_report(const KrausChannel &c) {
    ClosenessReport r;
    fill_s(r, c);
    fill_t(r, c);
    return r;
}

}  // namespace qftv
