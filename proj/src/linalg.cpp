#include "tele/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tele {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_dims(const CMatrix& m, std::span<const std::size_t> dims) {
    if (dims.empty() || product(dims) != m.dim())
        throw InvalidInput("subsystem dimensions do not match matrix dimension");
}

// Mixed-radix digits of idx, most significant (subsystem 0) first.
void split_index(std::size_t idx, std::span<const std::size_t> dims, std::span<std::size_t> out) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

std::size_t join_index(std::span<const std::size_t> digits, std::span<const std::size_t> dims) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

CMatrix::CMatrix(std::size_t dim, std::initializer_list<cplx> entries) : CMatrix(dim) {
    if (entries.size() != dim * dim) throw InvalidInput("entry count does not match dim*dim");
    std::copy(entries.begin(), entries.end(), data_.begin());
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::outer(std::span<const cplx> ket) {
    CMatrix m(ket.size());
    for (std::size_t r = 0; r < ket.size(); ++r)
        for (std::size_t c = 0; c < ket.size(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

CMatrix CMatrix::conj() const {
    CMatrix out(*this);
    for (auto& x : out.data_) x = std::conj(x);
    return out;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (o.dim_ != dim_) throw InvalidInput("dimension mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (o.dim_ != dim_) throw InvalidInput("dimension mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim_ != b.dim_) throw InvalidInput("dimension mismatch in *");
    const std::size_t n = a.dim_;
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> v) const {
    if (v.size() != dim_) throw InvalidInput("vector length mismatch");
    std::vector<cplx> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

double hermiticity_error(const CMatrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = r; c < m.dim(); ++c)
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

const CMatrix& pauli(int k) {
    static const std::array<CMatrix, 4> sigma = {
        CMatrix(2, {1.0, 0.0, 0.0, 1.0}),
        CMatrix(2, {0.0, 1.0, 1.0, 0.0}),
        CMatrix(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}),
        CMatrix(2, {1.0, 0.0, 0.0, -1.0}),
    };
    if (k < 0 || k > 3) throw InvalidInput("Pauli index must be 0..3");
    return sigma[static_cast<std::size_t>(k)];
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    if (na == 0 || nb == 0) throw InvalidInput("kron of empty matrix");
    if (na > 4096 / nb) throw InvalidInput("kron result exceeds supported dimension");
    CMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

CMatrix kron(std::initializer_list<CMatrix> factors) {
    if (factors.size() == 0) throw InvalidInput("kron of nothing");
    auto it = factors.begin();
    CMatrix out = *it++;
    for (; it != factors.end(); ++it) out = kron(out, *it);
    return out;
}

std::vector<cplx> vec(const CMatrix& m) {
    const std::size_t d = m.dim();
    std::vector<cplx> v(d * d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) v[c * d + r] = m(r, c);
    return v;
}

CMatrix unvec(std::span<const cplx> v) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) throw InvalidInput("vector length is not a perfect square");
    CMatrix m(d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) m(r, c) = v[c * d + r];
    return m;
}

CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
    check_dims(m, dims);
    if (keep.empty()) throw InvalidInput("partial_trace: keep set is empty");
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) throw InvalidInput("partial_trace: subsystem index out of range");
        if (kept[k]) throw InvalidInput("partial_trace: duplicate subsystem index");
        kept[k] = true;
    }
    std::vector<std::size_t> keep_dims, kept_sorted;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (kept[k]) {
            keep_dims.push_back(dims[k]);
            kept_sorted.push_back(k);
        }
    CMatrix out(product(keep_dims));
    const std::size_t n = m.dim();
    std::vector<std::size_t> rd(dims.size()), cd(dims.size()), sub(keep_dims.size());
    for (std::size_t r = 0; r < n; ++r) {
        split_index(r, dims, rd);
        for (std::size_t c = 0; c < n; ++c) {
            split_index(c, dims, cd);
            bool diagonal_in_traced = true;
            for (std::size_t k = 0; k < dims.size() && diagonal_in_traced; ++k)
                if (!kept[k] && rd[k] != cd[k]) diagonal_in_traced = false;
            if (!diagonal_in_traced) continue;
            for (std::size_t i = 0; i < kept_sorted.size(); ++i) sub[i] = rd[kept_sorted[i]];
            const std::size_t orow = join_index(sub, keep_dims);
            for (std::size_t i = 0; i < kept_sorted.size(); ++i) sub[i] = cd[kept_sorted[i]];
            const std::size_t ocol = join_index(sub, keep_dims);
            out(orow, ocol) += m(r, c);
        }
    }
    return out;
}

CMatrix partial_transpose(const CMatrix& m, std::span<const std::size_t> dims,
                          std::size_t subsystem) {
    check_dims(m, dims);
    if (subsystem >= dims.size()) throw InvalidInput("partial_transpose: subsystem index out of range");
    const std::size_t n = m.dim();
    CMatrix out(n);
    std::vector<std::size_t> rd(dims.size()), cd(dims.size());
    for (std::size_t r = 0; r < n; ++r) {
        split_index(r, dims, rd);
        for (std::size_t c = 0; c < n; ++c) {
            split_index(c, dims, cd);
            std::swap(rd[subsystem], cd[subsystem]);
            out(join_index(rd, dims), join_index(cd, dims)) = m(r, c);
            std::swap(rd[subsystem], cd[subsystem]);
        }
    }
    return out;
}

CMatrix permute_subsystems(const CMatrix& m, std::span<const std::size_t> dims,
                           std::span<const std::size_t> perm) {
    check_dims(m, dims);
    if (perm.size() != dims.size()) throw InvalidInput("permutation length mismatch");
    std::vector<bool> seen(dims.size(), false);
    std::vector<std::size_t> new_dims(dims.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (perm[k] >= dims.size() || seen[perm[k]]) throw InvalidInput("invalid permutation");
        seen[perm[k]] = true;
        new_dims[k] = dims[perm[k]];
    }
    const std::size_t n = m.dim();
    // Map each new index to the original index.
    std::vector<std::size_t> to_old(n), nd(dims.size()), od(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        split_index(i, new_dims, nd);
        for (std::size_t k = 0; k < perm.size(); ++k) od[perm[k]] = nd[k];
        to_old[i] = join_index(od, dims);
    }
    CMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = m(to_old[r], to_old[c]);
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    if (hermiticity_error(m) > kTolerances.hermiticity)
        throw InvalidInput("hermitian_eigenvalues: input is not Hermitian");
    const std::size_t n = m.dim();
    CMatrix a = m;
    double scale = 0.0;
    for (auto x : a.data()) scale = std::max(scale, std::abs(x));

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-16 * std::max(scale, 1e-300)) break;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= 1e-300) continue;
                // Rotate the phase of a(p,q) onto the positive real axis.
                const cplx phase = a(p, q) / mag;
                for (std::size_t k = 0; k < n; ++k) {
                    a(k, q) *= std::conj(phase);
                    a(q, k) *= phase;
                }
                a(p, q) = mag;
                a(q, p) = mag;

                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

StateDiagnostics diagnose(const CMatrix& m) {
    StateDiagnostics d{};
    d.hermiticity = hermiticity_error(m);
    d.trace_error = std::abs(m.trace() - 1.0);
    if (d.hermiticity <= kTolerances.hermiticity) {
        d.min_eigenvalue = hermitian_eigenvalues(m).front();
    } else {
        d.min_eigenvalue = -std::numeric_limits<double>::infinity();
    }
    return d;
}

bool satisfies_state_invariants(const CMatrix& m, const Tolerances& tol) {
    for (auto x : m.data())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    const auto d = diagnose(m);
    return d.hermiticity <= tol.hermiticity && d.trace_error <= tol.trace &&
           d.min_eigenvalue >= tol.positivity_floor;
}

DensityMatrix::DensityMatrix(CMatrix m, std::vector<std::size_t> dims)
    : m_(std::move(m)), dims_(std::move(dims)) {
    check_dims(m_, dims_);
    if (!satisfies_state_invariants(m_)) {
        const auto d = diagnose(m_);
        throw InvalidInput("not a density matrix: hermiticity " + std::to_string(d.hermiticity) +
                           ", trace error " + std::to_string(d.trace_error) + ", min eigenvalue " +
                           std::to_string(d.min_eigenvalue));
    }
}

DensityMatrix DensityMatrix::trusted(CMatrix m, std::vector<std::size_t> dims) {
    DensityMatrix out;
    out.m_ = std::move(m);
    out.dims_ = std::move(dims);
    return out;
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> ket, std::vector<std::size_t> dims) {
    return DensityMatrix(CMatrix::outer(ket), std::move(dims));
}

DensityMatrix DensityMatrix::reduced(std::span<const std::size_t> keep) const {
    std::vector<std::size_t> sorted_keep(keep.begin(), keep.end());
    std::sort(sorted_keep.begin(), sorted_keep.end());
    std::vector<std::size_t> kd;
    for (auto k : sorted_keep) {
        if (k >= dims_.size()) throw InvalidInput("reduced: subsystem index out of range");
        kd.push_back(dims_[k]);
    }
    return DensityMatrix(tele::partial_trace(m_, dims_, keep), std::move(kd));
}

CMatrix DensityMatrix::partial_transpose(std::size_t subsystem) const {
    return tele::partial_transpose(m_, dims_, subsystem);
}

}  // namespace tele
