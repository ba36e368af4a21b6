#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace tele {

using cplx = std::complex<double>;

// Numerical tolerances shared by validation and property checks.
struct Tolerances {
    double hermiticity = 1e-10;
    double trace = 1e-10;
    double positivity_floor = -1e-9;
};

inline constexpr Tolerances kTolerances{};

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim);
    CMatrix(std::size_t dim, std::initializer_list<cplx> entries);

    static CMatrix identity(std::size_t dim);
    static CMatrix diagonal(std::span<const cplx> diag);
    static CMatrix outer(std::span<const cplx> ket);  // |v><v|

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;
    cplx trace() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    std::vector<cplx> apply(std::span<const cplx> v) const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

// Largest entrywise modulus of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
// max |M - M^dagger| entrywise.
double hermiticity_error(const CMatrix& m);

// sigma^0 .. sigma^3.
const CMatrix& pauli(int k);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron(std::initializer_list<CMatrix> factors);

// Column-stacking vectorisation: vec(M)[c*d + r] = M(r, c).
std::vector<cplx> vec(const CMatrix& m);
CMatrix unvec(std::span<const cplx> v);

// Subsystem 0 is the leftmost tensor factor. Kept factors appear in ascending
// subsystem order in the result.
CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);
CMatrix partial_transpose(const CMatrix& m, std::span<const std::size_t> dims,
                          std::size_t subsystem);
// Reorder tensor factors: factor k of the result is factor perm[k] of m.
CMatrix permute_subsystems(const CMatrix& m, std::span<const std::size_t> dims,
                           std::span<const std::size_t> perm);

// Cyclic Jacobi. Ascending order. Throws InvalidInput on non-Hermitian input.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

// Hermitian, unit-trace, PSD state over qubit-like factors.
class DensityMatrix {
public:
    DensityMatrix() = default;
    // Validates all three invariants; throws InvalidInput.
    DensityMatrix(CMatrix m, std::vector<std::size_t> dims);

    // Validation skipped; for callers that already hold a checked state.
    static DensityMatrix trusted(CMatrix m, std::vector<std::size_t> dims);
    static DensityMatrix pure(std::span<const cplx> ket, std::vector<std::size_t> dims);

    const CMatrix& matrix() const { return m_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return m_.dim(); }

    DensityMatrix reduced(std::span<const std::size_t> keep) const;
    CMatrix partial_transpose(std::size_t subsystem) const;

private:
    CMatrix m_;
    std::vector<std::size_t> dims_;
};

struct StateDiagnostics {
    double hermiticity;
    double trace_error;
    double min_eigenvalue;
};
StateDiagnostics diagnose(const CMatrix& m);
bool satisfies_state_invariants(const CMatrix& m, const Tolerances& tol = kTolerances);

}  // namespace tele
