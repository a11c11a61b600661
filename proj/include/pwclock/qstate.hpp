// Copyright 2026 The pwclock Authors
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

// Complex vectors and matrices over labeled polarization bases.
//
// Basis order: single photon [H, V]; photon pair [HH, HV, VH, VV] with the
// clock photon as the first (slower-varying) tensor factor.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwclock/errors.hpp"

namespace pwclock {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;

enum class Polarization { H, V };
enum class Subsystem { clock, system };

struct BasisLabel {
    Subsystem subsystem;
    Polarization polarization;
};

constexpr std::size_t ordinal(Polarization p) { return p == Polarization::H ? 0 : 1; }
/// +1 for H, -1 for V.
constexpr int dichotomic_value(Polarization p) { return p == Polarization::H ? 1 : -1; }

/// Dense square complex matrix, row-major. No invariants beyond squareness.
class OperatorMatrix {
  public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (dim == 0) {
            throw UsageError("operator dimension must be positive");
        }
    }
    OperatorMatrix(std::size_t dim, std::vector<Complex> row_major) : dim_(dim), data_(std::move(row_major)) {
        if (dim == 0 || data_.size() != dim * dim) {
            throw UsageError("operator entries do not form a square matrix of dimension " + std::to_string(dim));
        }
    }
    OperatorMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto &row : rows) {
            if (row.size() != dim_) {
                throw UsageError("operator rows must all have length equal to the row count");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        if (dim_ == 0) {
            throw UsageError("operator dimension must be positive");
        }
    }

    static OperatorMatrix identity(std::size_t dim) {
        OperatorMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }
    static OperatorMatrix diagonal(std::span<const double> diag) {
        OperatorMatrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }
    static OperatorMatrix diagonal(std::initializer_list<double> diag) {
        return diagonal(std::span<const double>(diag.begin(), diag.size()));
    }

    std::size_t dim() const { return dim_; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> entries() const { return data_; }

    OperatorMatrix adjoint() const {
        OperatorMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest entry modulus.
    double max_abs() const {
        double m = 0.0;
        for (const auto &z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    /// Induced 1-norm (max column sum).
    double norm1() const {
        double best = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < dim_; ++r) {
                s += std::abs((*this)(r, c));
            }
            best = std::max(best, s);
        }
        return best;
    }

    OperatorMatrix &operator+=(const OperatorMatrix &o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    OperatorMatrix &operator-=(const OperatorMatrix &o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    OperatorMatrix &operator*=(Complex s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix &b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix &b) { return a -= b; }
    friend OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }
    friend OperatorMatrix operator*(OperatorMatrix a, Complex s) { return a *= s; }

    friend OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
        a.require_same_dim(b);
        const std::size_t n = a.dim_;
        OperatorMatrix out(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    friend Amplitudes operator*(const OperatorMatrix &a, std::span<const Complex> v) {
        if (v.size() != a.dim_) {
            throw UsageError("operator of dimension " + std::to_string(a.dim_) + " applied to vector of length " +
                             std::to_string(v.size()));
        }
        Amplitudes out(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < a.dim_; ++c) {
                acc += a(r, c) * v[c];
            }
            out[r] = acc;
        }
        return out;
    }

  private:
    void require_same_dim(const OperatorMatrix &o) const {
        if (o.dim_ != dim_) {
            throw UsageError("operator dimension mismatch: " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
        }
    }

    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

inline double squared_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return s;
}

/// <a|b>, antilinear in the first argument.
inline Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw UsageError("inner product of vectors with different lengths");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// |a><b|
inline OperatorMatrix outer_product(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw UsageError("outer product of vectors with different lengths");
    }
    OperatorMatrix m(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < b.size(); ++c) {
            m(r, c) = a[r] * std::conj(b[c]);
        }
    }
    return m;
}

/// Unit-norm, finite amplitude vector.
class StateVector {
  public:
    explicit StateVector(Amplitudes amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.empty()) {
            throw UsageError("state vector must have positive dimension");
        }
        for (const auto &z : amps_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw UsageError("state vector contains a non-finite amplitude");
            }
        }
        const double dev = std::abs(squared_norm(amps_) - 1.0);
        if (dev > kAlgebraicTol) {
            throw UsageError("state vector is not unit-norm (|norm^2 - 1| = " + std::to_string(dev) + ")");
        }
    }
    StateVector(std::initializer_list<Complex> amplitudes) : StateVector(Amplitudes(amplitudes)) {}

    /// Rescales a nonzero vector to unit norm.
    static StateVector normalized(Amplitudes v) {
        const double n = std::sqrt(squared_norm(v));
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw NumericalIntegrityError("cannot normalize a zero or non-finite vector");
        }
        for (auto &z : v) {
            z /= n;
        }
        return StateVector(std::move(v));
    }

    std::size_t dim() const { return amps_.size(); }
    const Amplitudes &amplitudes() const { return amps_; }
    operator std::span<const Complex>() const { return amps_; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

  private:
    Amplitudes amps_;
};

inline Amplitudes operator*(const OperatorMatrix &a, const StateVector &v) {
    return a * std::span<const Complex>(v.amplitudes());
}

/// <psi|A|psi>
inline Complex expectation(const StateVector &psi, const OperatorMatrix &a) {
    return inner_product(psi.amplitudes(), a * psi);
}

/// Kronecker product; the left factor indexes the slower-varying block.
inline Amplitudes tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
    Amplitudes out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

inline StateVector tensor_product(const StateVector &a, const StateVector &b) {
    return StateVector(tensor_product(std::span<const Complex>(a), std::span<const Complex>(b)));
}

inline OperatorMatrix tensor_product(const OperatorMatrix &a, const OperatorMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    OperatorMatrix out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra) {
        for (std::size_t ca = 0; ca < na; ++ca) {
            const Complex s = a(ra, ca);
            for (std::size_t rb = 0; rb < nb; ++rb) {
                for (std::size_t cb = 0; cb < nb; ++cb) {
                    out(ra * nb + rb, ca * nb + cb) = s * b(rb, cb);
                }
            }
        }
    }
    return out;
}

/// Single-photon basis ket.
inline StateVector basis_state(Polarization p) {
    Amplitudes v(2);
    v[ordinal(p)] = 1.0;
    return StateVector(std::move(v));
}

/// Two-photon basis ket |clock>|system>.
inline StateVector basis_state(Polarization clock, Polarization system) {
    Amplitudes v(4);
    v[2 * ordinal(clock) + ordinal(system)] = 1.0;
    return StateVector(std::move(v));
}

/// (|HV> - |VH>)/sqrt(2), reference form used for comparisons.
inline StateVector singlet_state() {
    const double s = 1.0 / std::sqrt(2.0);
    return StateVector{0.0, s, -s, 0.0};
}

/// Partial inner product <p|_clock |psi>, leaving a system-photon vector.
inline Amplitudes project_clock(const StateVector &psi, Polarization p) {
    if (psi.dim() != 4) {
        throw UsageError("clock projection needs a two-photon state");
    }
    const std::size_t base = 2 * ordinal(p);
    return {psi[base], psi[base + 1]};
}

/// True when |<a|b>| >= 1 - tol, i.e. equal up to a global phase.
inline bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol = kEigenTol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    return std::abs(inner_product(a.amplitudes(), b.amplitudes())) >= 1.0 - tol;
}

/// Eigenvalues (ascending) of the Hermitian part (A + A^dagger)/2.
///
/// The n x n Hermitian matrix H = X + iY is embedded as the real symmetric
/// [[X, -Y], [Y, X]], whose spectrum is that of H with every eigenvalue
/// doubled; cyclic Jacobi diagonalizes it and one of each pair is kept.
inline std::vector<double> hermitian_eigenvalues(const OperatorMatrix &a) {
    const std::size_t n = a.dim();
    const std::size_t m = 2 * n;
    std::vector<double> s(m * m);
    auto at = [&](std::size_t r, std::size_t c) -> double & { return s[r * m + c]; };
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Complex h = 0.5 * (a(r, c) + std::conj(a(c, r)));
            at(r, c) = h.real();
            at(r + n, c + n) = h.real();
            at(r, c + n) = -h.imag();
            at(r + n, c) = h.imag();
        }
    }

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double scale = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < m; ++q) {
                (p == q ? scale : off) += at(p, q) * at(p, q);
            }
        }
        if (off <= 1e-34 * (scale + off) || off == 0.0) {
            break;
        }
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - sn * akq;
                    at(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - sn * aqk;
                    at(q, k) = sn * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> doubled(m);
    for (std::size_t i = 0; i < m; ++i) {
        doubled[i] = at(i, i);
    }
    std::sort(doubled.begin(), doubled.end());
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return eig;
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(OperatorMatrix m);

    /// |psi><psi|; valid by construction, so the spectral check is skipped.
    static DensityMatrix pure(const StateVector &psi) {
        return DensityMatrix(outer_product(psi.amplitudes(), psi.amplitudes()), Trusted{});
    }

    std::size_t dim() const { return m_.dim(); }
    const OperatorMatrix &matrix() const { return m_; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  private:
    struct Trusted {};
    DensityMatrix(OperatorMatrix m, Trusted) : m_(std::move(m)) {}

    OperatorMatrix m_;
};

/// Tr[a * rho] without forming the product.
inline Complex trace_of_product(const OperatorMatrix &a, const OperatorMatrix &rho) {
    if (a.dim() != rho.dim()) {
        throw UsageError("trace_of_product dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(rho.dim()));
    }
    Complex acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t k = 0; k < a.dim(); ++k) {
            acc += a(r, k) * rho(k, r);
        }
    }
    return acc;
}

inline Complex trace_of_product(const OperatorMatrix &a, const DensityMatrix &rho) {
    return trace_of_product(a, rho.matrix());
}

enum class Predicate { finite, unit_norm, hermitian, unitary, trace_one, positive_semidefinite, effect };

struct Validation {
    bool passed;
    double violation;
};

namespace detail {

inline double finite_violation(std::span<const Complex> v) {
    for (const auto &z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return 0.0;
}

inline Validation verdict(double violation, double tol) { return {violation <= tol, violation}; }

inline Validation not_applicable() { return {false, std::numeric_limits<double>::infinity()}; }

}  // namespace detail

inline Validation validate(std::span<const Complex> v, Predicate pred) {
    switch (pred) {
        case Predicate::finite:
            return detail::verdict(detail::finite_violation(v), 0.0);
        case Predicate::unit_norm:
            return detail::verdict(std::abs(squared_norm(v) - 1.0), kAlgebraicTol);
        default:
            return detail::not_applicable();
    }
}

inline Validation validate(const StateVector &v, Predicate pred) {
    return validate(std::span<const Complex>(v.amplitudes()), pred);
}

inline Validation validate(const OperatorMatrix &a, Predicate pred) {
    const std::size_t n = a.dim();
    switch (pred) {
        case Predicate::finite:
            return detail::verdict(detail::finite_violation(a.entries()), 0.0);
        case Predicate::hermitian: {
            double worst = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = r; c < n; ++c) {
                    worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
                }
            }
            return detail::verdict(worst, kAlgebraicTol);
        }
        case Predicate::unitary:
            return detail::verdict((a.adjoint() * a - OperatorMatrix::identity(n)).max_abs(), kAlgebraicTol);
        case Predicate::trace_one:
            return detail::verdict(std::abs(a.trace() - 1.0), kAlgebraicTol);
        case Predicate::positive_semidefinite: {
            const double herm = validate(a, Predicate::hermitian).violation;
            const double lo = hermitian_eigenvalues(a).front();
            const auto spectral = detail::verdict(std::max(0.0, -lo), kEigenTol);
            return {spectral.passed && herm <= kAlgebraicTol, std::max(spectral.violation, herm)};
        }
        case Predicate::effect: {
            const double herm = validate(a, Predicate::hermitian).violation;
            const auto eig = hermitian_eigenvalues(a);
            const double v = std::max({herm, -eig.front(), eig.back() - 1.0, 0.0});
            return detail::verdict(v, kAlgebraicTol);
        }
        case Predicate::unit_norm:
            break;
    }
    return detail::not_applicable();
}

inline Validation validate(const DensityMatrix &rho, Predicate pred) { return validate(rho.matrix(), pred); }

inline bool is_hermitian(const OperatorMatrix &a) { return validate(a, Predicate::hermitian).passed; }
inline bool is_unitary(const OperatorMatrix &a) { return validate(a, Predicate::unitary).passed; }
inline bool is_effect(const OperatorMatrix &a) { return validate(a, Predicate::effect).passed; }

inline DensityMatrix::DensityMatrix(OperatorMatrix m) : m_(std::move(m)) {
    for (auto pred :
         {Predicate::finite, Predicate::hermitian, Predicate::trace_one, Predicate::positive_semidefinite}) {
        const auto check = validate(m_, pred);
        if (!check.passed) {
            throw UsageError("matrix is not a valid density matrix (violation " +
                             std::to_string(check.violation) + ")");
        }
    }
}

}  // namespace pwclock
