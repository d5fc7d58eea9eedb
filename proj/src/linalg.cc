// Copyright 2026 The qetlab Authors
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

#include "qetlab/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qetlab/errors.h"
#include "qetlab/tolerances.h"

namespace qetlab {

namespace {

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
void require_finite(const Vector<N> &v, const char *what) {
    for (const auto &z : v.data()) {
        if (!finite(z)) {
            throw InvalidInput(std::string(what) + ": non-finite amplitude");
        }
    }
}

}  // namespace

template <std::size_t N>
Vector<N>::Vector(std::initializer_list<Complex> values) {
    if (values.size() != N) {
        throw InvalidInput("vector initializer has the wrong number of amplitudes");
    }
    std::copy(values.begin(), values.end(), data_.begin());
}

template <std::size_t N>
Vector<N> Vector<N>::basis(std::size_t index) {
    if (index >= N) {
        throw InvalidInput("basis index out of range");
    }
    Vector<N> v;
    v[index] = 1;
    return v;
}

template <std::size_t N>
double Vector<N>::norm() const {
    double acc = 0;
    for (const auto &z : data_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

template <std::size_t N>
Vector<N> Vector<N>::normalized() const {
    double n = norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw NumericFailure("cannot normalize a zero or non-finite vector");
    }
    Vector<N> out = *this;
    out *= Complex(1.0 / n, 0.0);
    return out;
}

template <std::size_t N>
Vector<N> &Vector<N>::operator+=(const Vector &other) {
    for (std::size_t i = 0; i < N; i++) {
        data_[i] += other.data_[i];
    }
    return *this;
}

template <std::size_t N>
Vector<N> &Vector<N>::operator*=(Complex scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

template <std::size_t N>
Complex inner(const Vector<N> &a, const Vector<N> &b) {
    Complex acc = 0;
    for (std::size_t i = 0; i < N; i++) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

template <std::size_t N>
SquareMatrix<N>::SquareMatrix(std::initializer_list<Complex> row_major) {
    if (row_major.size() != N * N) {
        throw InvalidInput("matrix initializer has the wrong number of entries");
    }
    std::copy(row_major.begin(), row_major.end(), data_.begin());
}

template <std::size_t N>
SquareMatrix<N> SquareMatrix<N>::identity() {
    SquareMatrix<N> m;
    for (std::size_t i = 0; i < N; i++) {
        m(i, i) = 1;
    }
    return m;
}

template <std::size_t N>
SquareMatrix<N> SquareMatrix<N>::diagonal(const std::array<double, N> &values) {
    SquareMatrix<N> m;
    for (std::size_t i = 0; i < N; i++) {
        m(i, i) = values[i];
    }
    return m;
}

template <std::size_t N>
SquareMatrix<N> SquareMatrix<N>::adjoint() const {
    SquareMatrix<N> out;
    for (std::size_t r = 0; r < N; r++) {
        for (std::size_t c = 0; c < N; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

template <std::size_t N>
double SquareMatrix<N>::max_abs() const {
    double best = 0;
    for (const auto &z : data_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

template <std::size_t N>
double SquareMatrix<N>::frobenius() const {
    double acc = 0;
    for (const auto &z : data_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

template <std::size_t N>
bool SquareMatrix<N>::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < N; r++) {
        for (std::size_t c = r; c < N; c++) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

template <std::size_t N>
bool SquareMatrix<N>::is_finite() const {
    return std::all_of(data_.begin(), data_.end(), finite);
}

template <std::size_t N>
SquareMatrix<N> &SquareMatrix<N>::operator+=(const SquareMatrix &other) {
    for (std::size_t i = 0; i < N * N; i++) {
        data_[i] += other.data_[i];
    }
    return *this;
}

template <std::size_t N>
SquareMatrix<N> &SquareMatrix<N>::operator-=(const SquareMatrix &other) {
    for (std::size_t i = 0; i < N * N; i++) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

template <std::size_t N>
SquareMatrix<N> &SquareMatrix<N>::operator*=(Complex scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N> &a, const SquareMatrix<N> &b) {
    return (a - b).max_abs();
}

namespace pauli {
Matrix2 identity() {
    return Matrix2::identity();
}
Matrix2 x() {
    return Matrix2{0, 1, 1, 0};
}
Matrix2 y() {
    return Matrix2{0, Complex(0, -1), Complex(0, 1), 0};
}
Matrix2 z() {
    return Matrix2{1, 0, 0, -1};
}
}  // namespace pauli

Matrix4 kron(const Matrix2 &site_a, const Matrix2 &site_b) {
    Matrix4 out;
    for (std::size_t ar = 0; ar < 2; ar++) {
        for (std::size_t ac = 0; ac < 2; ac++) {
            for (std::size_t br = 0; br < 2; br++) {
                for (std::size_t bc = 0; bc < 2; bc++) {
                    out(2 * ar + br, 2 * ac + bc) = site_a(ar, ac) * site_b(br, bc);
                }
            }
        }
    }
    return out;
}

StateVector kron(const Qubit &site_a, const Qubit &site_b) {
    StateVector out;
    for (std::size_t a = 0; a < 2; a++) {
        for (std::size_t b = 0; b < 2; b++) {
            out[2 * a + b] = site_a[a] * site_b[b];
        }
    }
    return out;
}

namespace {

template <std::size_t N>
double off_diagonal_norm(const SquareMatrix<N> &a) {
    double acc = 0;
    for (std::size_t r = 0; r < N; r++) {
        for (std::size_t c = 0; c < N; c++) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

/// Rotate in the (p, q) plane so that a(p, q) vanishes. The rotation first removes the phase of
/// a(p, q) with diag(1, e^{-i phi}) on q, then applies the real symmetric Jacobi rotation.
template <std::size_t N>
void jacobi_rotate(SquareMatrix<N> &a, SquareMatrix<N> &v, std::size_t p, std::size_t q) {
    Complex apq = a(p, q);
    double mag = std::abs(apq);
    if (mag == 0) {
        return;
    }
    Complex phase_conj = std::conj(apq) / mag;
    double tau = (a(q, q).real() - a(p, p).real()) / (2 * mag);
    double t;
    if (std::abs(tau) > 1e150) {
        t = 0.5 / tau;
    } else {
        t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
    }
    double c = 1 / std::sqrt(1 + t * t);
    double s = t * c;

    auto g = SquareMatrix<N>::identity();
    g(p, p) = c;
    g(p, q) = s;
    g(q, p) = -s * phase_conj;
    g(q, q) = c * phase_conj;

    a = g.adjoint() * a * g;
    v = v * g;
    a(p, q) = 0;
    a(q, p) = 0;
    for (std::size_t i = 0; i < N; i++) {
        a(i, i) = a(i, i).real();
    }
}

template <std::size_t N>
void canonicalize_phase(Vector<N> &vec) {
    double largest = 0;
    for (const auto &z : vec.data()) {
        largest = std::max(largest, std::abs(z));
    }
    for (std::size_t i = 0; i < N; i++) {
        double mag = std::abs(vec[i]);
        if (mag >= largest * (1 - 1e-10)) {
            vec *= std::conj(vec[i]) / mag;
            vec[i] = vec[i].real();
            return;
        }
    }
}

}  // namespace

template <std::size_t N>
Spectrum<N> hermitian_eig(const SquareMatrix<N> &m) {
    if (!m.is_finite()) {
        throw InvalidInput("hermitian_eig: non-finite matrix entry");
    }
    if (!m.is_hermitian(Tolerances::structural)) {
        throw InvalidInput("hermitian_eig: matrix is not Hermitian");
    }
    // Symmetrize exactly so rounding in the input cannot leak into the rotations.
    SquareMatrix<N> a = 0.5 * (m + m.adjoint());
    SquareMatrix<N> v = SquareMatrix<N>::identity();
    double scale = a.frobenius();

    bool converged = false;
    for (int sweep = 0; sweep <= Tolerances::jacobi_max_sweeps; sweep++) {
        double off = off_diagonal_norm(a);
        if (off == 0 || off <= Tolerances::jacobi_off_diagonal * scale) {
            converged = true;
            break;
        }
        if (sweep == Tolerances::jacobi_max_sweeps) {
            break;
        }
        for (std::size_t p = 0; p + 1 < N; p++) {
            for (std::size_t q = p + 1; q < N; q++) {
                jacobi_rotate(a, v, p, q);
            }
        }
    }
    if (!converged) {
        throw NumericFailure("hermitian_eig: Jacobi sweeps did not converge");
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    Spectrum<N> out;
    for (std::size_t k = 0; k < N; k++) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; r++) {
            out.eigenvectors[k][r] = v(r, order[k]);
        }
    }

    // Gram-Schmidt within each degenerate cluster, in index order.
    double cluster_tol = Tolerances::degeneracy * std::max(1.0, m.max_abs());
    std::size_t start = 0;
    while (start < N) {
        std::size_t end = start + 1;
        while (end < N && out.eigenvalues[end] - out.eigenvalues[end - 1] <= cluster_tol) {
            end++;
        }
        for (std::size_t i = start; i < end; i++) {
            for (std::size_t j = start; j < i; j++) {
                Complex overlap = inner(out.eigenvectors[j], out.eigenvectors[i]);
                out.eigenvectors[i] += (-overlap) * out.eigenvectors[j];
            }
            out.eigenvectors[i] = out.eigenvectors[i].normalized();
        }
        start = end;
    }
    for (auto &vec : out.eigenvectors) {
        canonicalize_phase(vec);
    }
    return out;
}

template <std::size_t N>
SquareMatrix<N> evolve_operator(const SquareMatrix<N> &hamiltonian, double t) {
    if (!std::isfinite(t)) {
        throw InvalidInput("evolve_operator: non-finite time");
    }
    auto spectrum = hermitian_eig(hamiltonian);
    SquareMatrix<N> u;
    for (std::size_t k = 0; k < N; k++) {
        Complex phase = std::polar(1.0, -spectrum.eigenvalues[k] * t);
        const auto &vec = spectrum.eigenvectors[k];
        for (std::size_t r = 0; r < N; r++) {
            for (std::size_t c = 0; c < N; c++) {
                u(r, c) += phase * vec[r] * std::conj(vec[c]);
            }
        }
    }
    return u;
}

template <std::size_t N>
double expectation(const Vector<N> &state, const SquareMatrix<N> &op) {
    require_finite(state, "expectation");
    if (!op.is_finite()) {
        throw InvalidInput("expectation: non-finite operator");
    }
    Complex value = inner(state, op * state);
    double scale = std::max(1.0, op.max_abs() * std::norm(state.norm()));
    if (std::abs(value.imag()) > Tolerances::structural * scale) {
        throw NumericFailure("expectation: imaginary residue above tolerance (operator not Hermitian?)");
    }
    return value.real();
}

Matrix2 su2(double theta, const Axis &axis) {
    if (!std::isfinite(theta) || !std::all_of(axis.begin(), axis.end(), [](double x) {
            return std::isfinite(x);
        })) {
        throw InvalidInput("su2: non-finite parameter");
    }
    double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(len - 1) > Tolerances::structural) {
        throw InvalidInput("su2: rotation axis is not a unit vector");
    }
    Matrix2 generator = axis[0] * pauli::x() + axis[1] * pauli::y() + axis[2] * pauli::z();
    return std::cos(theta) * pauli::identity() + Complex(0, std::sin(theta)) * generator;
}

template class Vector<2>;
template class Vector<4>;
template class SquareMatrix<2>;
template class SquareMatrix<4>;
template Complex inner(const Vector<2> &, const Vector<2> &);
template Complex inner(const Vector<4> &, const Vector<4> &);
template double max_abs_diff(const SquareMatrix<2> &, const SquareMatrix<2> &);
template double max_abs_diff(const SquareMatrix<4> &, const SquareMatrix<4> &);
template Spectrum<2> hermitian_eig(const SquareMatrix<2> &);
template Spectrum<4> hermitian_eig(const SquareMatrix<4> &);
template SquareMatrix<2> evolve_operator(const SquareMatrix<2> &, double);
template SquareMatrix<4> evolve_operator(const SquareMatrix<4> &, double);
template double expectation(const Vector<2> &, const SquareMatrix<2> &);
template double expectation(const Vector<4> &, const SquareMatrix<4> &);

}  // namespace qetlab
