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

#ifndef QETLAB_LINALG_H
#define QETLAB_LINALG_H

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace qetlab {

using Complex = std::complex<double>;

template <std::size_t N>
concept SupportedDim = (N == 2 || N == 4);

/// Column vector of N complex amplitudes.
template <std::size_t N>
class Vector {
    static_assert(SupportedDim<N>, "only 2- and 4-dimensional spaces are supported");

   public:
    Vector() = default;
    Vector(std::initializer_list<Complex> values);
    static Vector basis(std::size_t index);

    Complex &operator[](std::size_t i) {
        return data_[i];
    }
    const Complex &operator[](std::size_t i) const {
        return data_[i];
    }
    static constexpr std::size_t size() {
        return N;
    }
    const std::array<Complex, N> &data() const {
        return data_;
    }

    double norm() const;
    Vector normalized() const;

    Vector &operator+=(const Vector &other);
    Vector &operator*=(Complex scale);
    friend Vector operator+(Vector a, const Vector &b) {
        return a += b;
    }
    friend Vector operator*(Complex s, Vector v) {
        return v *= s;
    }
    bool operator==(const Vector &) const = default;

   private:
    std::array<Complex, N> data_{};
};

/// Inner product <a|b>, antilinear in the first argument.
template <std::size_t N>
Complex inner(const Vector<N> &a, const Vector<N> &b);

/// Dense N x N complex matrix, row-major.
template <std::size_t N>
class SquareMatrix {
    static_assert(SupportedDim<N>, "only 2- and 4-dimensional spaces are supported");

   public:
    SquareMatrix() = default;
    /// Row-major list of N*N entries.
    SquareMatrix(std::initializer_list<Complex> row_major);
    static SquareMatrix identity();
    static SquareMatrix diagonal(const std::array<double, N> &values);

    Complex &operator()(std::size_t row, std::size_t col) {
        return data_[row * N + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * N + col];
    }
    static constexpr std::size_t dim() {
        return N;
    }

    SquareMatrix adjoint() const;
    /// Largest entry magnitude.
    double max_abs() const;
    double frobenius() const;
    bool is_hermitian(double tol) const;
    bool is_finite() const;

    SquareMatrix &operator+=(const SquareMatrix &other);
    SquareMatrix &operator-=(const SquareMatrix &other);
    SquareMatrix &operator*=(Complex scale);
    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix &b) {
        return a += b;
    }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix &b) {
        return a -= b;
    }
    friend SquareMatrix operator*(Complex s, SquareMatrix m) {
        return m *= s;
    }
    friend SquareMatrix operator*(double s, SquareMatrix m) {
        return m *= Complex(s, 0.0);
    }
    friend SquareMatrix operator*(const SquareMatrix &a, const SquareMatrix &b) {
        SquareMatrix out;
        for (std::size_t r = 0; r < N; r++) {
            for (std::size_t c = 0; c < N; c++) {
                Complex acc = 0;
                for (std::size_t i = 0; i < N; i++) {
                    acc += a(r, i) * b(i, c);
                }
                out(r, c) = acc;
            }
        }
        return out;
    }
    friend Vector<N> operator*(const SquareMatrix &m, const Vector<N> &v) {
        Vector<N> out;
        for (std::size_t r = 0; r < N; r++) {
            Complex acc = 0;
            for (std::size_t c = 0; c < N; c++) {
                acc += m(r, c) * v[c];
            }
            out[r] = acc;
        }
        return out;
    }
    bool operator==(const SquareMatrix &) const = default;

   private:
    std::array<Complex, N * N> data_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;
using Qubit = Vector<2>;

/// Two-qubit amplitudes over |s_A s_B>, index = 2*a + b with + -> 0 and - -> 1.
using StateVector = Vector<4>;

/// Largest entrywise difference |a_ij - b_ij|.
template <std::size_t N>
double max_abs_diff(const SquareMatrix<N> &a, const SquareMatrix<N> &b);

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
}  // namespace pauli

/// Kronecker product with the site-A factor on the left.
Matrix4 kron(const Matrix2 &site_a, const Matrix2 &site_b);
StateVector kron(const Qubit &site_a, const Qubit &site_b);

/// Eigenvalues ascending, eigenvectors orthonormal and phase-canonical
/// (largest-magnitude component real and positive).
template <std::size_t N>
struct Spectrum {
    std::array<double, N> eigenvalues{};
    std::array<Vector<N>, N> eigenvectors{};
};

/// Cyclic complex Jacobi diagonalization.
/// Throws InvalidInput for non-Hermitian or non-finite input, NumericFailure if sweeps run out.
template <std::size_t N>
Spectrum<N> hermitian_eig(const SquareMatrix<N> &m);

/// exp(-i H t) assembled from the eigendecomposition of H.
template <std::size_t N>
SquareMatrix<N> evolve_operator(const SquareMatrix<N> &hamiltonian, double t);

/// <psi|op|psi>. Throws NumericFailure if the imaginary part exceeds the structural tolerance.
template <std::size_t N>
double expectation(const Vector<N> &state, const SquareMatrix<N> &op);

using Axis = std::array<double, 3>;

/// cos(theta) I + i sin(theta) (axis . sigma). The axis must be a unit vector.
Matrix2 su2(double theta, const Axis &axis);

}  // namespace qetlab

#endif
