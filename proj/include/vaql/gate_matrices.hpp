// Copyright 2026 The vaql Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

#include "vaql/circuit.hpp"

namespace vaql {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

/// 2x2 matrix of a one-qubit gate in the {|0>, |1>} basis.
/// Rotations follow R_P(theta) = exp(-i theta P / 2).
template <typename Scalar = double>
Matrix2<Scalar> single_qubit_matrix(GateKind kind, Scalar theta = Scalar(0)) {
    using C = std::complex<Scalar>;
    const C zero(0), one(1), i(0, 1);
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    const Scalar c = std::cos(theta / 2), s = std::sin(theta / 2);
    Matrix2<Scalar> m;
    switch (kind) {
    case GateKind::I: m << one, zero, zero, one; break;
    case GateKind::X: m << zero, one, one, zero; break;
    case GateKind::Y: m << zero, -i, i, zero; break;
    case GateKind::Z: m << one, zero, zero, -one; break;
    case GateKind::H: m << C(r), C(r), C(r), C(-r); break;
    case GateKind::S: m << one, zero, zero, i; break;
    case GateKind::SDG: m << one, zero, zero, -i; break;
    case GateKind::T: m << one, zero, zero, std::polar(Scalar(1), std::numbers::pi_v<Scalar> / 4); break;
    case GateKind::TDG: m << one, zero, zero, std::polar(Scalar(1), -std::numbers::pi_v<Scalar> / 4); break;
    case GateKind::RX: m << C(c), C(0, -s), C(0, -s), C(c); break;
    case GateKind::RY: m << C(c), C(-s), C(s), C(c); break;
    case GateKind::RZ: m << std::polar(Scalar(1), -theta / 2), zero, zero, std::polar(Scalar(1), theta / 2); break;
    default: throw SimulationError("not a one-qubit gate: " + std::string(mnemonic(kind)));
    }
    return m;
}

/// 4x4 matrix of a two-qubit gate. Local basis index = b0 + 2*b1 where b0
/// is the bit of the first operand (the CX control) and b1 of the second.
template <typename Scalar = double>
Matrix4<Scalar> two_qubit_matrix(GateKind kind) {
    Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
    switch (kind) {
    case GateKind::CX:
        m(0, 0) = m(2, 2) = 1;
        m(1, 3) = m(3, 1) = 1;
        break;
    case GateKind::CZ:
        m(0, 0) = m(1, 1) = m(2, 2) = 1;
        m(3, 3) = -1;
        break;
    case GateKind::SWAP:
        m(0, 0) = m(3, 3) = 1;
        m(1, 2) = m(2, 1) = 1;
        break;
    default: throw SimulationError("not a two-qubit gate: " + std::string(mnemonic(kind)));
    }
    return m;
}

namespace kernels {

/// Applies `gate` in place to a 2^n amplitude vector (qubit k = bit k of
/// the index). Diagonal and permutation gates skip the generic update.
template <typename Derived>
void apply_gate(Eigen::MatrixBase<Derived>& amps, const Gate& gate) {
    using C = typename Derived::Scalar;
    using Scalar = typename C::value_type;
    const auto dim = static_cast<std::size_t>(amps.size());
    const std::size_t a = std::size_t{1} << gate.qubits[0];
    switch (gate.kind) {
    case GateKind::I: return;
    case GateKind::CX: {
        const std::size_t b = std::size_t{1} << gate.qubits[1];
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if ((idx & a) && !(idx & b)) std::swap(amps(idx), amps(idx | b));
        }
        return;
    }
    case GateKind::CZ: {
        const std::size_t b = std::size_t{1} << gate.qubits[1];
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if ((idx & a) && (idx & b)) amps(idx) = -amps(idx);
        }
        return;
    }
    case GateKind::SWAP: {
        const std::size_t b = std::size_t{1} << gate.qubits[1];
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if ((idx & a) && !(idx & b)) std::swap(amps(idx), amps((idx ^ a) | b));
        }
        return;
    }
    case GateKind::Z:
    case GateKind::S:
    case GateKind::SDG:
    case GateKind::T:
    case GateKind::TDG:
    case GateKind::RZ: {
        const Matrix2<Scalar> m = single_qubit_matrix<Scalar>(gate.kind, Scalar(gate.angle));
        const C d0 = m(0, 0), d1 = m(1, 1);
        for (std::size_t idx = 0; idx < dim; ++idx) amps(idx) *= (idx & a) ? d1 : d0;
        return;
    }
    default: break;
    }
    const Matrix2<Scalar> m = single_qubit_matrix<Scalar>(gate.kind, Scalar(gate.angle));
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if (idx & a) continue;
        const C lo = amps(idx), hi = amps(idx | a);
        amps(idx) = m(0, 0) * lo + m(0, 1) * hi;
        amps(idx | a) = m(1, 0) * lo + m(1, 1) * hi;
    }
}

/// Left-multiplies every column of `mat` by the full-register embedding
/// of `gate`, using its dense 2x2 / 4x4 matrix.
template <typename Derived>
void apply_dense_rows(Eigen::MatrixBase<Derived>& mat, const Gate& gate) {
    using C = typename Derived::Scalar;
    using Scalar = typename C::value_type;
    const auto dim = static_cast<std::size_t>(mat.rows());
    const std::size_t a = std::size_t{1} << gate.qubits[0];
    if (arity(gate.kind) == 1) {
        const Matrix2<Scalar> m = single_qubit_matrix<Scalar>(gate.kind, Scalar(gate.angle));
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if (idx & a) continue;
            const auto lo = mat.row(idx).eval();
            const auto hi = mat.row(idx | a).eval();
            mat.row(idx) = m(0, 0) * lo + m(0, 1) * hi;
            mat.row(idx | a) = m(1, 0) * lo + m(1, 1) * hi;
        }
        return;
    }
    const std::size_t b = std::size_t{1} << gate.qubits[1];
    const Matrix4<Scalar> m = two_qubit_matrix<Scalar>(gate.kind);
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base & a) || (base & b)) continue;
        const std::array<std::size_t, 4> rows = {base, base | a, base | b, base | a | b};
        Eigen::Matrix<C, 4, Eigen::Dynamic> block(4, mat.cols());
        for (int r = 0; r < 4; ++r) block.row(r) = mat.row(rows[r]);
        const Eigen::Matrix<C, 4, Eigen::Dynamic> updated = m * block;
        for (int r = 0; r < 4; ++r) mat.row(rows[r]) = updated.row(r);
    }
}

} // namespace kernels

} // namespace vaql
