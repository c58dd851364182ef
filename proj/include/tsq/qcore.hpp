// Copyright 2026 The tsq Authors
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

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "tsq/common.hpp"

namespace tsq {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for operator-level checks (unitarity, hermiticity, identities).
inline constexpr double kOperatorTol = 1e-10;
/// Tolerance for state equality.
inline constexpr double kStateTol = 1e-12;

/// Largest joint dimension any state or operator may have. TSQ_DIM_CAP overrides it.
inline std::size_t dimension_cap() {
    constexpr std::size_t kDefaultCap = std::size_t{1} << 16;
    const char *env = std::getenv("TSQ_DIM_CAP");
    if (env == nullptr || *env == '\0') {
        return kDefaultCap;
    }
    char *end = nullptr;
    unsigned long long cap = std::strtoull(env, &end, 10);
    require(end != nullptr && *end == '\0' && cap >= 4, "TSQ_DIM_CAP must be an integer >= 4");
    return static_cast<std::size_t>(cap);
}

enum class Register { B, A };

inline const char *register_name(Register r) {
    return r == Register::B ? "B" : "A";
}

/// Bit counts of the setting register B and the solver register A.
struct RegisterLayout {
    int n_b = 1;
    int n_a = 1;

    static RegisterLayout make(int n_b, int n_a) {
        require(n_b >= 1 && n_a >= 1, "register bit-counts must be >= 1");
        require(n_b + n_a <= 30, "register bit-counts too large");
        RegisterLayout layout{n_b, n_a};
        require(layout.dimension() <= dimension_cap(),
                "joint dimension 2^" + std::to_string(n_b + n_a) + " exceeds the dimension cap " +
                    std::to_string(dimension_cap()));
        return layout;
    }
    static RegisterLayout symmetric(int n) {
        return make(n, n);
    }

    std::size_t dimension() const {
        return std::size_t{1} << (n_b + n_a);
    }
    std::size_t register_dimension(Register r) const {
        return std::size_t{1} << bits(r);
    }
    int bits(Register r) const {
        return r == Register::B ? n_b : n_a;
    }

    bool operator==(const RegisterLayout &) const = default;
};

/// A joint basis vector |b>_B|a>_A. B occupies the most significant block of the index.
struct BasisLabel {
    std::uint32_t b = 0;
    std::uint32_t a = 0;

    bool operator==(const BasisLabel &) const = default;
};

inline std::size_t index_of(const RegisterLayout &layout, BasisLabel label) {
    return (static_cast<std::size_t>(label.b) << layout.n_a) | label.a;
}

inline BasisLabel label_of(const RegisterLayout &layout, std::size_t index) {
    return {static_cast<std::uint32_t>(index >> layout.n_a),
            static_cast<std::uint32_t>(index & ((std::size_t{1} << layout.n_a) - 1))};
}

/// Unnormalized amplitudes over the joint (B, A) basis. Norm is always queried explicitly.
class StateVector {
   public:
    explicit StateVector(RegisterLayout layout) : layout_(layout), amps_(Vector::Zero(layout.dimension())) {
    }

    StateVector(RegisterLayout layout, Vector amplitudes) : layout_(layout), amps_(std::move(amplitudes)) {
        require(static_cast<std::size_t>(amps_.size()) == layout_.dimension(),
                "amplitude count does not match the register layout");
        require(amps_.allFinite(), "state amplitudes must be finite");
    }

    struct Term {
        std::uint32_t b;
        std::uint32_t a;
        Complex amplitude;
    };

    static StateVector from_terms(RegisterLayout layout, const std::vector<Term> &terms) {
        Vector amps = Vector::Zero(layout.dimension());
        for (const auto &t : terms) {
            require(t.b < layout.register_dimension(Register::B) && t.a < layout.register_dimension(Register::A),
                    "basis label out of range");
            amps[index_of(layout, {t.b, t.a})] += t.amplitude;
        }
        return StateVector(layout, std::move(amps));
    }

    static StateVector basis(RegisterLayout layout, std::uint32_t b, std::uint32_t a) {
        return from_terms(layout, {{b, a, 1.0}});
    }

    const RegisterLayout &layout() const {
        return layout_;
    }
    const Vector &amplitudes() const {
        return amps_;
    }
    std::size_t dimension() const {
        return layout_.dimension();
    }
    Complex amplitude(BasisLabel label) const {
        return amps_[index_of(layout_, label)];
    }
    Complex operator[](std::size_t index) const {
        return amps_[index];
    }

    double norm_squared() const {
        return amps_.squaredNorm();
    }
    double norm() const {
        return amps_.norm();
    }
    bool is_zero(double tol = kStateTol) const {
        return amps_.size() == 0 || amps_.cwiseAbs().maxCoeff() <= tol;
    }
    StateVector normalized() const {
        require(!is_zero(0.0), "cannot normalize the zero state");
        return StateVector(layout_, amps_ / norm());
    }

    StateVector operator+(const StateVector &other) const {
        require(layout_ == other.layout_, "layout mismatch in state addition");
        return StateVector(layout_, amps_ + other.amps_);
    }
    StateVector operator-(const StateVector &other) const {
        require(layout_ == other.layout_, "layout mismatch in state subtraction");
        return StateVector(layout_, amps_ - other.amps_);
    }
    StateVector operator*(Complex scale) const {
        return StateVector(layout_, amps_ * scale);
    }

   private:
    RegisterLayout layout_;
    Vector amps_;
};

/// Largest absolute amplitude difference.
inline double max_abs_diff(const StateVector &x, const StateVector &y) {
    require(x.layout() == y.layout(), "layout mismatch in state comparison");
    return (x.amplitudes() - y.amplitudes()).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const StateVector &x, const StateVector &y, double tol = kStateTol) {
    return x.layout() == y.layout() && max_abs_diff(x, y) <= tol;
}

inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Dense unitary on the joint space; unitarity is checked on construction.
class UnitaryOp {
   public:
    UnitaryOp(RegisterLayout layout, Matrix matrix, double tol = kOperatorTol)
        : layout_(layout), matrix_(std::move(matrix)) {
        auto d = static_cast<Eigen::Index>(layout_.dimension());
        require(matrix_.rows() == d && matrix_.cols() == d, "unitary dimension does not match the layout");
        double deviation = unitarity_deviation();
        if (!(deviation <= tol)) {
            throw InvariantError("matrix is not unitary: max|U^dag U - I| = " + std::to_string(deviation));
        }
    }

    static UnitaryOp identity(RegisterLayout layout) {
        auto d = static_cast<Eigen::Index>(layout.dimension());
        return UnitaryOp(layout, Matrix::Identity(d, d));
    }

    const RegisterLayout &layout() const {
        return layout_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    UnitaryOp adjoint() const {
        return UnitaryOp(layout_, matrix_.adjoint());
    }
    double unitarity_deviation() const {
        auto d = matrix_.rows();
        return max_abs(matrix_.adjoint() * matrix_ - Matrix::Identity(d, d));
    }

    /// Operator product; (u * v) applies v first.
    UnitaryOp operator*(const UnitaryOp &other) const {
        require(layout_ == other.layout_, "layout mismatch in unitary composition");
        return UnitaryOp(layout_, matrix_ * other.matrix_);
    }

   private:
    RegisterLayout layout_;
    Matrix matrix_;
};

inline StateVector apply(const UnitaryOp &u, const StateVector &s) {
    require(u.layout() == s.layout(), "dimension mismatch: unitary and state layouts differ");
    return StateVector(s.layout(), u.matrix() * s.amplitudes());
}

inline StateVector apply_adjoint(const UnitaryOp &u, const StateVector &s) {
    require(u.layout() == s.layout(), "dimension mismatch: unitary and state layouts differ");
    return StateVector(s.layout(), u.matrix().adjoint() * s.amplitudes());
}

/// Sum over b of |b>_B|blank>_A with unit amplitudes.
inline StateVector uniform_setting_state(RegisterLayout layout, std::uint32_t blank_a) {
    require(blank_a < layout.register_dimension(Register::A), "blank value does not fit register A");
    Vector amps = Vector::Zero(layout.dimension());
    for (std::uint32_t b = 0; b < layout.register_dimension(Register::B); b++) {
        amps[index_of(layout, {b, blank_a})] = 1.0;
    }
    return StateVector(layout, std::move(amps));
}

inline StateVector uniform_setting_state(RegisterLayout layout, const std::string &blank_a) {
    return uniform_setting_state(layout, parse_bits(blank_a, layout.n_a));
}

/// Permutation |b>_B|a>_A -> |b>_B|a xor b>_A.
inline UnitaryOp xor_copy_unitary(RegisterLayout layout) {
    require(layout.n_b == layout.n_a, "xor_copy requires equal register sizes");
    auto d = static_cast<Eigen::Index>(layout.dimension());
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < layout.dimension(); i++) {
        BasisLabel in = label_of(layout, i);
        std::size_t out = index_of(layout, {in.b, in.a ^ in.b});
        m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return UnitaryOp(layout, std::move(m));
}

/// Haar-distributed unitary from the QR decomposition of a complex Gaussian matrix.
template <typename Rng>
Matrix random_unitary_matrix(Eigen::Index dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            double re = normal(rng);
            double im = normal(rng);
            z(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < dim; c++) {
        Complex d = r(c, c);
        double mag = std::abs(d);
        if (mag > 0) {
            q.col(c) *= d / mag;
        }
    }
    return q;
}

template <typename Rng>
UnitaryOp random_unitary(RegisterLayout layout, Rng &rng) {
    return UnitaryOp(layout, random_unitary_matrix(static_cast<Eigen::Index>(layout.dimension()), rng));
}

/// Reduced density operator of one register (unnormalized, trace = norm^2 of the state).
class DensityOperator {
   public:
    DensityOperator(Register reg, Matrix matrix, double tol = kOperatorTol) : reg_(reg), matrix_(std::move(matrix)) {
        require(matrix_.rows() == matrix_.cols() && matrix_.rows() > 0, "density operator must be square");
        if (max_abs(matrix_ - matrix_.adjoint()) > tol) {
            throw InvariantError("density operator is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix_, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -tol) {
            throw InvariantError("density operator is not positive semidefinite");
        }
        if (!(trace() > 0)) {
            throw PreconditionError("density operator has zero trace");
        }
    }

    Register reg() const {
        return reg_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    double trace() const {
        return matrix_.trace().real();
    }
    /// tr(rho^2) / tr(rho)^2, which is 1 exactly for pure states.
    double purity() const {
        double t = trace();
        return (matrix_ * matrix_).trace().real() / (t * t);
    }

   private:
    Register reg_;
    Matrix matrix_;
};

inline DensityOperator reduced_density(const StateVector &s, Register keep) {
    const auto &layout = s.layout();
    auto keep_dim = static_cast<Eigen::Index>(layout.register_dimension(keep));
    Register other = keep == Register::B ? Register::A : Register::B;
    auto other_dim = static_cast<Eigen::Index>(layout.register_dimension(other));
    // Columns of `psi` index the kept register, rows the traced-out one.
    Matrix psi(other_dim, keep_dim);
    for (Eigen::Index k = 0; k < keep_dim; k++) {
        for (Eigen::Index o = 0; o < other_dim; o++) {
            auto kk = static_cast<std::uint32_t>(k);
            auto oo = static_cast<std::uint32_t>(o);
            BasisLabel label = keep == Register::B ? BasisLabel{kk, oo} : BasisLabel{oo, kk};
            psi(o, k) = s.amplitude(label);
        }
    }
    return DensityOperator(keep, psi.transpose() * psi.conjugate());
}

}  // namespace tsq
