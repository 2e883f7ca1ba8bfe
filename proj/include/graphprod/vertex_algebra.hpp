#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graphprod/group.hpp"

namespace graphprod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Faithful state data for a matrix block: a full-rank density matrix.
struct FaithfulState {
    Matrix density;

    void validate() const {
        const int d = static_cast<int>(density.rows());
        if (d == 0 || density.cols() != d)
            throw std::invalid_argument("state: density must be square");
        if ((density - density.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("state: density is not self-adjoint");
        if (std::abs(density.trace() - Complex(1.0)) > 1e-12)
            throw std::invalid_argument("state: density trace is not 1");
        Eigen::SelfAdjointEigenSolver<Matrix> es(density);
        if (es.eigenvalues().minCoeff() <= 1e-10)
            throw std::invalid_argument("state: density is not faithful (eigenvalue <= 1e-10)");
    }
};

/// Finite-dimensional vertex data: a *-algebra (full matrix block with a
/// density-matrix state, or a finite group algebra with the tracial Haar
/// state) together with its GNS space, centered subspace and modular pair.
///
/// Algebra elements are coordinate vectors over the canonical algebra basis
/// (matrix units in row-major order, or group elements in table order). The
/// GNS space carries the deterministic orthonormal basis obtained by
/// Gram-Schmidt over [1, u_0, u_1, ...]; its first vector is the cyclic
/// vector, the rest span the centered subspace.
class VertexAlgebra {
public:
    enum class Kind { MatrixBlock, GroupAlgebra };

    static VertexAlgebra matrix_block(int n, FaithfulState state) {
        if (n < 2) throw std::invalid_argument("vertex algebra: matrix block needs n >= 2");
        state.validate();
        if (state.density.rows() != n)
            throw std::invalid_argument("vertex algebra: density size mismatch");
        return VertexAlgebra(Kind::MatrixBlock, n, std::move(state.density), std::nullopt);
    }

    /// Matrix block with the tracial state density I/n.
    static VertexAlgebra tracial_matrix_block(int n) {
        return matrix_block(n, FaithfulState{Matrix::Identity(n, n) / double(n)});
    }

    static VertexAlgebra group_algebra(FiniteGroup group) {
        if (group.order() < 2)
            throw std::invalid_argument("vertex algebra: group algebra needs order >= 2");
        return VertexAlgebra(Kind::GroupAlgebra, 0, Matrix(), std::move(group));
    }

    Kind kind() const { return kind_; }
    /// GNS dimension d (= algebra dimension; the state is faithful).
    int dim() const { return dim_; }
    /// Dimension of the centered subspace H°.
    int centered_dim() const { return dim_ - 1; }
    int matrix_size() const { return n_; }
    const FiniteGroup& group() const { return *group_; }

    // ---- algebra operations on canonical coordinates ----

    Vector unit() const {
        Vector u = Vector::Zero(dim_);
        if (kind_ == Kind::MatrixBlock) {
            for (int i = 0; i < n_; ++i) u(i * n_ + i) = 1.0;
        } else {
            u(0) = 1.0;
        }
        return u;
    }

    Vector multiply(const Vector& a, const Vector& b) const {
        check(a);
        check(b);
        Vector out = Vector::Zero(dim_);
        if (kind_ == Kind::MatrixBlock) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    Complex s = 0.0;
                    for (int k = 0; k < n_; ++k) s += a(i * n_ + k) * b(k * n_ + j);
                    out(i * n_ + j) = s;
                }
        } else {
            for (int g = 0; g < dim_; ++g)
                for (int h = 0; h < dim_; ++h) out(group_->mul(g, h)) += a(g) * b(h);
        }
        return out;
    }

    Vector star(const Vector& a) const {
        check(a);
        Vector out(dim_);
        if (kind_ == Kind::MatrixBlock) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) out(i * n_ + j) = std::conj(a(j * n_ + i));
        } else {
            for (int g = 0; g < dim_; ++g) out(group_->inv(g)) = std::conj(a(g));
        }
        return out;
    }

    Complex omega(const Vector& a) const {
        check(a);
        if (kind_ == Kind::MatrixBlock) {
            Complex s = 0.0;
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) s += density_(j, i) * a(i * n_ + j);
            return s;
        }
        return a(0);
    }

    /// x - omega(x)·1.
    Vector center(const Vector& a) const { return a - omega(a) * unit(); }

    /// GNS inner product <a, b> = omega(b* a).
    Complex gns_inner(const Vector& a, const Vector& b) const {
        return omega(multiply(star(b), a));
    }

    // ---- GNS coordinates ----

    /// Columns are the orthonormal GNS basis in canonical coordinates;
    /// column 0 is the cyclic vector.
    const Matrix& gns_basis() const { return basis_; }

    Vector to_gns(const Vector& a) const {
        check(a);
        Vector c(dim_);
        for (int k = 0; k < dim_; ++k) c(k) = gns_inner(a, basis_.col(k));
        return c;
    }

    Vector from_gns(const Vector& c) const { return basis_ * c; }

    /// Matrix of left multiplication by `a` on the GNS space.
    Matrix left_mult_matrix(const Vector& a) const {
        Matrix L(dim_, dim_);
        for (int k = 0; k < dim_; ++k) L.col(k) = to_gns(multiply(a, basis_.col(k)));
        return L;
    }

    /// Matrix of the commutant right action r(a) = J a* J on the GNS space.
    Matrix right_mult_matrix(const Vector& a) const {
        const Matrix L = left_mult_matrix(star(a));
        return jmat_ * L.conjugate() * jmat_.conjugate();
    }

    // ---- modular theory of the state ----

    /// Linear part of the modular conjugation: J c = jmat · conj(c).
    const Matrix& modular_j() const { return jmat_; }
    /// Modular operator on GNS coordinates (positive definite).
    const Matrix& modular_delta() const { return delta_; }

    bool is_tracial() const { return tracial_; }

    /// delta^{it} on GNS coordinates.
    Matrix delta_it(double t) const {
        Vector phases(dim_);
        for (int k = 0; k < dim_; ++k)
            phases(k) = std::exp(Complex(0.0, t * std::log(delta_eigs_(k))));
        return delta_vecs_ * phases.asDiagonal() * delta_vecs_.adjoint();
    }

    /// delta^{p} (real power) on GNS coordinates.
    Matrix delta_pow(double p) const {
        Vector vals(dim_);
        for (int k = 0; k < dim_; ++k) vals(k) = std::pow(delta_eigs_(k), p);
        return delta_vecs_ * vals.asDiagonal() * delta_vecs_.adjoint();
    }

    /// Modular flow sigma_t on algebra elements (canonical coordinates).
    Vector modular_flow(double t, const Vector& a) const {
        return from_gns(delta_it(t) * to_gns(a));
    }

private:
    VertexAlgebra(Kind kind, int n, Matrix density, std::optional<FiniteGroup> group)
        : kind_(kind), n_(n), density_(std::move(density)), group_(std::move(group)) {
        dim_ = (kind_ == Kind::MatrixBlock) ? n_ * n_ : group_->order();
        build_gns();
        build_modular();
    }

    void check(const Vector& a) const {
        if (a.size() != dim_) throw std::invalid_argument("vertex algebra: element size mismatch");
    }

    void build_gns() {
        // Gram-Schmidt over [1, u_0, u_1, ...] in the GNS inner product.
        std::vector<Vector> candidates;
        candidates.push_back(unit());
        for (int k = 0; k < dim_; ++k) {
            Vector u = Vector::Zero(dim_);
            u(k) = 1.0;
            candidates.push_back(std::move(u));
        }
        basis_ = Matrix(dim_, dim_);
        int got = 0;
        for (const Vector& cand : candidates) {
            if (got == dim_) break;
            Vector v = cand;
            for (int j = 0; j < got; ++j) v -= gns_inner(cand, basis_.col(j)) * basis_.col(j);
            const double norm2 = std::real(gns_inner(v, v));
            if (norm2 < 1e-10) continue;
            basis_.col(got++) = v / std::sqrt(norm2);
        }
        if (got != dim_) throw std::invalid_argument("vertex algebra: GNS basis is degenerate");
    }

    void build_modular() {
        // Antilinear star map S c = smat · conj(c) in GNS coordinates.
        Matrix smat(dim_, dim_);
        for (int k = 0; k < dim_; ++k) smat.col(k) = to_gns(star(basis_.col(k)));
        delta_ = (smat.adjoint() * smat).transpose();
        Eigen::SelfAdjointEigenSolver<Matrix> es(delta_);
        delta_eigs_ = es.eigenvalues();
        delta_vecs_ = es.eigenvectors();
        if (delta_eigs_.minCoeff() <= 0.0)
            throw std::invalid_argument("vertex algebra: modular operator not positive");
        jmat_ = smat * delta_pow(-0.5).conjugate();
        tracial_ = (delta_ - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() < 1e-12;
    }

    Kind kind_;
    int n_ = 0;
    int dim_ = 0;
    Matrix density_;
    std::optional<FiniteGroup> group_;
    Matrix basis_;
    Matrix delta_;
    Eigen::VectorXd delta_eigs_;
    Matrix delta_vecs_;
    Matrix jmat_;
    bool tracial_ = false;
};

} // namespace graphprod
