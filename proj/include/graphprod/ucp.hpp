#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "graphprod/fock_space.hpp"

namespace graphprod {

/// State-preserving unital completely positive map on one vertex algebra,
/// given by its matrix in canonical algebra coordinates. Complete positivity
/// is certified through the Choi-type block matrix [phi(u_i* u_j)] realized
/// on the GNS space.
class UcpMap {
public:
    UcpMap(const VertexAlgebra& alg, Matrix phi) : phi_(std::move(phi)) {
        const int d = alg.dim();
        if (phi_.rows() != d || phi_.cols() != d)
            throw std::invalid_argument("ucp: map has wrong dimensions");
        if ((apply_vec(alg.unit()) - alg.unit()).norm() > 1e-10)
            throw std::invalid_argument("ucp: map is not unital");
        for (int k = 0; k < d; ++k) {
            Vector u = Vector::Zero(d);
            u(k) = 1.0;
            if (std::abs(alg.omega(apply_vec(u)) - alg.omega(u)) > 1e-10)
                throw std::invalid_argument("ucp: map is not state-preserving");
        }
        Matrix choi(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vector ui = Vector::Zero(d), uj = Vector::Zero(d);
                ui(i) = 1.0;
                uj(j) = 1.0;
                const Vector val = apply_vec(alg.multiply(alg.star(ui), uj));
                choi.block(i * d, j * d, d, d) = alg.left_mult_matrix(val);
            }
        if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
            throw std::invalid_argument("ucp: Choi matrix is not self-adjoint");
        Eigen::SelfAdjointEigenSolver<Matrix> es((choi + choi.adjoint()) / 2.0);
        if (es.eigenvalues().minCoeff() < -1e-9)
            throw std::invalid_argument("ucp: map is not completely positive");

        // L2 contraction T(x xi) = phi(x) xi in GNS coordinates.
        gns_ = Matrix(d, d);
        for (int k = 0; k < d; ++k)
            gns_.col(k) = alg.to_gns(apply_vec(alg.from_gns(Vector::Unit(d, k))));
        Eigen::JacobiSVD<Matrix> svd(gns_.block(1, 1, d - 1, d - 1));
        centered_norm_ = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    }

    static UcpMap identity(const VertexAlgebra& alg) {
        return UcpMap(alg, Matrix::Identity(alg.dim(), alg.dim()));
    }

    /// phi(x) = (1-s)·x + s·omega(x)·1 for 0 <= s <= 1.
    static UcpMap depolarizing(const VertexAlgebra& alg, double s) {
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("ucp: mixing weight outside [0,1]");
        const int d = alg.dim();
        Matrix phi = (1.0 - s) * Matrix::Identity(d, d);
        const Vector one = alg.unit();
        for (int k = 0; k < d; ++k) {
            Vector u = Vector::Zero(d);
            u(k) = 1.0;
            phi.col(k) += s * alg.omega(u) * one;
        }
        return UcpMap(alg, phi);
    }

    /// The rank-one limit phi = omega(·)·1.
    static UcpMap to_state(const VertexAlgebra& alg) { return depolarizing(alg, 1.0); }

    const Matrix& matrix() const { return phi_; }
    Vector apply_vec(const Vector& a) const { return phi_ * a; }
    /// GNS-level contraction T with T(x xi) = phi(x) xi.
    const Matrix& gns_contraction() const { return gns_; }
    /// Operator norm of T restricted to the centered subspace.
    double centered_norm() const { return centered_norm_; }

private:
    Matrix phi_;
    Matrix gns_;
    double centered_norm_ = 0.0;
};

/// phi'(x) = (phi(x) + eps·omega(x)·1) / (1+eps); shrinks the centered block
/// of the L2 contraction by 1/(1+eps).
inline UcpMap perturb_ucp(const VertexAlgebra& alg, const UcpMap& map, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("perturb_ucp: eps must be positive");
    const int d = alg.dim();
    Matrix phi = map.matrix();
    const Vector one = alg.unit();
    for (int k = 0; k < d; ++k) {
        Vector u = Vector::Zero(d);
        u(k) = 1.0;
        phi.col(k) += eps * alg.omega(u) * one;
    }
    return UcpMap(alg, phi / (1.0 + eps));
}

/// Graph product of per-vertex ucp maps: the letterwise map on reduced
/// operators together with its blockwise L2 contraction T.
class GraphUcp {
public:
    GraphUcp(const FockSpace& space, std::vector<UcpMap> maps)
        : space_(&space), maps_(std::move(maps)) {
        if (static_cast<int>(maps_.size()) != space.graph().vertex_count())
            throw std::invalid_argument("graph ucp: one map per vertex required");
    }

    const UcpMap& vertex_map(Vertex v) const { return maps_.at(size_t(v)); }

    /// phi(a_1 ... a_n) = phi_{v1}(a_1) ... phi_{vn}(a_n) at the letter level.
    std::vector<std::pair<Vertex, Vector>> apply_letters(
        const std::vector<std::pair<Vertex, Vector>>& letters) const {
        std::vector<std::pair<Vertex, Vector>> out;
        out.reserve(letters.size());
        for (const auto& [v, a] : letters) out.emplace_back(v, maps_.at(size_t(v)).apply_vec(a));
        return out;
    }

    /// T = id on CΩ ⊕ (tensor products of centered contractions) blockwise.
    FockOperator contraction() const {
        const FockSpace& space = *space_;
        Matrix out = Matrix::Zero(space.dimension(), space.dimension());
        out(0, 0) = 1.0;
        for (const FockBlock& b : space.blocks()) {
            if (b.word.length() == 0) continue;
            Matrix tensor = Matrix::Identity(1, 1);
            for (Vertex v : b.word.letters) {
                const Matrix& t = maps_.at(size_t(v)).gns_contraction();
                const int dc = space.algebra(v).centered_dim();
                const Matrix factor = t.block(1, 1, dc, dc);
                Matrix next(tensor.rows() * factor.rows(), tensor.cols() * factor.cols());
                for (Index i = 0; i < tensor.rows(); ++i)
                    for (Index j = 0; j < tensor.cols(); ++j)
                        next.block(i * factor.rows(), j * factor.cols(), factor.rows(),
                                   factor.cols()) = tensor(i, j) * factor;
                tensor = std::move(next);
            }
            out.block(b.offset, b.offset, b.dim, b.dim) = tensor;
        }
        return FockOperator{std::move(out), 0};
    }

    /// Norm of the word-length-k block of T: the largest tensor-product norm
    /// over words of length k (norms multiply across factors).
    double block_norm(int k) const {
        double best = (k == 0) ? 1.0 : 0.0;
        for (const FockBlock& b : space_->blocks()) {
            if (b.word.length() != k || k == 0) continue;
            double prod = 1.0;
            for (Vertex v : b.word.letters) prod *= maps_.at(size_t(v)).centered_norm();
            best = std::max(best, prod);
        }
        return best;
    }

private:
    const FockSpace* space_;
    std::vector<UcpMap> maps_;
};

} // namespace graphprod
