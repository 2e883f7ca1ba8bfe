#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "graphprod/fock_space.hpp"

namespace graphprod {

/// Diagonal 0/1 projection onto the summands indexed by words of a subgraph
/// (vertex-induced), vacuum included.
struct SubgraphProjection {
    std::vector<char> vertex_mask;
    Eigen::VectorXd diag;

    bool word_inside(const MinimalWord& w) const {
        for (Vertex v : w.letters)
            if (!vertex_mask[size_t(v)]) return false;
        return true;
    }
};

inline SubgraphProjection subgraph_projection(const FockSpace& space,
                                              const std::vector<Vertex>& vertices) {
    SubgraphProjection p;
    p.vertex_mask.assign(size_t(space.graph().vertex_count()), 0);
    for (Vertex v : vertices) {
        space.graph().require_vertex(v);
        p.vertex_mask[size_t(v)] = 1;
    }
    p.diag = Eigen::VectorXd::Zero(space.dimension());
    for (const FockBlock& b : space.blocks())
        if (p.word_inside(b.word)) p.diag.segment(b.offset, b.dim).setOnes();
    return p;
}

/// Conditional expectation onto the subgraph algebra: T ↦ P T P.
inline FockOperator cond_expectation(const FockSpace& space, const std::vector<Vertex>& vertices,
                                     const FockOperator& T) {
    if (T.reach > space.cutoff())
        throw budget_error("cond_expectation: operator reach exceeds the cutoff");
    const SubgraphProjection p = subgraph_projection(space, vertices);
    FockOperator out;
    out.reach = T.reach;
    out.mat = p.diag.cast<Complex>().asDiagonal() * T.mat * p.diag.cast<Complex>().asDiagonal();
    return out;
}

/// Norm of TΩ per word block: the decomposition of T against the
/// reduced-operator basis, read off the vacuum vector (Ω is separating).
struct VacuumComponent {
    MinimalWord word;
    double norm;
};

inline std::vector<VacuumComponent> vacuum_decomposition(const FockSpace& space,
                                                         const Vector& vacuum_image,
                                                         double tol = 1e-12) {
    std::vector<VacuumComponent> out;
    for (const FockBlock& b : space.blocks()) {
        const double n = vacuum_image.segment(b.offset, b.dim).norm();
        if (n > tol) out.push_back({b.word, n});
    }
    return out;
}

namespace detail {

inline Vector random_centered(const VertexAlgebra& alg, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector v(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) v(i) = Complex(g(rng), g(rng));
    v = alg.center(v);
    const double n = std::sqrt(std::abs(std::real(alg.gns_inner(v, v))));
    return v / n;
}

/// Random minimal word over an allowed vertex set, of length in [1, max_len];
/// optionally required to contain a vertex outside `avoid_only` (i.e. not
/// every letter inside that set).
inline MinimalWord random_subgraph_word(const FockSpace& space, const std::vector<char>& allowed,
                                        int max_len, std::mt19937_64& rng,
                                        const std::vector<char>* must_leave = nullptr) {
    const SimplicialGraph& g = space.graph();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int target = 1 + int(rng() % std::max(1, max_len));
        Word w;
        MinimalWord m;
        for (int i = 0; i < target; ++i) {
            std::vector<Vertex> options;
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                if (allowed[size_t(v)] && right_compatible(g, m, v)) options.push_back(v);
            if (options.empty()) break;
            const Vertex v = options[rng() % options.size()];
            w = m.letters;
            w.push_back(v);
            m = normalize(g, w);
        }
        if (m.length() == 0) continue;
        if (must_leave) {
            bool leaves = false;
            for (Vertex v : m.letters)
                if (!(*must_leave)[size_t(v)]) leaves = true;
            if (!leaves) continue;
        }
        return m;
    }
    throw std::invalid_argument("random_subgraph_word: no admissible word exists");
}

inline std::vector<std::pair<Vertex, Vector>> random_reduced_letters(const FockSpace& space,
                                                                     const MinimalWord& w,
                                                                     std::mt19937_64& rng) {
    std::vector<std::pair<Vertex, Vector>> letters;
    for (Vertex v : w.letters) letters.emplace_back(v, random_centered(space.algebra(v), rng));
    return letters;
}

inline Matrix apply_letter_chain(const FockSpace& space,
                                 const std::vector<std::pair<Vertex, Vector>>& letters,
                                 Matrix cols) {
    for (int i = static_cast<int>(letters.size()) - 1; i >= 0; --i) {
        const auto& [v, a] = letters[size_t(i)];
        Matrix out = Matrix::Zero(cols.rows(), cols.cols());
        space.apply_left(v, space.algebra(v).left_mult_matrix(a), cols, out);
        cols.swap(out);
    }
    return cols;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Intersection property reports
// ---------------------------------------------------------------------------

struct IntersectionRow {
    int instance = 0;
    std::string word;
    bool inside_g1 = false;
    double out_of_intersection = 0.0; // mass of E(x)Ω outside words of Γ0∩Γ1
    double operator_residual = 0.0;   // ‖E(x) − predicted‖ on exact columns
    int reach = 0;
};

struct IntersectionReport {
    std::vector<IntersectionRow> rows;
    double max_out_of_intersection = 0.0;
    double max_operator_residual = 0.0;
};

/// Samples reduced operators over Γ0, compresses with E_{Γ1}, and decomposes
/// the result against the reduced-operator basis. Every surviving component
/// must have all vertices in Γ0 ∩ Γ1; the compression must equal the operator
/// itself (word inside Γ1) or vanish.
inline IntersectionReport intersection_check(const FockSpace& space,
                                             const std::vector<Vertex>& g0,
                                             const std::vector<Vertex>& g1, int samples,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const SubgraphProjection p0 = subgraph_projection(space, g0);
    const SubgraphProjection p1 = subgraph_projection(space, g1);
    IntersectionReport report;
    for (int s = 0; s < samples; ++s) {
        const int max_len = std::max(1, space.cutoff() - 1);
        const MinimalWord w =
            detail::random_subgraph_word(space, p0.vertex_mask, max_len, rng);
        const auto letters = detail::random_reduced_letters(space, w, rng);
        const int reach = w.length();
        if (reach > space.cutoff()) continue;

        IntersectionRow row;
        row.instance = s;
        row.word = word_to_string(space.graph(), w.letters);
        row.inside_g1 = p1.word_inside(w);
        row.reach = reach;

        // exact columns inside the Γ1 zone
        std::vector<Index> cols;
        for (const FockBlock& b : space.blocks())
            if (p1.word_inside(b.word) && b.word.length() + reach <= space.cutoff())
                for (Index f = 0; f < b.dim; ++f) cols.push_back(b.offset + f);
        Matrix sel = Matrix::Zero(space.dimension(), Index(cols.size()));
        for (size_t i = 0; i < cols.size(); ++i) sel(cols[i], Index(i)) = 1.0;

        const Matrix image = detail::apply_letter_chain(space, letters, sel);
        const Matrix compressed = p1.diag.cast<Complex>().asDiagonal() * image;

        // vacuum decomposition: first selected column is Ω
        const Vector eomega = compressed.col(0);
        for (const auto& comp : vacuum_decomposition(space, eomega, 1e-11)) {
            bool inside = true;
            for (Vertex v : comp.word.letters)
                inside = inside && p0.vertex_mask[size_t(v)] && p1.vertex_mask[size_t(v)];
            if (!inside) row.out_of_intersection += comp.norm;
        }
        row.operator_residual = row.inside_g1 ? (compressed - image).norm() : compressed.norm();
        report.max_out_of_intersection =
            std::max(report.max_out_of_intersection, row.out_of_intersection);
        report.max_operator_residual =
            std::max(report.max_operator_residual, row.operator_residual);
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Amalgamated freeness
// ---------------------------------------------------------------------------

struct FreenessRow {
    int instance = 0;
    int factors = 0;
    int total_reach = 0;
    double residual = 0.0;
};

struct FreenessReport {
    std::vector<FreenessRow> rows;
    double max_residual = 0.0;
};

/// Alternating products of Link(v)-centered operators from M_{Star(v)} and
/// M_{Γ\{v}}; reports ‖E_{Link(v)}(a_1 ... a_n)‖ on the exact columns of the
/// Link zone.
inline FreenessReport freeness_check(const FockSpace& space, Vertex v, int instances,
                                     std::uint64_t seed, int max_total_reach) {
    const SimplicialGraph& g = space.graph();
    g.require_vertex(v);
    if (max_total_reach < 2 || max_total_reach > space.cutoff())
        throw budget_error("freeness_check: total reach must lie within the cutoff");
    std::mt19937_64 rng(seed);

    std::vector<char> star_mask(size_t(g.vertex_count()), 0), rest_mask(size_t(g.vertex_count()), 0),
        link_mask(size_t(g.vertex_count()), 0);
    for (Vertex u : g.star(v)) star_mask[size_t(u)] = 1;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        if (u != v) rest_mask[size_t(u)] = 1;
    for (Vertex u : g.link(v)) link_mask[size_t(u)] = 1;

    const SubgraphProjection plink = subgraph_projection(space, g.link(v));

    FreenessReport report;
    for (int s = 0; s < instances; ++s) {
        // Alternate between the two legs; random starting side, 1..3 factors.
        const int n = 1 + int(rng() % 3);
        bool star_side = (rng() % 2) == 0;
        std::vector<std::pair<Vertex, Vector>> letters;
        int budget = max_total_reach;
        int factors = 0;
        for (int k = 0; k < n && budget > 0; ++k, star_side = !star_side) {
            const auto& mask = star_side ? star_mask : rest_mask;
            MinimalWord w;
            try {
                w = detail::random_subgraph_word(space, mask, std::min(budget, 2), rng,
                                                 &link_mask);
            } catch (const std::invalid_argument&) {
                break;
            }
            for (auto& l : detail::random_reduced_letters(space, w, rng))
                letters.push_back(std::move(l));
            budget -= w.length();
            ++factors;
        }
        if (factors == 0) continue;
        const int total = static_cast<int>(letters.size());

        std::vector<Index> cols;
        for (const FockBlock& b : space.blocks())
            if (plink.word_inside(b.word) && b.word.length() + total <= space.cutoff())
                for (Index f = 0; f < b.dim; ++f) cols.push_back(b.offset + f);
        Matrix sel = Matrix::Zero(space.dimension(), Index(cols.size()));
        for (size_t i = 0; i < cols.size(); ++i) sel(cols[i], Index(i)) = 1.0;

        const Matrix image = detail::apply_letter_chain(space, letters, sel);
        const double residual = (plink.diag.cast<Complex>().asDiagonal() * image).norm();

        report.rows.push_back({s, factors, total, residual});
        report.max_residual = std::max(report.max_residual, residual);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Modular theory of the graph product state
// ---------------------------------------------------------------------------

/// Blockwise modular data: J assembled from per-word reversal bijections and
/// vertex conjugations, delta block-diagonal over word summands.
class ModularData {
public:
    explicit ModularData(const FockSpace& space) : space_(&space) {
        const Index d = space.dimension();
        jmat_ = Matrix::Zero(d, d);
        delta_ = Matrix::Zero(d, d);
        jmat_(0, 0) = 1.0;
        delta_(0, 0) = 1.0;
        block_eigs_.resize(space.blocks().size());
        block_vecs_.resize(space.blocks().size());
        block_eigs_[0] = Eigen::VectorXd::Ones(1);
        block_vecs_[0] = Matrix::Identity(1, 1);
        for (size_t bi = 1; bi < space.blocks().size(); ++bi) assemble_block(bi);
    }

    /// Linear part of the antilinear J: J c = jmat · conj(c).
    const Matrix& jmat() const { return jmat_; }
    const Matrix& delta() const { return delta_; }

    Matrix delta_power(double p) const {
        return map_blocks([&](const Eigen::VectorXd& e) {
            Vector v(e.size());
            for (Index k = 0; k < e.size(); ++k) v(k) = std::pow(e(k), p);
            return v;
        });
    }

    Matrix delta_it(double t) const {
        return map_blocks([&](const Eigen::VectorXd& e) {
            Vector v(e.size());
            for (Index k = 0; k < e.size(); ++k)
                v(k) = std::exp(Complex(0.0, t * std::log(e(k))));
            return v;
        });
    }

    /// Linear part of S = J delta^{1/2}: S c = smat · conj(c).
    Matrix smat() const { return jmat_ * delta_power(0.5).conjugate(); }

private:
    template <typename Fn>
    Matrix map_blocks(const Fn& fn) const {
        Matrix out = Matrix::Zero(space_->dimension(), space_->dimension());
        for (size_t bi = 0; bi < space_->blocks().size(); ++bi) {
            const FockBlock& b = space_->blocks()[bi];
            const Vector vals = fn(block_eigs_[bi]);
            out.block(b.offset, b.offset, b.dim, b.dim) =
                block_vecs_[bi] * vals.asDiagonal() * block_vecs_[bi].adjoint();
        }
        return out;
    }

    void assemble_block(size_t bi) {
        const FockSpace& space = *space_;
        const FockBlock& b = space.blocks()[bi];
        const int n = b.word.length();
        Word rev(b.word.letters.rbegin(), b.word.letters.rend());
        const MinimalWord wbar = normalize(space.graph(), rev);
        const int tbi = space.block_of(wbar);
        const FockBlock& t = space.blocks().at(size_t(tbi));
        const WordPermutation perm = sigma(space.graph(), rev, wbar.letters);
        // factor f of the source word sits at target slot tau[f]
        std::vector<int> tau(static_cast<size_t>(n));
        for (int f = 0; f < n; ++f) tau[size_t(f)] = perm.map[size_t(n - 1 - f)];

        // centered restrictions of the vertex modular matrices
        std::vector<Matrix> jv, dv;
        for (Vertex v : b.word.letters) {
            const auto& alg = space.algebra(v);
            const int dc = alg.centered_dim();
            jv.push_back(alg.modular_j().block(1, 1, dc, dc));
            dv.push_back(alg.modular_delta().block(1, 1, dc, dc));
        }

        // J block: permute factors to the reversed word, conjugating each.
        for (Index src = 0; src < b.dim; ++src) {
            std::vector<Index> sd(static_cast<size_t>(n));
            for (int f = 0; f < n; ++f)
                sd[size_t(f)] = (src / b.strides[size_t(f)]) % b.factor_dims[size_t(f)];
            // iterate over destination digits of each factor
            std::vector<Index> dd(static_cast<size_t>(n), 0);
            while (true) {
                Complex coef = 1.0;
                Index row = t.offset;
                for (int f = 0; f < n; ++f) {
                    coef *= jv[size_t(f)](dd[size_t(f)], sd[size_t(f)]);
                    row += dd[size_t(f)] * t.strides[size_t(tau[size_t(f)])];
                }
                if (coef != Complex(0.0)) jmat_(row, b.offset + src) += coef;
                int f = n - 1;
                while (f >= 0 && ++dd[size_t(f)] == b.factor_dims[size_t(f)]) dd[size_t(f)--] = 0;
                if (f < 0) break;
            }
        }

        // delta block: conjugate the reversed-order tensor product back.
        Matrix sigma_mat = Matrix::Zero(t.dim, b.dim);
        for (Index src = 0; src < b.dim; ++src) {
            Index row = 0;
            for (int f = 0; f < n; ++f) {
                const Index digit = (src / b.strides[size_t(f)]) % b.factor_dims[size_t(f)];
                row += digit * t.strides[size_t(tau[size_t(f)])];
            }
            sigma_mat(row, src) = 1.0;
        }
        Matrix tensor = Matrix::Identity(1, 1);
        for (int slot = 0; slot < n; ++slot) {
            // vertex whose factor lands at target slot `slot`
            int f = 0;
            while (tau[size_t(f)] != slot) ++f;
            const Matrix& factor = dv[size_t(f)];
            Matrix next(tensor.rows() * factor.rows(), tensor.cols() * factor.cols());
            for (Index i = 0; i < tensor.rows(); ++i)
                for (Index j = 0; j < tensor.cols(); ++j)
                    next.block(i * factor.rows(), j * factor.cols(), factor.rows(),
                               factor.cols()) = tensor(i, j) * factor;
            tensor = std::move(next);
        }
        const Matrix block = sigma_mat.adjoint() * tensor * sigma_mat;
        delta_.block(b.offset, b.offset, b.dim, b.dim) = block;
        Eigen::SelfAdjointEigenSolver<Matrix> es(block);
        block_eigs_[bi] = es.eigenvalues();
        block_vecs_[bi] = es.eigenvectors();
    }

    const FockSpace* space_;
    Matrix jmat_;
    Matrix delta_;
    std::vector<Eigen::VectorXd> block_eigs_;
    std::vector<Matrix> block_vecs_;
};

inline ModularData modular_data(const FockSpace& space) { return ModularData(space); }

/// Reduced operator with every letter evolved by its vertex modular flow.
inline FockOperator sigma_t(const FockSpace& space, double t,
                            const std::vector<std::pair<Vertex, Vector>>& letters) {
    std::vector<std::pair<Vertex, Vector>> evolved;
    evolved.reserve(letters.size());
    for (const auto& [v, a] : letters)
        evolved.emplace_back(v, space.algebra(v).modular_flow(t, a));
    return space.reduced_operator(evolved);
}

/// Generator of the right graph product algebra: rho_v(J_v a* J_v).
inline FockOperator right_generator(const FockSpace& space, Vertex v, const Vector& a) {
    return space.rho(v, space.algebra(v).right_mult_matrix(a));
}

} // namespace graphprod
