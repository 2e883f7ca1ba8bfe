#pragma once

#include <Eigen/Dense>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphprod/errors.hpp"
#include "graphprod/vertex_algebra.hpp"
#include "graphprod/word.hpp"

namespace graphprod {

using Index = Eigen::Index;

/// One summand H_w of the truncated graph product Hilbert space: the tensor
/// product of the centered GNS spaces along a minimal word. Coordinates are
/// row-major over the factors.
struct FockBlock {
    MinimalWord word;
    Index offset = 0;
    Index dim = 1;
    std::vector<int> factor_dims;
    std::vector<Index> strides;
};

/// Operator on the truncated space. `reach` is the maximum word-length
/// increase the exact (untruncated) action can cause; the matrix agrees with
/// the untruncated operator on all summands of length <= cutoff - reach.
struct FockOperator {
    Matrix mat;
    int reach = 0;
};

/// Tensor-factor reshuffling unitary between the summands of two equivalent
/// reduced words. Pure 0/1 coordinate permutation, no phases.
struct QUnitary {
    Word source;
    Word target;
    std::vector<int> slot_map; // source factor i sits at target slot slot_map[i]
    std::vector<Index> source_strides;
    std::vector<Index> target_strides;
    std::vector<int> factor_dims; // dims in source order
    Index dim = 1;

    Index map_index(Index flat) const {
        Index out = 0;
        for (size_t i = 0; i < factor_dims.size(); ++i) {
            const Index digit = (flat / source_strides[i]) % factor_dims[i];
            out += digit * target_strides[size_t(slot_map[i])];
        }
        return out;
    }

    Vector apply(const Vector& v) const {
        if (v.size() != dim) throw std::invalid_argument("q_unitary: vector size mismatch");
        Vector out = Vector::Zero(dim);
        for (Index f = 0; f < dim; ++f) out(map_index(f)) = v(f);
        return out;
    }

    Matrix matrix() const {
        Matrix m = Matrix::Zero(dim, dim);
        for (Index f = 0; f < dim; ++f) m(map_index(f), f) = 1.0;
        return m;
    }
};

/// Truncated graph product Fock space over per-vertex algebras, with the
/// explicit left/right vertex actions.
class FockSpace {
public:
    FockSpace(SimplicialGraph graph, std::vector<VertexAlgebra> algebras, int cutoff,
              Index dim_cap = 20000)
        : graph_(std::move(graph)), algebras_(std::move(algebras)), cutoff_(cutoff) {
        if (cutoff_ < 0) throw std::invalid_argument("fock: negative cutoff");
        if (static_cast<int>(algebras_.size()) != graph_.vertex_count())
            throw std::invalid_argument("fock: one algebra per vertex required");
        Index offset = 0;
        for (const MinimalWord& w : enumerate_minimal(graph_, cutoff_)) {
            FockBlock b;
            b.word = w;
            b.offset = offset;
            for (Vertex v : w.letters) b.factor_dims.push_back(algebras_[v].centered_dim());
            b.strides.assign(b.factor_dims.size(), 1);
            for (int i = static_cast<int>(b.factor_dims.size()) - 2; i >= 0; --i)
                b.strides[i] = b.strides[i + 1] * b.factor_dims[i + 1];
            b.dim = b.factor_dims.empty() ? 1 : b.strides[0] * b.factor_dims[0];
            offset += b.dim;
            block_index_[w.letters] = static_cast<int>(blocks_.size());
            blocks_.push_back(std::move(b));
            if (offset > dim_cap)
                throw budget_error("fock: dimension exceeds the configured cap");
        }
        dim_ = offset;
        left_actions_.resize(graph_.vertex_count());
        right_actions_.resize(graph_.vertex_count());
        for (Vertex v = 0; v < graph_.vertex_count(); ++v) {
            left_actions_[v].reserve(blocks_.size());
            right_actions_[v].reserve(blocks_.size());
            for (const FockBlock& b : blocks_) {
                left_actions_[v].push_back(make_action(v, b, /*left=*/true));
                right_actions_[v].push_back(make_action(v, b, /*left=*/false));
            }
        }
    }

    const SimplicialGraph& graph() const { return graph_; }
    const VertexAlgebra& algebra(Vertex v) const { return algebras_.at(v); }
    int cutoff() const { return cutoff_; }
    Index dimension() const { return dim_; }
    const std::vector<FockBlock>& blocks() const { return blocks_; }

    int block_of(const MinimalWord& w) const {
        auto it = block_index_.find(w.letters);
        return it == block_index_.end() ? -1 : it->second;
    }

    /// Total dimension of the summands with word length <= max_len.
    Index length_dim(int max_len) const {
        Index d = 0;
        for (const FockBlock& b : blocks_)
            if (b.word.length() <= max_len) d += b.dim;
        return d;
    }

    /// Coordinates of the summands with word length exactly len.
    std::vector<Index> length_coords(int len) const {
        std::vector<Index> out;
        for (const FockBlock& b : blocks_)
            if (b.word.length() == len)
                for (Index f = 0; f < b.dim; ++f) out.push_back(b.offset + f);
        return out;
    }

    /// The reshuffling unitary between two equivalent reduced words.
    QUnitary q_unitary(const Word& source, const Word& target) const {
        const WordPermutation perm = sigma(graph_, source, target);
        QUnitary q;
        q.source = source;
        q.target = target;
        q.slot_map = perm.map;
        for (Vertex v : source) q.factor_dims.push_back(algebras_[v].centered_dim());
        std::vector<int> tgt_dims;
        for (Vertex v : target) tgt_dims.push_back(algebras_[v].centered_dim());
        q.source_strides = strides_of(q.factor_dims);
        q.target_strides = strides_of(tgt_dims);
        q.dim = 1;
        for (int d : q.factor_dims) q.dim *= d;
        return q;
    }

    // ---- vertex operator actions ----
    // X is a dim(v) x dim(v) matrix on the vertex GNS space (orthonormal
    // coordinates, cyclic vector first). apply_* accumulates into `out`,
    // which must be zero-initialized by the caller.

    void apply_left(Vertex v, const Matrix& X, const Matrix& in, Matrix& out) const {
        apply_side(left_actions_.at(v), v, X, in, out);
    }

    void apply_right(Vertex v, const Matrix& X, const Matrix& in, Matrix& out) const {
        apply_side(right_actions_.at(v), v, X, in, out);
    }

    /// lambda_v(X) as a dense truncated operator; reach 1.
    FockOperator lambda(Vertex v, const Matrix& X) const {
        return FockOperator{materialize(left_actions_.at(v), v, X), 1};
    }

    FockOperator lambda_element(Vertex v, const Vector& a) const {
        return lambda(v, algebras_.at(v).left_mult_matrix(a));
    }

    /// rho_v(X): the right analogue; reach 1.
    FockOperator rho(Vertex v, const Matrix& X) const {
        return FockOperator{materialize(right_actions_.at(v), v, X), 1};
    }

    FockOperator rho_element(Vertex v, const Vector& a) const {
        return rho(v, algebras_.at(v).left_mult_matrix(a));
    }

    /// Product lambda_{v1}(a1) ... lambda_{vn}(an) along a reduced word of
    /// centered letters; reach n.
    FockOperator reduced_operator(const std::vector<std::pair<Vertex, Vector>>& letters) const {
        if (letters.empty()) throw std::invalid_argument("reduced_operator: empty letter list");
        Word w;
        for (const auto& [v, a] : letters) w.push_back(v);
        if (!is_reduced(graph_, w))
            throw std::invalid_argument("reduced_operator: vertex word is not reduced");
        Matrix acc = Matrix::Identity(dim_, dim_);
        for (int i = static_cast<int>(letters.size()) - 1; i >= 0; --i) {
            const auto& [v, a] = letters[size_t(i)];
            const VertexAlgebra& alg = algebras_.at(v);
            if (std::abs(alg.omega(a)) > 1e-12)
                throw std::invalid_argument("reduced_operator: letter is not centered");
            Matrix out = Matrix::Zero(dim_, dim_);
            apply_left(v, alg.left_mult_matrix(alg.center(a)), acc, out);
            acc.swap(out);
        }
        return FockOperator{std::move(acc), static_cast<int>(letters.size())};
    }

    /// Graph product state <T Omega, Omega>. Refuses operators whose reach
    /// exceeds the cutoff: the value would be truncation-corrupted.
    Complex vacuum_state(const FockOperator& T) const {
        if (T.reach > cutoff_)
            throw budget_error("vacuum_state: operator reach exceeds the cutoff");
        if (T.mat.rows() != dim_ || T.mat.cols() != dim_)
            throw std::invalid_argument("vacuum_state: dimension mismatch");
        return T.mat(0, 0);
    }

private:
    struct BlockAction {
        bool extend = false;
        int ext_block = -1;
        Index ext_stride = 0;
        std::vector<Index> ext_base;
        int slot = -1;
        int strip_block = -1;
        std::vector<Index> strip_base;
    };

    static std::vector<Index> strides_of(const std::vector<int>& dims) {
        std::vector<Index> s(dims.size(), 1);
        for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
            s[size_t(i)] = s[size_t(i) + 1] * dims[size_t(i) + 1];
        return s;
    }

    void check_vertex_matrix(Vertex v, const Matrix& X) const {
        graph_.require_vertex(v);
        const int d = algebras_.at(v).dim();
        if (X.rows() != d || X.cols() != d)
            throw std::invalid_argument("fock: vertex operator has wrong dimensions");
    }

    BlockAction make_action(Vertex v, const FockBlock& b, bool left) const {
        BlockAction act;
        const bool compatible =
            left ? left_compatible(graph_, v, b.word) : right_compatible(graph_, b.word, v);
        if (compatible) {
            act.extend = true;
            Word concat;
            if (left) {
                concat.push_back(v);
                concat.insert(concat.end(), b.word.letters.begin(), b.word.letters.end());
            } else {
                concat = b.word.letters;
                concat.push_back(v);
            }
            if (b.word.length() + 1 > cutoff_) return act; // extension truncated away
            const MinimalWord target = normalize(graph_, concat);
            const int tb = block_of(target);
            const WordPermutation perm = sigma(graph_, concat, target.letters);
            const FockBlock& t = blocks_.at(size_t(tb));
            const size_t new_pos = left ? 0 : concat.size() - 1;
            act.ext_block = tb;
            act.ext_stride = t.strides.at(size_t(perm.map[new_pos]));
            act.ext_base.resize(size_t(b.dim));
            for (Index f = 0; f < b.dim; ++f) {
                Index base = 0;
                for (size_t i = 0; i < b.factor_dims.size(); ++i) {
                    const Index digit = (f / b.strides[i]) % b.factor_dims[i];
                    const size_t concat_pos = left ? i + 1 : i;
                    base += digit * t.strides.at(size_t(perm.map[concat_pos]));
                }
                act.ext_base[size_t(f)] = base;
            }
        } else {
            act.extend = false;
            const MinimalWord shorter =
                left ? split_left(graph_, v, b.word) : split_right(graph_, b.word, v);
            const int sb = block_of(shorter);
            const FockBlock& s = blocks_.at(size_t(sb));
            Word concat;
            if (left) {
                concat.push_back(v);
                concat.insert(concat.end(), shorter.letters.begin(), shorter.letters.end());
            } else {
                concat = shorter.letters;
                concat.push_back(v);
            }
            const WordPermutation perm = sigma(graph_, concat, b.word.letters);
            const size_t v_pos = left ? 0 : concat.size() - 1;
            act.slot = perm.map[v_pos];
            act.strip_block = sb;
            act.strip_base.resize(size_t(b.dim));
            for (Index f = 0; f < b.dim; ++f) {
                Index base = 0;
                for (size_t j = 0; j < shorter.letters.size(); ++j) {
                    const size_t concat_pos = left ? j + 1 : j;
                    const size_t u_slot = size_t(perm.map[concat_pos]);
                    const Index digit = (f / b.strides[u_slot]) % b.factor_dims[u_slot];
                    base += digit * s.strides[j];
                }
                act.strip_base[size_t(f)] = base;
            }
        }
        return act;
    }

    // Column-at-a-time scatter; each destination vector stays cache-resident.
    void apply_side(const std::vector<BlockAction>& actions, Vertex v, const Matrix& X,
                    const Matrix& in, Matrix& out) const {
        check_vertex_matrix(v, X);
        if (in.rows() != dim_ || out.rows() != dim_ || in.cols() != out.cols())
            throw std::invalid_argument("fock: apply dimension mismatch");
        const int dc = algebras_.at(v).centered_dim();
        for (Index c = 0; c < in.cols(); ++c) {
            const auto vin = in.col(c);
            auto vout = out.col(c);
            for (size_t bi = 0; bi < blocks_.size(); ++bi) {
                const FockBlock& u = blocks_[bi];
                const BlockAction& act = actions[bi];
                if (act.extend) {
                    if (X(0, 0) != Complex(0.0))
                        vout.segment(u.offset, u.dim) += X(0, 0) * vin.segment(u.offset, u.dim);
                    if (act.ext_block < 0) continue;
                    const FockBlock& t = blocks_.at(size_t(act.ext_block));
                    for (Index f = 0; f < u.dim; ++f) {
                        const Complex src = vin(u.offset + f);
                        if (src == Complex(0.0)) continue;
                        const Index base = t.offset + act.ext_base[size_t(f)];
                        for (int k = 0; k < dc; ++k)
                            vout(base + k * act.ext_stride) += X(k + 1, 0) * src;
                    }
                } else {
                    const FockBlock& s = blocks_.at(size_t(act.strip_block));
                    const Index stride = u.strides.at(size_t(act.slot));
                    const int dloc = u.factor_dims.at(size_t(act.slot));
                    for (Index f = 0; f < u.dim; ++f) {
                        const Complex src = vin(u.offset + f);
                        if (src == Complex(0.0)) continue;
                        const int k = static_cast<int>((f / stride) % dloc);
                        const Index diag_base = u.offset + f - k * stride;
                        for (int j = 0; j < dloc; ++j)
                            vout(diag_base + j * stride) += X(j + 1, k + 1) * src;
                        vout(s.offset + act.strip_base[size_t(f)]) += X(0, k + 1) * src;
                    }
                }
            }
        }
    }

    // Direct entry writes for lambda/rho of a single vertex operator.
    Matrix materialize(const std::vector<BlockAction>& actions, Vertex v, const Matrix& X) const {
        check_vertex_matrix(v, X);
        const int dc = algebras_.at(v).centered_dim();
        Matrix out = Matrix::Zero(dim_, dim_);
        for (size_t bi = 0; bi < blocks_.size(); ++bi) {
            const FockBlock& u = blocks_[bi];
            const BlockAction& act = actions[bi];
            if (act.extend) {
                for (Index f = 0; f < u.dim; ++f) out(u.offset + f, u.offset + f) += X(0, 0);
                if (act.ext_block < 0) continue;
                const FockBlock& t = blocks_.at(size_t(act.ext_block));
                for (Index f = 0; f < u.dim; ++f) {
                    const Index base = t.offset + act.ext_base[size_t(f)];
                    for (int k = 0; k < dc; ++k)
                        out(base + k * act.ext_stride, u.offset + f) += X(k + 1, 0);
                }
            } else {
                const FockBlock& s = blocks_.at(size_t(act.strip_block));
                const Index stride = u.strides.at(size_t(act.slot));
                const int dloc = u.factor_dims.at(size_t(act.slot));
                for (Index f = 0; f < u.dim; ++f) {
                    const int k = static_cast<int>((f / stride) % dloc);
                    const Index diag_base = u.offset + f - k * stride;
                    for (int j = 0; j < dloc; ++j)
                        out(diag_base + j * stride, u.offset + f) += X(j + 1, k + 1);
                    out(s.offset + act.strip_base[size_t(f)], u.offset + f) += X(0, k + 1);
                }
            }
        }
        return out;
    }

    SimplicialGraph graph_;
    std::vector<VertexAlgebra> algebras_;
    int cutoff_;
    Index dim_ = 0;
    std::vector<FockBlock> blocks_;
    std::map<Word, int> block_index_;
    std::vector<std::vector<BlockAction>> left_actions_;
    std::vector<std::vector<BlockAction>> right_actions_;
};

} // namespace graphprod
