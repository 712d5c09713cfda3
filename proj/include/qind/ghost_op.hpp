#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "qind/graded_space.hpp"

namespace qind {

/// The four canonical matrices on the two-dimensional ghost-c sector span{1, c}.
/// mul_c = |c><1|, del_c = |1><c|, c_delc = |c><c|, delc_c = |1><1|.
struct GhostCBasis {
    static Matrix2c mul_c() {
        Matrix2c m = Matrix2c::Zero();
        m(1, 0) = 1;
        return m;
    }
    static Matrix2c del_c() {
        Matrix2c m = Matrix2c::Zero();
        m(0, 1) = 1;
        return m;
    }
    static Matrix2c c_delc() {
        Matrix2c m = Matrix2c::Zero();
        m(1, 1) = 1;
        return m;
    }
    static Matrix2c delc_c() {
        Matrix2c m = Matrix2c::Zero();
        m(0, 0) = 1;
        return m;
    }
};

/// Ghost monomials in the c-sector used for component extraction.
enum class GhostMono { One, C, DelC, CDelC, DelCC };

/// Polynomial in the even ghost c-tilde whose coefficients are complex matrices
/// on a GradedSpace.  Immutable-by-convention value type; all operations below
/// return new values.
class GhostPolyOperator {
public:
    GhostPolyOperator(SpacePtr space, Parity parity) : space_(std::move(space)), parity_(parity) {}

    static GhostPolyOperator zero(SpacePtr space, Parity parity = Parity::Even) {
        return GhostPolyOperator(std::move(space), parity);
    }
    static GhostPolyOperator identity(SpacePtr space) {
        GhostPolyOperator op(space, Parity::Even);
        op.coeffs_[0] = MatrixXc::Identity(space->total_dim(), space->total_dim());
        return op;
    }

    const SpacePtr& space() const { return space_; }
    Parity parity() const { return parity_; }
    const std::map<int, MatrixXc>& coeffs() const { return coeffs_; }

    bool has_degree(int d) const { return coeffs_.count(d) > 0; }
    int max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    MatrixXc coeff(int d) const {
        auto it = coeffs_.find(d);
        if (it != coeffs_.end()) return it->second;
        return MatrixXc::Zero(space_->total_dim(), space_->total_dim());
    }

    void set_coeff(int d, MatrixXc m) {
        if (m.rows() != space_->total_dim() || m.cols() != space_->total_dim())
            throw std::invalid_argument("GhostPolyOperator: coefficient dimension mismatch");
        if (d < 0) throw std::invalid_argument("GhostPolyOperator: negative ctilde degree");
        coeffs_[d] = std::move(m);
    }

    void add_coeff(int d, const MatrixXc& m) {
        auto it = coeffs_.find(d);
        if (it == coeffs_.end())
            set_coeff(d, m);
        else
            it->second += m;
    }

    double max_abs_norm() const {
        double n = 0;
        for (const auto& [d, m] : coeffs_) n = std::max(n, max_abs(m));
        return n;
    }

    /// Drop coefficients with max-abs below eps (0 drops only exact zeros).
    GhostPolyOperator pruned(double eps = 0.0) const {
        GhostPolyOperator out(space_, parity_);
        for (const auto& [d, m] : coeffs_)
            if (max_abs(m) > eps) out.coeffs_[d] = m;
        return out;
    }

    /// Keep degrees <= dmax only.
    GhostPolyOperator truncated(int dmax) const {
        GhostPolyOperator out(space_, parity_);
        for (const auto& [d, m] : coeffs_)
            if (d <= dmax) out.coeffs_[d] = m;
        return out;
    }

    /// Every coefficient maps parity-p vectors to parity-(p + op parity) vectors only.
    bool is_parity_homogeneous(double tol = 0.0) const {
        const auto n = space_->total_dim();
        for (const auto& [d, m] : coeffs_) {
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (std::abs(m(i, j)) <= tol) continue;
                    if (space_->parity(i) != space_->parity(j) + parity_) return false;
                }
        }
        return true;
    }

    friend GhostPolyOperator operator+(const GhostPolyOperator& a, const GhostPolyOperator& b) {
        require_same_space(a, b);
        GhostPolyOperator out = a;
        for (const auto& [d, m] : b.coeffs_) out.add_coeff(d, m);
        return out;
    }
    friend GhostPolyOperator operator-(const GhostPolyOperator& a, const GhostPolyOperator& b) {
        return a + (-1.0) * b;
    }
    friend GhostPolyOperator operator*(Complex s, const GhostPolyOperator& a) {
        GhostPolyOperator out(a.space_, a.parity_);
        for (const auto& [d, m] : a.coeffs_) out.coeffs_[d] = s * m;
        return out;
    }
    friend GhostPolyOperator operator*(double s, const GhostPolyOperator& a) { return Complex(s, 0) * a; }

    /// Multiply by ctilde^k.
    GhostPolyOperator shifted(int k) const {
        GhostPolyOperator out(space_, parity_);
        for (const auto& [d, m] : coeffs_) out.coeffs_[d + k] = m;
        return out;
    }

    static void require_same_space(const GhostPolyOperator& a, const GhostPolyOperator& b) {
        if (a.space_.get() != b.space_.get() && !a.space_->same_as(*b.space_))
            throw std::invalid_argument("GhostPolyOperator: space mismatch");
    }

private:
    SpacePtr space_;
    Parity parity_;
    std::map<int, MatrixXc> coeffs_;
};

/// Matrix product with ctilde degrees adding (Cauchy product); parity adds mod 2.
inline GhostPolyOperator compose(const GhostPolyOperator& a, const GhostPolyOperator& b) {
    GhostPolyOperator::require_same_space(a, b);
    GhostPolyOperator out(a.space(), a.parity() + b.parity());
    for (const auto& [da, ma] : a.coeffs())
        for (const auto& [db, mb] : b.coeffs()) out.add_coeff(da + db, ma * mb);
    return out.pruned();
}

/// AB - (-1)^{|A||B|} BA.
inline GhostPolyOperator supercommutator(const GhostPolyOperator& a, const GhostPolyOperator& b) {
    const double sign = (a.parity() == Parity::Odd && b.parity() == Parity::Odd) ? -1.0 : 1.0;
    return compose(a, b) - sign * compose(b, a);
}

/// Operator acting as `local` on the named factor and identity elsewhere.
/// When `local_parity` is odd the embedding carries the fermionic-string twist:
/// it multiplies by the parity sign of all factors ordered before the named one,
/// so odd operators on distinct factors anticommute in the representation.
inline GhostPolyOperator embed(const SpacePtr& space, const std::string& factor_name, const Matrix2c& local,
                               Parity local_parity) {
    const size_t f = space->factor_index(factor_name);
    const auto& fac = space->factors()[f];
    if (fac.dim != 2) throw std::invalid_argument("embed: only 2-dim named factors use Matrix2c overload");
    MatrixXc loc = local;
    // fallthrough to the general overload below
    const Eigen::Index n = space->total_dim();
    const Eigen::Index d = fac.dim;
    const Eigen::Index str = space->stride(f);
    const std::vector<double> string_sign =
        (local_parity == Parity::Odd) ? space->prefix_signs(f) : std::vector<double>();

    MatrixXc m = MatrixXc::Zero(n, n);
    for (Eigen::Index row = 0; row < n; ++row) {
        const Eigen::Index i_loc = (row / str) % d;
        const Eigen::Index base = row - i_loc * str;
        for (Eigen::Index j_loc = 0; j_loc < d; ++j_loc) {
            const Complex v = loc(i_loc, j_loc);
            if (v == Complex(0, 0)) continue;
            const Eigen::Index col = base + j_loc * str;
            m(row, col) = (local_parity == Parity::Odd ? string_sign[static_cast<size_t>(col)] : 1.0) * v;
        }
    }
    GhostPolyOperator op(space, local_parity);
    op.set_coeff(0, std::move(m));
    return op;
}

/// General embed for a factor of arbitrary dimension.
inline GhostPolyOperator embed(const SpacePtr& space, const std::string& factor_name, const MatrixXc& local,
                               Parity local_parity) {
    const size_t f = space->factor_index(factor_name);
    const auto& fac = space->factors()[f];
    if (local.rows() != fac.dim || local.cols() != fac.dim)
        throw std::invalid_argument("embed: local operator dimension mismatch for factor '" + factor_name + "'");
    const Eigen::Index n = space->total_dim();
    const Eigen::Index d = fac.dim;
    const Eigen::Index str = space->stride(f);
    const std::vector<double> string_sign =
        (local_parity == Parity::Odd) ? space->prefix_signs(f) : std::vector<double>();

    MatrixXc m = MatrixXc::Zero(n, n);
    for (Eigen::Index row = 0; row < n; ++row) {
        const Eigen::Index i_loc = (row / str) % d;
        const Eigen::Index base = row - i_loc * str;
        for (Eigen::Index j_loc = 0; j_loc < d; ++j_loc) {
            const Complex v = local(i_loc, j_loc);
            if (v == Complex(0, 0)) continue;
            const Eigen::Index col = base + j_loc * str;
            m(row, col) = (local_parity == Parity::Odd ? string_sign[static_cast<size_t>(col)] : 1.0) * v;
        }
    }
    GhostPolyOperator op(space, local_parity);
    op.set_coeff(0, std::move(m));
    return op;
}

/// Operator acting as `m` on the leading factors (combined dimension m.rows())
/// and as identity on the remaining ones.  No string is needed: there are no
/// factors before the leading block.
inline GhostPolyOperator embed_leading(const SpacePtr& space, const MatrixXc& m, Parity parity) {
    const Eigen::Index n = space->total_dim();
    if (n % m.rows() != 0 || m.rows() != m.cols())
        throw std::invalid_argument("embed_leading: dimension mismatch");
    const Eigen::Index rest = n / m.rows();
    GhostPolyOperator op(space, parity);
    op.set_coeff(0, kron(m, MatrixXc::Identity(rest, rest)));
    return op;
}

namespace detail {

/// Map a flattened index with the ghost factor removed.
inline Eigen::Index reduced_index(Eigen::Index idx, Eigen::Index ghost_stride) {
    const Eigen::Index hi = idx / (2 * ghost_stride);
    const Eigen::Index lo = idx % ghost_stride;
    return hi * ghost_stride + lo;
}

}  // namespace detail

/// Ghost-sector block (g_row, g_col) of one ctilde coefficient, as a matrix on
/// the space with the ghost-c factor removed.
inline MatrixXc ghost_block(const GhostPolyOperator& a, const std::string& ghost_name, int g_row, int g_col,
                            int ctilde_degree) {
    const auto& space = *a.space();
    const size_t f = space.factor_index(ghost_name);
    if (space.factors()[f].dim != 2) throw std::invalid_argument("ghost_block: ghost factor must have dim 2");
    const Eigen::Index str = space.stride(f);
    const Eigen::Index n = space.total_dim();
    const Eigen::Index nr = n / 2;
    const MatrixXc m = a.coeff(ctilde_degree);
    MatrixXc out = MatrixXc::Zero(nr, nr);
    for (Eigen::Index row = 0; row < n; ++row) {
        if ((row / str) % 2 != g_row) continue;
        const Eigen::Index r = detail::reduced_index(row - g_row * str + 0, str);
        for (Eigen::Index col = 0; col < n; ++col) {
            if ((col / str) % 2 != g_col) continue;
            out(r, detail::reduced_index(col - g_col * str, str)) = m(row, col);
        }
    }
    return out;
}

/// Reduced space with the ghost-c factor removed.
inline SpacePtr drop_ghost(const SpacePtr& space, const std::string& ghost_name) {
    std::vector<Factor> fs;
    for (const auto& f : space->factors())
        if (f.name != ghost_name) fs.push_back(f);
    return GradedSpace::make(std::move(fs));
}

/// Coefficient X of the requested ghost monomial in the expansion
///   A = sum_m embed(m) (X_m otimes 1_ghost) ctilde^deg.
/// For the odd monomials (c, del_c) the fermionic string of the ghost factor is
/// undone, so X is the operator the paper writes to the right of the monomial.
/// The five structures overlap (del_c c = 1 - c del_c); `One` requires both
/// diagonal blocks equal and is rejected otherwise.
inline MatrixXc extract_ghost_component(const GhostPolyOperator& a, GhostMono mono, int ctilde_degree,
                                        const std::string& ghost_name = "ghost_c", double tol = 1e-12) {
    const auto& space = *a.space();
    if (!space.has_factor(ghost_name)) throw std::invalid_argument("extract_ghost_component: no ghost factor");
    const size_t f = space.factor_index(ghost_name);

    auto undo_string = [&](MatrixXc x) {
        const auto signs = space.prefix_signs(f);
        const Eigen::Index str = space.stride(f);
        // prefix signs are constant across the ghost index; collapse to reduced space
        const Eigen::Index n = space.total_dim();
        for (Eigen::Index row = 0; row < n; ++row) {
            if ((row / str) % 2 != 0) continue;
            const Eigen::Index r = detail::reduced_index(row, str);
            if (signs[static_cast<size_t>(row)] < 0) x.row(r) *= -1.0;
        }
        return x;
    };

    switch (mono) {
        case GhostMono::C:
            return undo_string(ghost_block(a, ghost_name, 1, 0, ctilde_degree));
        case GhostMono::DelC:
            return undo_string(ghost_block(a, ghost_name, 0, 1, ctilde_degree));
        case GhostMono::CDelC:
            return ghost_block(a, ghost_name, 1, 1, ctilde_degree);
        case GhostMono::DelCC:
            return ghost_block(a, ghost_name, 0, 0, ctilde_degree);
        case GhostMono::One: {
            MatrixXc lo = ghost_block(a, ghost_name, 0, 0, ctilde_degree);
            MatrixXc hi = ghost_block(a, ghost_name, 1, 1, ctilde_degree);
            const double scale = std::max(1.0, std::max(max_abs(lo), max_abs(hi)));
            if (max_abs(lo - hi) > tol * scale)
                throw std::runtime_error(
                    "extract_ghost_component: diagonal ghost blocks differ; report the pair (c del_c, del_c c)");
            return lo;
        }
    }
    throw std::logic_error("extract_ghost_component: unreachable");
}

/// Restrict one factor to a subset of its basis indices (e.g. modes -> on-shell pair).
inline GhostPolyOperator restrict_factor(const GhostPolyOperator& a, const std::string& factor_name,
                                         const std::vector<Eigen::Index>& keep, const SpacePtr& small_space) {
    const auto& space = *a.space();
    const size_t f = space.factor_index(factor_name);
    const Eigen::Index str = space.stride(f);
    const Eigen::Index d = space.factors()[f].dim;

    // flattened indices of the retained basis vectors, in small-space order
    std::vector<Eigen::Index> sel;
    sel.reserve(static_cast<size_t>(small_space->total_dim()));
    const Eigen::Index n = space.total_dim();
    for (Eigen::Index hi = 0; hi < n / (str * d); ++hi)
        for (Eigen::Index k : keep)
            for (Eigen::Index lo = 0; lo < str; ++lo) sel.push_back((hi * d + k) * str + lo);
    if (static_cast<Eigen::Index>(sel.size()) != small_space->total_dim())
        throw std::invalid_argument("restrict_factor: small space dimension mismatch");

    GhostPolyOperator out(small_space, a.parity());
    for (const auto& [deg, m] : a.coeffs()) {
        MatrixXc sm(sel.size(), sel.size());
        for (size_t i = 0; i < sel.size(); ++i)
            for (size_t j = 0; j < sel.size(); ++j) sm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(sel[i], sel[j]);
        out.set_coeff(deg, std::move(sm));
    }
    return out.pruned();
}

}  // namespace qind
