#pragma once

#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qind/pauli.hpp"

namespace qind {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

/// One tensor factor: a name, a dimension and the parity of each basis vector.
struct Factor {
    std::string name;
    Eigen::Index dim = 0;
    std::vector<Parity> parities;  // size dim
};

inline Factor even_factor(std::string name, Eigen::Index dim) {
    return Factor{std::move(name), dim, std::vector<Parity>(static_cast<size_t>(dim), Parity::Even)};
}

/// Factor for a single fermionic doublet: basis (even, odd).
inline Factor doublet_factor(std::string name) {
    return Factor{std::move(name), 2, {Parity::Even, Parity::Odd}};
}

/// Ordered tensor product of factors with a parity assignment per basis vector.
/// Index convention: the last factor varies fastest.
class GradedSpace {
public:
    static std::shared_ptr<const GradedSpace> make(std::vector<Factor> factors) {
        return std::shared_ptr<const GradedSpace>(new GradedSpace(std::move(factors)));
    }

    Eigen::Index total_dim() const { return total_dim_; }
    const std::vector<Factor>& factors() const { return factors_; }

    size_t factor_index(const std::string& name) const {
        for (size_t f = 0; f < factors_.size(); ++f)
            if (factors_[f].name == name) return f;
        throw std::invalid_argument("GradedSpace: unknown factor '" + name + "'");
    }
    bool has_factor(const std::string& name) const {
        for (const auto& f : factors_)
            if (f.name == name) return true;
        return false;
    }

    /// Stride of factor f in the flattened index.
    Eigen::Index stride(size_t f) const { return strides_[f]; }

    Parity parity(Eigen::Index idx) const { return parity_[static_cast<size_t>(idx)]; }

    /// +1/-1 per flattened index, from the mod-2 sum of the parities of factors
    /// strictly before `f`.  This is the fermionic-string sign used by embed().
    std::vector<double> prefix_signs(size_t f) const {
        std::vector<double> s(static_cast<size_t>(total_dim_), 1.0);
        for (Eigen::Index idx = 0; idx < total_dim_; ++idx) {
            int p = 0;
            for (size_t g = 0; g < f; ++g)
                p += static_cast<int>(factors_[g].parities[static_cast<size_t>((idx / strides_[g]) % factors_[g].dim)]);
            if (p % 2) s[static_cast<size_t>(idx)] = -1.0;
        }
        return s;
    }

    bool same_as(const GradedSpace& o) const {
        if (total_dim_ != o.total_dim_ || factors_.size() != o.factors_.size()) return false;
        for (size_t f = 0; f < factors_.size(); ++f) {
            if (factors_[f].name != o.factors_[f].name || factors_[f].dim != o.factors_[f].dim ||
                factors_[f].parities != o.factors_[f].parities)
                return false;
        }
        return true;
    }

private:
    explicit GradedSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("GradedSpace: no factors");
        total_dim_ = 1;
        for (const auto& f : factors_) {
            if (f.dim <= 0 || f.parities.size() != static_cast<size_t>(f.dim))
                throw std::invalid_argument("GradedSpace: bad factor '" + f.name + "'");
            total_dim_ *= f.dim;
        }
        strides_.assign(factors_.size(), 1);
        for (size_t f = factors_.size(); f-- > 1;) strides_[f - 1] = strides_[f] * factors_[f].dim;
        parity_.resize(static_cast<size_t>(total_dim_));
        for (Eigen::Index idx = 0; idx < total_dim_; ++idx) {
            int p = 0;
            for (size_t f = 0; f < factors_.size(); ++f)
                p += static_cast<int>(factors_[f].parities[static_cast<size_t>((idx / strides_[f]) % factors_[f].dim)]);
            parity_[static_cast<size_t>(idx)] = static_cast<Parity>(p % 2);
        }
    }

    std::vector<Factor> factors_;
    Eigen::Index total_dim_ = 0;
    std::vector<Eigen::Index> strides_;
    std::vector<Parity> parity_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

}  // namespace qind
