#include "gtsp/simplex.hpp"

#include <stdexcept>

#include "gtsp/error.hpp"

namespace gtsp {

CoveringLp::CoveringLp(std::vector<Rational> costs) : costs_(std::move(costs)) {
    const std::size_t n = costs_.size();
    for (const auto& c : costs_) {
        if (sgn(c) < 0) throw InputError("CoveringLp: negative cost");
    }
    tableau_.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) tableau_[i][i] = 1;
    rhs_ = costs_;
    reduced_.assign(n, Rational(0));
    basis_.resize(n);
    for (std::size_t i = 0; i < n; ++i) basis_[i] = i;
}

void CoveringLp::add_row(const std::vector<int>& support, const Rational& rhs) {
    const std::size_t n = costs_.size();
    // New dual column: B^-1 a, where B^-1 sits in the slack columns.
    for (std::size_t i = 0; i < n; ++i) {
        Rational entry = 0;
        for (int j : support) {
            const auto& t = tableau_[i][static_cast<std::size_t>(j)];
            if (sgn(t) != 0) entry += t;
        }
        tableau_[i].push_back(std::move(entry));
    }
    // Reduced cost of the new column equals x(row) - rhs.
    Rational r = -rhs;
    for (int j : support) r += reduced_[static_cast<std::size_t>(j)];
    reduced_.push_back(std::move(r));
    row_rhs_.push_back(rhs);
}

void CoveringLp::pivot(std::size_t row, std::size_t col) {
    auto& prow = tableau_[row];
    const Rational inv = 1 / prow[col];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < prow.size(); ++k) {
        if (sgn(prow[k]) != 0) {
            prow[k] *= inv;
            nz.push_back(k);
        }
    }
    rhs_[row] *= inv;

    Rational f;
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
        if (i == row) continue;
        auto& r = tableau_[i];
        if (sgn(r[col]) == 0) continue;
        f = r[col];
        for (std::size_t k : nz) r[k] -= f * prow[k];
        rhs_[i] -= f * rhs_[row];
    }
    if (sgn(reduced_[col]) != 0) {
        f = reduced_[col];
        for (std::size_t k : nz) reduced_[k] -= f * prow[k];
    }
    basis_[row] = col;
    ++pivots_;
}

CoveringLp::Status CoveringLp::solve() {
    const std::size_t n = costs_.size();
    while (true) {
        // Bland: lowest-index improving column.
        std::size_t enter = reduced_.size();
        for (std::size_t j = 0; j < reduced_.size(); ++j) {
            if (sgn(reduced_[j]) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == reduced_.size()) return Status::Optimal;

        std::size_t leave = n;
        Rational best;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = tableau_[i][enter];
            if (sgn(a) <= 0) continue;
            Rational ratio = rhs_[i] / a;
            if (leave == n || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                leave = i;
                best = std::move(ratio);
            }
        }
        // Dual unbounded means the covering system has no solution.
        if (leave == n) return Status::Infeasible;
        pivot(leave, enter);
    }
}

std::vector<Rational> CoveringLp::primal() const {
    return {reduced_.begin(), reduced_.begin() + static_cast<std::ptrdiff_t>(costs_.size())};
}

std::vector<Rational> CoveringLp::dual() const {
    std::vector<Rational> y(row_rhs_.size(), Rational(0));
    const std::size_t n = costs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (basis_[i] >= n) y[basis_[i] - n] = rhs_[i];
    }
    return y;
}

Rational CoveringLp::value() const {
    Rational v = 0;
    for (std::size_t j = 0; j < costs_.size(); ++j) v += costs_[j] * reduced_[j];
    return v;
}

}  // namespace gtsp
