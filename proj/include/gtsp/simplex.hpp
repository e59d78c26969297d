#pragma once

#include <cstdint>
#include <vector>

#include "gtsp/rational.hpp"

namespace gtsp {

/// Exact covering LP
///
///     min  sum_j cost_j x_j   s.t.  sum_{j in row} x_j >= rhs_row,  x >= 0
///
/// with 0/1 row coefficients and nonnegative costs. The solver runs Bland's
/// primal simplex on the dual packing problem, whose slack basis is feasible
/// from the start, so no phase one is needed. Rows can be appended between
/// solves; the current dual basis stays feasible and the next solve resumes
/// from it.
///
/// The covering solution is read off the reduced costs of the dual slacks,
/// so it is the basic solution complementary to the optimal dual basis: a
/// vertex of the covering polyhedron.
class CoveringLp {
public:
    enum class Status { Optimal, Infeasible };

    explicit CoveringLp(std::vector<Rational> costs);

    /// Adds the row sum_{j in support} x_j >= rhs. Support entries must be
    /// distinct variable indices.
    void add_row(const std::vector<int>& support, const Rational& rhs);

    Status solve();

    int variable_count() const { return static_cast<int>(costs_.size()); }
    int row_count() const { return static_cast<int>(row_rhs_.size()); }
    std::int64_t pivot_count() const { return pivots_; }

    /// Covering solution after an Optimal solve.
    std::vector<Rational> primal() const;
    /// Dual multipliers, one per row.
    std::vector<Rational> dual() const;
    /// Optimal objective value (equal for primal and dual).
    Rational value() const;

private:
    void pivot(std::size_t row, std::size_t col);

    std::vector<Rational> costs_;
    std::vector<Rational> row_rhs_;
    // Tableau of the dual: one row per covering variable, columns are the
    // dual slacks (0..n-1) followed by one column per covering row.
    std::vector<std::vector<Rational>> tableau_;
    std::vector<Rational> rhs_;
    std::vector<Rational> reduced_;
    std::vector<std::size_t> basis_;
    std::int64_t pivots_ = 0;
};

}  // namespace gtsp
