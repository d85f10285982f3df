#include "roofwire/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace roofwire {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Square assignment problem in pred-major layout. The shorter side is
/// padded with zero-cost dummy rows or columns up to size.
struct SquareProblem {
    int size = 0;
    int preds = 0;  // real rows
    int gts = 0;    // real cols
    std::vector<double> cost;  // size*size, row-major, dummies = 0

    double at(int i, int j) const {
        return cost[static_cast<std::size_t>(i) * size + j];
    }
};

SquareProblem make_square(const SimilarityMatrix& m) {
    SquareProblem sp;
    sp.preds = m.rows;
    sp.gts = m.cols;
    sp.size = std::max(m.rows, m.cols);
    sp.cost.assign(static_cast<std::size_t>(sp.size) * sp.size, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            sp.cost[static_cast<std::size_t>(i) * sp.size + j] = m(i, j);
        }
    }
    return sp;
}

/// Shortest-augmenting-path assignment (Kuhn with potentials) on a square
/// matrix. Fills col_to_row and the dual potentials; deterministic, ties in
/// path selection resolve to the lowest column index.
void solve_square(const SquareProblem& sp, std::vector<int>& col_to_row,
                  std::vector<double>& u, std::vector<double>& v) {
    const int n = sp.size;
    u.assign(static_cast<std::size_t>(n) + 1, 0.0);
    v.assign(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = sp.at(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    col_to_row.assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j) {
        col_to_row[static_cast<std::size_t>(j - 1)] = p[static_cast<std::size_t>(j)] - 1;
    }
}

/// Resolves optimal-cost ties to the lexicographically smallest pair list.
/// Works on the subgraph of (near-)zero reduced-cost edges, where every
/// perfect matching attains the optimal total; greedily fixes each real pred
/// row to its smallest feasible ground-truth column, preferring any real
/// column over staying unmatched.
class TieRefiner {
public:
    TieRefiner(const SquareProblem& sp, const std::vector<char>& tight,
               std::vector<int> row_to_col, std::vector<int> col_to_row)
        : sp_(sp),
          tight_(tight),
          row_to_col_(std::move(row_to_col)),
          col_to_row_(std::move(col_to_row)),
          decided_(static_cast<std::size_t>(sp.size), 0) {}

    void run() {
        for (int i = 0; i < sp_.preds; ++i) {
            if (try_real_columns(i)) continue;
            // No real column feasible; the row keeps a dummy column, which
            // exists because the current matching is perfect.
            decided_[static_cast<std::size_t>(i)] = 2;
        }
    }

    const std::vector<int>& row_to_col() const { return row_to_col_; }

private:
    bool tight_at(int i, int j) const {
        return tight_[static_cast<std::size_t>(i) * sp_.size + j] != 0;
    }

    // Candidate columns for a row under current decisions.
    bool allowed(int i, int j) const {
        if (!tight_at(i, j)) return false;
        switch (decided_[static_cast<std::size_t>(i)]) {
            case 1: return j == row_to_col_[static_cast<std::size_t>(i)];
            case 2: return j >= sp_.gts;  // restricted to dummy columns
            default: return true;
        }
    }

    bool try_real_columns(int i) {
        for (int j = 0; j < sp_.gts; ++j) {
            if (!tight_at(i, j)) continue;
            if (force(i, j)) {
                decided_[static_cast<std::size_t>(i)] = 1;
                return true;
            }
        }
        return false;
    }

    // Attempts to rewire the current perfect matching so that row i takes
    // column j; reverts on failure.
    bool force(int i, int j) {
        if (row_to_col_[static_cast<std::size_t>(i)] == j) return true;
        const std::vector<int> saved_rc = row_to_col_;
        const std::vector<int> saved_cr = col_to_row_;

        const int old_col = row_to_col_[static_cast<std::size_t>(i)];
        const int evicted = col_to_row_[static_cast<std::size_t>(j)];
        row_to_col_[static_cast<std::size_t>(i)] = j;
        col_to_row_[static_cast<std::size_t>(j)] = i;
        if (old_col >= 0) col_to_row_[static_cast<std::size_t>(old_col)] = -1;

        bool ok = true;
        if (evicted >= 0 && evicted != i) {
            row_to_col_[static_cast<std::size_t>(evicted)] = -1;
            std::vector<char> visited(static_cast<std::size_t>(sp_.size), 0);
            visited[static_cast<std::size_t>(j)] = 1;  // j is taken by i now
            ok = augment(evicted, visited);
        }
        if (!ok) {
            row_to_col_ = saved_rc;
            col_to_row_ = saved_cr;
        }
        return ok;
    }

    bool augment(int row, std::vector<char>& visited) {
        for (int j = 0; j < sp_.size; ++j) {
            if (visited[static_cast<std::size_t>(j)] || !allowed(row, j)) continue;
            visited[static_cast<std::size_t>(j)] = 1;
            const int other = col_to_row_[static_cast<std::size_t>(j)];
            if (other < 0 || augment(other, visited)) {
                row_to_col_[static_cast<std::size_t>(row)] = j;
                col_to_row_[static_cast<std::size_t>(j)] = row;
                return true;
            }
        }
        return false;
    }

    const SquareProblem& sp_;
    const std::vector<char>& tight_;
    std::vector<int> row_to_col_;
    std::vector<int> col_to_row_;
    std::vector<char> decided_;  // 0 = free, 1 = fixed column, 2 = dummy only
};

}  // namespace

MatchResult hungarian_assign(const SimilarityMatrix& cost) {
    if (cost.rows <= 0 || cost.cols <= 0) {
        throw InvalidArgument("cost matrix must be non-empty");
    }
    double max_abs = 0.0;
    for (const double c : cost.values) {
        if (!std::isfinite(c)) {
            throw InvalidArgument("cost matrix entries must be finite");
        }
        max_abs = std::max(max_abs, std::abs(c));
    }

    const SquareProblem sp = make_square(cost);
    std::vector<int> col_to_row;
    std::vector<double> u, v;
    solve_square(sp, col_to_row, u, v);

    std::vector<int> row_to_col(static_cast<std::size_t>(sp.size), -1);
    for (int j = 0; j < sp.size; ++j) {
        row_to_col[static_cast<std::size_t>(col_to_row[static_cast<std::size_t>(j)])] = j;
    }

    // Optimal assignments live on tight edges; a real row with a single
    // tight column has no alternative in any optimum.
    const double eps = 1e-9 * (1.0 + max_abs);
    std::vector<char> tight(static_cast<std::size_t>(sp.size) * sp.size, 0);
    bool ambiguous = false;
    for (int i = 0; i < sp.size; ++i) {
        int options = 0;
        for (int j = 0; j < sp.size; ++j) {
            const double reduced = sp.at(i, j) - u[static_cast<std::size_t>(i) + 1] -
                                   v[static_cast<std::size_t>(j) + 1];
            if (reduced <= eps) {
                tight[static_cast<std::size_t>(i) * sp.size + j] = 1;
                if (i < sp.preds) ++options;
            }
        }
        if (i < sp.preds && options > 1) ambiguous = true;
    }
    if (ambiguous) {
        TieRefiner refiner(sp, tight, row_to_col, col_to_row);
        refiner.run();
        row_to_col = refiner.row_to_col();
    }

    MatchResult result;
    std::vector<char> gt_used(static_cast<std::size_t>(cost.cols), 0);
    for (int i = 0; i < cost.rows; ++i) {
        const int j = row_to_col[static_cast<std::size_t>(i)];
        if (j >= 0 && j < cost.cols) {
            result.pairs.push_back({i, j, cost(i, j)});
            gt_used[static_cast<std::size_t>(j)] = 1;
        } else {
            result.unmatched_preds.push_back(i);
        }
    }
    for (int j = 0; j < cost.cols; ++j) {
        if (!gt_used[static_cast<std::size_t>(j)]) result.unmatched_gts.push_back(j);
    }
    return result;
}

MatchResult match_edges(const std::vector<Segment>& preds,
                        const std::vector<Segment>& gts,
                        const SimilarityWeights& w) {
    return hungarian_assign(similarity_matrix(preds, gts, w));
}

SoftLabels soft_confidence_labels(std::size_t num_preds, const MatchResult& match,
                                  const SimilarityMatrix& sims) {
    SoftLabels labels;
    labels.g_con.assign(num_preds, 0.0);
    for (const auto& pair : match.pairs) {
        if (pair.pred < 0 || static_cast<std::size_t>(pair.pred) >= num_preds ||
            pair.gt < 0 || pair.gt >= sims.cols || pair.pred >= sims.rows) {
            throw InvalidArgument("match pair index out of range");
        }
        const double s = sims(pair.pred, pair.gt);
        labels.g_con[static_cast<std::size_t>(pair.pred)] = s < 1.0 ? 1.0 - s : 0.0;
    }
    return labels;
}

SoftLabels hard_confidence_labels(std::size_t num_preds, const MatchResult& match) {
    SoftLabels labels;
    labels.g_con.assign(num_preds, 0.0);
    for (const auto& pair : match.pairs) {
        if (pair.pred < 0 || static_cast<std::size_t>(pair.pred) >= num_preds) {
            throw InvalidArgument("match pair index out of range");
        }
        labels.g_con[static_cast<std::size_t>(pair.pred)] = 1.0;
    }
    return labels;
}

}  // namespace roofwire
