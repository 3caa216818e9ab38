#include "graphdist/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace graphdist {

namespace {

struct Cell {
    int row;
    int col;
    std::int64_t flow;
};

class TransportSimplex {
public:
    TransportSimplex(const Matrix& cost, std::span<const std::int64_t> supply, std::span<const std::int64_t> demand)
        : c_(cost), m_(static_cast<int>(cost.rows())), n_(static_cast<int>(cost.cols())) {
        northwest_corner(supply, demand);
        double scale = 0.0;
        for (double x : cost.values()) scale = std::max(scale, std::abs(x));
        eps_ = 1e-12 * std::max(scale, 1.0);
    }

    void solve() {
        // Bland's rule cannot cycle; the cap only guards against bugs.
        const long cap = 1000L * (m_ + n_) * (m_ + n_) + 10000;
        for (long it = 0; it < cap; ++it)
            if (!pivot()) return;
        throw std::logic_error("transportation simplex did not terminate");
    }

    Matrix solution(std::int64_t total) const {
        Matrix x(m_, n_);
        for (const auto& b : basis_) x(b.row, b.col) = static_cast<double>(b.flow) / static_cast<double>(total);
        return x;
    }

private:
    const Matrix& c_;
    int m_;
    int n_;
    double eps_ = 0.0;
    std::vector<Cell> basis_;  // always m + n - 1 cells forming a spanning tree

    void northwest_corner(std::span<const std::int64_t> supply, std::span<const std::int64_t> demand) {
        std::vector<std::int64_t> s(supply.begin(), supply.end()), d(demand.begin(), demand.end());
        int i = 0, j = 0;
        while (true) {
            const std::int64_t x = std::min(s[i], d[j]);
            basis_.push_back({i, j, x});
            s[i] -= x;
            d[j] -= x;
            if (i == m_ - 1 && j == n_ - 1) break;
            if ((s[i] == 0 && i < m_ - 1) || j == n_ - 1)
                ++i;
            else
                ++j;
        }
    }

    // Tree nodes: rows 0..m-1, columns m..m+n-1.
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(m_ + n_);
        for (int k = 0; k < static_cast<int>(basis_.size()); ++k) {
            adj[basis_[k].row].push_back(k);
            adj[m_ + basis_[k].col].push_back(k);
        }
        return adj;
    }

    bool pivot() {
        const auto adj = adjacency();
        // Potentials with u_0 = 0 and u_i + v_j = c_ij on basic cells.
        std::vector<double> pot(m_ + n_, 0.0);
        std::vector<char> seen(m_ + n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            for (int k : adj[node]) {
                const int other = node < m_ ? m_ + basis_[k].col : basis_[k].row;
                if (seen[other]) continue;
                seen[other] = 1;
                pot[other] = c_(basis_[k].row, basis_[k].col) - pot[node];
                stack.push_back(other);
            }
        }

        int ei = -1, ej = -1;
        for (int i = 0; i < m_ && ei < 0; ++i)
            for (int j = 0; j < n_; ++j)
                if (c_(i, j) - pot[i] - pot[m_ + j] < -eps_) {
                    ei = i;
                    ej = j;
                    break;
                }
        if (ei < 0) return false;

        // Tree path from column node ej back to row node ei.
        std::vector<int> via(m_ + n_, -1);  // basis cell used to reach a node
        std::vector<int> from(m_ + n_, -1);
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, m_ + ej);
        seen[m_ + ej] = 1;
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            if (node == ei) break;
            for (int k : adj[node]) {
                const int other = node < m_ ? m_ + basis_[k].col : basis_[k].row;
                if (seen[other]) continue;
                seen[other] = 1;
                via[other] = k;
                from[other] = node;
                stack.push_back(other);
            }
        }
        // Walking from ei towards ej, the first cell loses flow, the next
        // gains, and so on; the entering cell gains.
        std::vector<int> cycle;
        for (int node = ei; node != m_ + ej; node = from[node]) cycle.push_back(via[node]);

        int leave = -1;
        for (std::size_t t = 0; t < cycle.size(); t += 2) {
            const Cell& cand = basis_[cycle[t]];
            if (leave < 0) {
                leave = cycle[t];
                continue;
            }
            const Cell& cur = basis_[leave];
            if (cand.flow < cur.flow ||
                (cand.flow == cur.flow && (cand.row < cur.row || (cand.row == cur.row && cand.col < cur.col))))
                leave = cycle[t];
        }
        const std::int64_t theta = basis_[leave].flow;
        for (std::size_t t = 0; t < cycle.size(); ++t) basis_[cycle[t]].flow += t % 2 == 0 ? -theta : theta;
        basis_[leave] = {ei, ej, theta};
        return true;
    }
};

}  // namespace

Matrix transport_lmo(const Matrix& cost, std::span<const std::int64_t> supply, std::span<const std::int64_t> demand) {
    if (supply.size() != cost.rows() || demand.size() != cost.cols())
        throw std::invalid_argument("marginals do not match the cost matrix");
    if (cost.rows() == 0 || cost.cols() == 0) return Matrix(cost.rows(), cost.cols());
    const std::int64_t total = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
    if (total != std::accumulate(demand.begin(), demand.end(), std::int64_t{0}))
        throw std::invalid_argument("supply and demand totals differ");
    if (std::any_of(supply.begin(), supply.end(), [](auto s) { return s < 0; }) ||
        std::any_of(demand.begin(), demand.end(), [](auto d) { return d < 0; }))
        throw std::invalid_argument("marginals must be nonnegative");
    TransportSimplex simplex(cost, supply, demand);
    simplex.solve();
    return simplex.solution(total);
}

Matrix transport_lmo(const Matrix& cost) {
    const auto m = static_cast<std::int64_t>(cost.rows());
    const auto n = static_cast<std::int64_t>(cost.cols());
    const std::int64_t l = std::lcm(m, n);
    const std::vector<std::int64_t> supply(cost.rows(), l / std::max<std::int64_t>(m, 1));
    const std::vector<std::int64_t> demand(cost.cols(), l / std::max<std::int64_t>(n, 1));
    return transport_lmo(cost, supply, demand);
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    std::vector<double> terms(a.values().size());
    for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = a.values()[k] * b.values()[k];
    return compensated_sum(terms);
}

}  // namespace graphdist
