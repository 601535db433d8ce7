#include "excess/recurrence.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "excess/config.hpp"

namespace excess {

namespace {

long pair_count(int n) { return static_cast<long>(n) * (n - 1) / 2; }

}  // namespace

ConnectedCountTable::ConnectedCountTable(int n_max, int m_max) : n_max_(n_max), m_max_(m_max) {
    if (n_max < 1 || m_max < 0) throw std::invalid_argument("ConnectedCountTable: bad bounds");
    if (n_max > caps().max_recurrence_n)
        throw std::invalid_argument("ConnectedCountTable: n_max beyond the configured cap " +
                                    std::to_string(caps().max_recurrence_n));

    g_.resize(static_cast<size_t>(n_max) + 1);
    c_.resize(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        long pc = pair_count(n);
        int width = static_cast<int>(std::min<long>(pc, m_max)) + 1;
        auto& grow = g_[static_cast<size_t>(n)];
        grow.resize(static_cast<size_t>(width));
        grow[0] = 1;
        // binom(pc, m) built incrementally: * (pc - m + 1) / m
        for (int m = 1; m < width; ++m) {
            grow[static_cast<size_t>(m)] = grow[static_cast<size_t>(m - 1)] * (pc - m + 1);
            mpz_divexact_ui(grow[static_cast<size_t>(m)].get_mpz_t(),
                            grow[static_cast<size_t>(m)].get_mpz_t(),
                            static_cast<unsigned long>(m));
        }
        c_[static_cast<size_t>(n)].resize(static_cast<size_t>(width));
    }

    // binom(n-1, s-1) rows, reused across m
    std::vector<Int> choose_row;
    Int dot, term;
    for (int n = 1; n <= n_max; ++n) {
        long pc_n = pair_count(n);
        int width = static_cast<int>(std::min<long>(pc_n, m_max)) + 1;
        choose_row.assign(static_cast<size_t>(n), Int());
        for (int s = 1; s < n; ++s)
            choose_row[static_cast<size_t>(s)] =
                binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(s - 1));
        for (int m = 0; m < width; ++m) {
            Int acc = g_[static_cast<size_t>(n)][static_cast<size_t>(m)];
            for (int s = 1; s < n; ++s) {
                // c(s, j) vanishes below the tree edge count j = s - 1
                long pc_s = pair_count(s);
                long pc_rest = pair_count(n - s);
                int j_lo = static_cast<int>(std::max<long>(s - 1, m - pc_rest));
                int j_hi = static_cast<int>(std::min<long>({pc_s, static_cast<long>(m),
                                                            static_cast<long>(m_max)}));
                if (j_lo > j_hi) continue;
                dot = 0;
                const auto& cs = c_[static_cast<size_t>(s)];
                const auto& gr = g_[static_cast<size_t>(n - s)];
                for (int j = j_lo; j <= j_hi; ++j) {
                    mpz_addmul(dot.get_mpz_t(), cs[static_cast<size_t>(j)].get_mpz_t(),
                               gr[static_cast<size_t>(m - j)].get_mpz_t());
                }
                mpz_submul(acc.get_mpz_t(), dot.get_mpz_t(),
                           choose_row[static_cast<size_t>(s)].get_mpz_t());
            }
            c_[static_cast<size_t>(n)][static_cast<size_t>(m)] = acc;
        }
    }
}

const Int& ConnectedCountTable::count(int n, int m) const {
    if (n < 1 || n > n_max_) throw std::out_of_range("ConnectedCountTable: n outside table");
    if (m < 0 || m > m_max_) throw std::out_of_range("ConnectedCountTable: m outside table");
    const auto& row = c_[static_cast<size_t>(n)];
    if (static_cast<size_t>(m) >= row.size()) return zero_;
    return row[static_cast<size_t>(m)];
}

const Int& ConnectedCountTable::all_graphs(int n, int m) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("ConnectedCountTable: n outside table");
    if (m < 0 || m > m_max_) throw std::out_of_range("ConnectedCountTable: m outside table");
    const auto& row = g_[static_cast<size_t>(n)];
    if (static_cast<size_t>(m) >= row.size()) return zero_;
    return row[static_cast<size_t>(m)];
}

namespace {
std::mutex table_mutex;
std::unique_ptr<ConnectedCountTable> shared_table;
}  // namespace

Int connected_recurrence_count(int n, int m) {
    if (n < 1) throw std::invalid_argument("connected_recurrence_count: n must be >= 1");
    if (m < 0 || static_cast<long>(m) > pair_count(n))
        throw std::invalid_argument("connected_recurrence_count: m outside [0, binom(n,2)]");
    if (n > caps().max_recurrence_n)
        throw std::invalid_argument("connected_recurrence_count: n beyond the configured cap " +
                                    std::to_string(caps().max_recurrence_n));
    std::lock_guard<std::mutex> lock(table_mutex);
    if (!shared_table || shared_table->n_max() < n || shared_table->m_max() < m) {
        int new_n = std::max(n, shared_table ? shared_table->n_max() : 0);
        int new_m = std::max(m, shared_table ? shared_table->m_max() : 0);
        shared_table = std::make_unique<ConnectedCountTable>(new_n, new_m);
    }
    return shared_table->count(n, m);
}

}  // namespace excess
