#include "p1f/latin.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace p1f {

namespace {

void require(bool cond, const char* msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

const std::array<std::string, 6> kConjugateLabels = {"123", "132", "213", "231", "312", "321"};

LatinSquare::LatinSquare(int n, std::vector<int> cells) : n_(n), grid_(std::move(cells))
{
    require(n_ >= 1, "LatinSquare: order must be positive");
    require(static_cast<int>(grid_.size()) == n_ * n_, "LatinSquare: cell count mismatch");
    for (int r = 0; r < n_; ++r) {
        std::vector<char> seen(n_, 0);
        for (int c = 0; c < n_; ++c) {
            int s = at(r, c);
            require(s >= 0 && s < n_ && !seen[s], "LatinSquare: row is not a permutation");
            seen[s] = 1;
        }
    }
    for (int c = 0; c < n_; ++c) {
        std::vector<char> seen(n_, 0);
        for (int r = 0; r < n_; ++r) {
            int s = at(r, c);
            require(!seen[s], "LatinSquare: column repeats a symbol");
            seen[s] = 1;
        }
    }
}

LatinSquare LatinSquare::from_rows(const std::vector<std::vector<int>>& rows)
{
    int n = static_cast<int>(rows.size());
    std::vector<int> cells;
    cells.reserve(n * n);
    for (const auto& r : rows) {
        require(static_cast<int>(r.size()) == n, "LatinSquare: ragged rows");
        cells.insert(cells.end(), r.begin(), r.end());
    }
    return LatinSquare(n, std::move(cells));
}

LatinSquare LatinSquare::cyclic(int n)
{
    std::vector<int> cells(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) cells[r * n + c] = (r + c) % n;
    return LatinSquare(n, std::move(cells));
}

std::vector<int> LatinSquare::row(int r) const
{
    return std::vector<int>(grid_.begin() + r * n_, grid_.begin() + (r + 1) * n_);
}

bool LatinSquare::symmetric() const
{
    for (int r = 0; r < n_; ++r)
        for (int c = r + 1; c < n_; ++c)
            if (at(r, c) != at(c, r)) return false;
    return true;
}

LatinSquare from_opf(const Opf& F)
{
    require(F.complete(), "from_opf: factorisation is not complete");
    const int n = F.order();
    std::vector<int> cells(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells[i * n + j] = F.factor(i)[j];
    return LatinSquare(n, std::move(cells));
}

Opf to_opf(const LatinSquare& L)
{
    const int n = L.order();
    Opf F(n);
    for (int i = 0; i < n; ++i) F.append(OneFactor(L.row(i)));
    return F;
}

LatinSquare conjugate(const LatinSquare& L, const std::string& label)
{
    require(label.size() == 3, "conjugate: bad role label");
    int d[3];
    bool seen[3] = {false, false, false};
    for (int i = 0; i < 3; ++i) {
        d[i] = label[i] - '1';
        require(d[i] >= 0 && d[i] < 3 && !seen[d[i]], "conjugate: bad role label");
        seen[d[i]] = true;
    }
    const int n = L.order();
    std::vector<int> cells(n * n, -1);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            int e[3] = {r, c, L.at(r, c)};
            cells[e[d[0]] * n + e[d[1]]] = e[d[2]];
        }
    }
    return LatinSquare(n, std::move(cells));
}

std::vector<int> row_cycle_lengths(const LatinSquare& L, int r, int s)
{
    require(r != s, "row_cycle_lengths: rows must differ");
    const int n = L.order();
    // sigma = row_s o row_r^-1 on symbols.
    std::vector<int> rinv(n);
    for (int c = 0; c < n; ++c) rinv[L.at(r, c)] = c;
    std::vector<char> visited(n, 0);
    std::vector<int> lengths;
    for (int x = 0; x < n; ++x) {
        if (visited[x]) continue;
        int len = 0, y = x;
        do {
            visited[y] = 1;
            y = L.at(s, rinv[y]);
            ++len;
        } while (y != x);
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

bool is_row_hamiltonian(const LatinSquare& L)
{
    const int n = L.order();
    if (n == 1) return true;
    std::vector<int> rinv(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) rinv[L.at(r, c)] = c;
        for (int s = r + 1; s < n; ++s) {
            // Single cycle iff the cycle through symbol 0 has length n.
            int len = 0, y = 0;
            do {
                y = L.at(s, rinv[y]);
                ++len;
            } while (y != 0);
            if (len != n) return false;
        }
    }
    return true;
}

int nu(const LatinSquare& L)
{
    int count = 0;
    for (const auto& label : kConjugateLabels)
        if (is_row_hamiltonian(conjugate(L, label))) ++count;
    return count;
}

uint64_t transversal_count(const LatinSquare& L)
{
    const int n = L.order();
    // Columns in most-constrained-first order, chosen dynamically.
    std::vector<char> col_used(n, 0);
    uint32_t rows_used = 0, syms_used = 0;
    uint64_t total = 0;

    // count[c] of available (row,symbol) cells in column c given masks.
    auto count_free = [&](int c) {
        int k = 0;
        for (int r = 0; r < n; ++r)
            if (!((rows_used >> r) & 1) && !((syms_used >> L.at(r, c)) & 1)) ++k;
        return k;
    };

    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            ++total;
            return;
        }
        int best_col = -1, best_count = n + 1;
        for (int c = 0; c < n; ++c) {
            if (col_used[c]) continue;
            int k = count_free(c);
            if (k < best_count) {
                best_count = k;
                best_col = c;
                if (k == 0) break;
            }
        }
        if (best_count == 0) return;
        col_used[best_col] = 1;
        for (int r = 0; r < n; ++r) {
            int s = L.at(r, best_col);
            if (((rows_used >> r) & 1) || ((syms_used >> s) & 1)) continue;
            rows_used |= 1u << r;
            syms_used |= 1u << s;
            rec(depth + 1);
            rows_used &= ~(1u << r);
            syms_used &= ~(1u << s);
        }
        col_used[best_col] = 0;
    };
    rec(0);
    return total;
}

std::vector<int> train_indegree_sequence(const LatinSquare& L)
{
    const int n = L.order();
    std::vector<int> rinv(n * n);  // rinv[a*n + s] = column of symbol s in row a
    std::vector<int> cinv(n * n);  // cinv[b*n + s] = row of symbol s in column b
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) rinv[a * n + L.at(a, c)] = c;
    for (int b = 0; b < n; ++b)
        for (int r = 0; r < n; ++r) cinv[b * n + L.at(r, b)] = r;

    std::vector<int> indeg(n * n * n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int z = L.at(a, b);
            for (int c = 0; c < n; ++c) {
                int y = rinv[a * n + c];
                int x = cinv[b * n + c];
                ++indeg[(x * n + y) * n + z];
            }
        }
    }
    std::sort(indeg.begin(), indeg.end());
    return indeg;
}

std::vector<std::pair<int, int>> run_length_encode(const std::vector<int>& seq)
{
    std::vector<std::pair<int, int>> out;
    for (int v : seq) {
        if (!out.empty() && out.back().first == v)
            ++out.back().second;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

CycleInvariants cycle_invariants(const LatinSquare& L)
{
    CycleInvariants inv;
    // Row cycles of L, of the transpose (column cycles), and of the
    // (321)-conjugate (symbol cycles).
    const std::array<std::string, 3> role_conj = {"123", "213", "321"};
    for (int role = 0; role < 3; ++role) {
        LatinSquare M = conjugate(L, role_conj[role]);
        std::vector<int>& list = inv.per_role[role];
        for (int r = 0; r < M.order(); ++r) {
            for (int s = r + 1; s < M.order(); ++s) {
                std::vector<int> lens = row_cycle_lengths(M, r, s);
                list.insert(list.end(), lens.begin(), lens.end());
            }
        }
        std::sort(list.begin(), list.end());
        inv.all.insert(inv.all.end(), list.begin(), list.end());
    }
    std::sort(inv.all.begin(), inv.all.end());
    std::sort(inv.per_role.begin(), inv.per_role.end()); // multiset of lists
    return inv;
}

uint64_t p_invariant(const Opf& F)
{
    require(F.complete(), "p_invariant: factorisation is not complete");
    const int n = F.order();
    if (!is_perfect(F)) throw std::invalid_argument("p_invariant: factorisation is not perfect");

    unsigned __int128 total = 0;
    std::vector<int> pos_u(n), pos_v(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> fj_inv(n);
        for (int j = i + 1; j < n; ++j) {
            // Positions along the cycle f_i u f_j.
            const OneFactor& fi = F.factor(i);
            const OneFactor& fj = F.factor(j);
            for (int t = 0; t < n; ++t) fj_inv[fj[t]] = t;
            int u = 0;
            for (int k = 0; k < n; ++k) {
                pos_u[u] = 2 * k;
                int v = fi[u];
                pos_v[v] = 2 * k + 1;
                u = fj_inv[v];
            }
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const OneFactor& fk = F.factor(k);
                unsigned __int128 prod = 1;
                for (int t = 0; t < n; ++t) {
                    int d = pos_u[t] - pos_v[fk[t]];
                    if (d < 0) d = -d;
                    int dist = std::min(d, 2 * n - d);
                    prod *= static_cast<unsigned>(dist);
                }
                total += prod;
            }
        }
    }
    if (total > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("p_invariant: value exceeds 64 bits");
    return static_cast<uint64_t>(total);
}

InvariantRecord invariant_record(const LatinSquare& L)
{
    InvariantRecord rec;
    rec.nu = nu(L);
    rec.transversals = transversal_count(L);
    rec.train_indegrees = run_length_encode(train_indegree_sequence(L));
    rec.cycles = cycle_invariants(L);
    return rec;
}

CanonicalForm canonical_form(const LatinSquare& L, ColourMode mode)
{
    return canonical_form(to_opf(L), mode);
}

uint64_t autotopism_group_order(const LatinSquare& L)
{
    return automorphism_group_order(to_opf(L), ColourMode::LsIsotopy);
}

uint64_t autoparatopism_group_order(const LatinSquare& L)
{
    return automorphism_group_order(to_opf(L), ColourMode::LsSpecies);
}

bool is_isotopic(const LatinSquare& A, const LatinSquare& B)
{
    if (A.order() != B.order()) return false;
    return canonical_form(A, ColourMode::LsIsotopy) == canonical_form(B, ColourMode::LsIsotopy);
}

bool same_species(const LatinSquare& A, const LatinSquare& B)
{
    if (A.order() != B.order()) return false;
    return canonical_form(A, ColourMode::LsSpecies) == canonical_form(B, ColourMode::LsSpecies);
}

LatinSquare apply_isotopism(const LatinSquare& L, const std::vector<int>& alpha,
                            const std::vector<int>& beta, const std::vector<int>& gamma)
{
    const int n = L.order();
    std::vector<int> cells(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) cells[alpha[r] * n + beta[c]] = gamma[L.at(r, c)];
    return LatinSquare(n, std::move(cells));
}

} // namespace p1f
