#include "p1f/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace p1f {

namespace {

void require(bool cond, const char* msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

LatinSquare bdcls_from_first_row(const std::vector<int>& first_row, int infinity_count)
{
    const int n = static_cast<int>(first_row.size());
    const int b = infinity_count;
    require(b == 0 || b == 1, "bdcls: only b in {0,1} is determined by the first row");
    const int m = n - b;
    require(m >= 1, "bdcls: empty cyclic part");
    {
        std::vector<char> seen(n, 0);
        for (int s : first_row) {
            require(s >= 0 && s < n && !seen[s], "bdcls: first row is not a permutation");
            seen[s] = 1;
        }
    }

    auto succ = [&](int z) { return z < m ? (z + 1) % m : z; };

    std::vector<int> cells(n * n, -1);
    // Orbit of the first row under the successor map fills rows 0..m-1.
    for (int j = 0; j < n; ++j) {
        int col = j, sym = first_row[j];
        for (int i = 0; i < m; ++i) {
            int idx = i * n + col;
            require(cells[idx] == -1, "bdcls: cyclic closure clashes");
            cells[idx] = sym;
            col = succ(col);
            sym = succ(sym);
        }
    }
    // The infinity row takes the symbol missing from each column.
    if (b == 1) {
        for (int c = 0; c < n; ++c) {
            std::vector<char> seen(n, 0);
            for (int r = 0; r < m; ++r) seen[cells[r * n + c]] = 1;
            int missing = -1;
            for (int s = 0; s < n; ++s) {
                if (!seen[s]) {
                    require(missing == -1, "bdcls: cyclic closure is not Latin");
                    missing = s;
                }
            }
            cells[m * n + c] = missing;
        }
    }
    // The LatinSquare constructor rejects closures that fail to be Latin.
    return LatinSquare(n, std::move(cells));
}

bool is_odd_prime(int p)
{
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

GeneralFactorisation ga_factorisation(int p)
{
    require(is_odd_prime(p), "ga_factorisation: p must be an odd prime");
    const int N = 2 * p;
    std::vector<std::vector<int>> mates;

    // f_i: rim pairs (i+j, i-j) on both parts plus the spoke (i,1)(i,2).
    for (int i = 0; i < p; ++i) {
        std::vector<int> m(N, -1);
        for (int j = 1; j <= (p - 1) / 2; ++j) {
            for (int part = 1; part <= 2; ++part) {
                int a = ga_vertex(i + j, part, p);
                int b = ga_vertex(i - j, part, p);
                m[a] = b;
                m[b] = a;
            }
        }
        int a = ga_vertex(i, 1, p), b = ga_vertex(i, 2, p);
        m[a] = b;
        m[b] = a;
        mates.push_back(std::move(m));
    }
    // g_i: the cross matching j -> i+j.
    for (int i = 1; i < p; ++i) {
        std::vector<int> m(N, -1);
        for (int j = 0; j < p; ++j) {
            int a = ga_vertex(j, 1, p), b = ga_vertex(i + j, 2, p);
            m[a] = b;
            m[b] = a;
        }
        mates.push_back(std::move(m));
    }
    return GeneralFactorisation(N, std::move(mates));
}

LatinSquare root_square(const GeneralFactorisation& F, int root_vertex)
{
    const int N = F.vertex_count();
    require(root_vertex >= 0 && root_vertex < N, "root_square: root out of range");
    if (!general_is_perfect(F))
        throw std::invalid_argument("root_square: factorisation is not perfect");

    // factor through each edge
    std::vector<int> factor_of(N * N, -1);
    for (int k = 0; k < F.size(); ++k) {
        const auto& m = F.factor_mates(k);
        for (int v = 0; v < N; ++v) factor_of[v * N + m[v]] = k;
    }

    // index := position among V \ {root}, ascending
    std::vector<int> index(N, -1), vertex(N - 1);
    int idx = 0;
    for (int v = 0; v < N; ++v) {
        if (v == root_vertex) continue;
        index[v] = idx;
        vertex[idx] = v;
        ++idx;
    }

    const int n = N - 1;
    std::vector<int> cells(n * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) {
                cells[a * n + b] = a;
                continue;
            }
            int h = factor_of[vertex[a] * N + vertex[b]];
            int k = F.factor_mates(h)[root_vertex];
            cells[a * n + b] = index[k];
        }
    }
    return LatinSquare(n, std::move(cells));
}

LatinSquare l_p_square(int p)
{
    require(is_odd_prime(p), "l_p_square: p must be an odd prime");
    const int n = 2 * p - 1;
    auto mod = [&](int x) { return (x % p + p) % p; };
    // Index of (x,z) with the root (-1,2) removed: (x,1) -> x, (x,2) -> p+x.
    auto at = [&](int x, int z) { return mod(x) + p * (z - 1); };

    std::vector<int> cells(n * n);
    for (int zr = 1; zr <= 2; ++zr) {
        for (int xr = 0; xr < p; ++xr) {
            if (zr == 2 && xr == p - 1) continue; // the root
            for (int zc = 1; zc <= 2; ++zc) {
                for (int xc = 0; xc < p; ++xc) {
                    if (zc == 2 && xc == p - 1) continue;
                    int sym;
                    if (xr == xc && zr == zc)
                        sym = at(xr, zr);
                    else if (zr == zc)
                        sym = mod(xr + xc + 2) != 0 ? at(xr + xc + 1, 2) : at(-1, 1);
                    else if (xr == xc)
                        sym = at(2 * xr + 1, 2);
                    else if (zr == 1)
                        sym = at(xr - xc - 1, 1);
                    else
                        sym = at(xc - xr - 1, 1);
                    cells[at(xr, zr) * n + at(xc, zc)] = sym;
                }
            }
        }
    }
    return LatinSquare(n, std::move(cells));
}

GaTheoremReport verify_ga_theorem(int p)
{
    require(is_odd_prime(p), "verify_ga_theorem: p must be an odd prime");
    GaTheoremReport rep;
    rep.p = p;

    LatinSquare L = l_p_square(p);
    rep.nu_value = nu(L);
    rep.nu_matches = (p == 3) ? rep.nu_value == 6 : rep.nu_value == 2;

    if (p >= 5) {
        const int n = L.order();
        auto mod = [&](int x) { return (x % p + p) % p; };
        auto at = [&](int x, int z) { return mod(x) + p * (z - 1); };
        // Witness entries in rows (0,1) and (0,2).
        const int r1 = at(0, 1), r2 = at(0, 2);
        struct Entry { int row, col, sym; };
        const std::vector<Entry> entries = {
            {r1, at(0, 1), at(0, 1)},  {r2, at(0, 1), at(1, 2)},
            {r1, at(0, 2), at(1, 2)},  {r2, at(0, 2), at(0, 2)},
            {r1, at(-1, 1), at(0, 2)}, {r2, at(-1, 1), at(-2, 1)},
            {r1, at(1, 2), at(-2, 1)}, {r2, at(1, 2), at(2, 2)},
            {r1, at(1, 1), at(2, 2)},  {r2, at(1, 1), at(0, 1)},
        };
        rep.triples_present = true;
        for (const auto& e : entries)
            if (L.at(e.row, e.col) != e.sym) rep.triples_present = false;

        // Trace the row cycle through column (0,1) between those two rows.
        std::vector<int> r1inv(n);
        for (int c = 0; c < n; ++c) r1inv[L.at(r1, c)] = c;
        int start = L.at(r1, at(0, 1));
        int len = 0, y = start;
        do {
            y = L.at(r2, r1inv[y]);
            ++len;
        } while (y != start && len <= n);
        rep.short_cycle_found = (len == 5);
    }
    return rep;
}

} // namespace p1f
