#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padicgb/polynomial.hpp"

namespace padicgb {

/// Row label of a Macaulay-style matrix: the row holds x^multiplier * f_generator.
struct Signature {
    int generator = 0;  // 1-based index of the input polynomial
    Monomial multiplier;
};

/// Dense matrix over a finite-precision CDVR whose rows carry signatures and
/// whose columns are labeled by monomials (strictly decreasing).  Rows may
/// additionally carry coordinate labels expressing them as combinations of
/// the input generators.
struct LabeledMatrix {
    const Field* field = nullptr;
    std::vector<Monomial> columns;                            // may be empty for plain matrices
    std::vector<std::vector<Element>> entries;                // nrows x ncols
    std::vector<Signature> signatures;                        // per row (optional)
    std::vector<std::vector<Polynomial<Element>>> coords;     // per row (optional)

    int nrows() const { return static_cast<int>(entries.size()); }
    int ncols() const { return entries.empty() ? 0 : static_cast<int>(entries[0].size()); }
    bool tracks_coords() const { return !coords.empty(); }

    static LabeledMatrix plain(const Field& f, std::vector<std::vector<Element>> rows) {
        LabeledMatrix m;
        m.field = &f;
        m.entries = std::move(rows);
        return m;
    }

    /// Row i read back as a polynomial in the column basis; entries that are
    /// exactly zero contribute no term, ball entries are kept.
    Polynomial<Element> row_polynomial(int i, const MonomialOrder& order) const {
        std::vector<Polynomial<Element>::Term> terms;
        for (int j = 0; j < ncols(); ++j)
            if (!entries[i][j].is_exact_zero()) terms.push_back({columns[j], entries[i][j]});
        return Polynomial<Element>(order, std::move(terms));
    }

    std::string dump(const std::vector<std::string>& vars = {}) const {
        std::vector<std::vector<std::string>> cells(nrows());
        std::vector<size_t> width(ncols(), 0);
        for (int i = 0; i < nrows(); ++i) {
            cells[i].resize(ncols());
            for (int j = 0; j < ncols(); ++j) {
                cells[i][j] = entries[i][j].to_string();
                width[j] = std::max(width[j], cells[i][j].size());
            }
        }
        std::ostringstream os;
        if (!columns.empty() && !vars.empty()) {
            for (int j = 0; j < ncols(); ++j)
                os << (j ? "  " : "") << columns[j].to_string(vars);
            os << "\n";
        }
        for (int i = 0; i < nrows(); ++i) {
            os << "[";
            for (int j = 0; j < ncols(); ++j)
                os << (j ? "  " : "") << std::setw(static_cast<int>(width[j])) << cells[i][j];
            os << "]\n";
        }
        return os.str();
    }
};

struct PivotInfo {
    int row;        // row position in the echelonized matrix
    int column;     // 0-based working column
    int valuation;  // certified valuation of the pivot entry
};

/// Bookkeeping of one echelon computation.  The precision-loss bound is the
/// sum of the pivot valuations, which also attains the minimal valuation of
/// the maximal minors over the pivoted columns.
struct EchelonReport {
    std::vector<PivotInfo> pivots;
    std::vector<int> permutation;  // original index of each final row
    int stop_column = 0;           // 1-based index of the first pivotless column,
                                   // ncols+1 when every column received a pivot
    bool ambiguous_stop = false;   // the stop column held entries indistinguishable from zero

    int loss_bound() const {
        int s = 0;
        for (const auto& p : pivots) s += p.valuation;
        return s;
    }
};

/// Eliminate the entry of `target` in `col` with the pivot row: writes an
/// exact zero into the target slot, and updates the remaining entries of the
/// row by L_t <- L_t - (M[t][col]/piv) * L_p, the quotient carrying the
/// precision of the division rule.  Slots where the pivot row is exactly zero
/// are untouched, so sparse rows keep their precision.
inline void pivot_eliminate(LabeledMatrix& m, int pivot_row, int target_row, int col) {
    Element& piv = m.entries[pivot_row][col];
    if (!piv.certified_valuation()) throw Error("pivot entry has no certified valuation");
    Element q = m.entries[target_row][col].div(piv);
    m.entries[target_row][col] = Element::exact_zero(*m.field);
    for (int k = col + 1; k < m.ncols(); ++k) {
        const Element& pe = m.entries[pivot_row][k];
        Element& te = m.entries[target_row][k];
        if (pe.is_exact_zero()) continue;
        te = te.sub(q.mul(pe));
    }
    if (m.tracks_coords()) {
        auto& tc = m.coords[target_row];
        const auto& pc = m.coords[pivot_row];
        for (size_t j = 0; j < tc.size(); ++j) tc[j] = tc[j] - pc[j].scaled(q);
    }
}

namespace detail {

inline std::optional<int> find_pivot(const LabeledMatrix& m, int from_row, int col,
                                     bool& saw_ball) {
    std::optional<int> best;
    int best_val = 0;
    saw_ball = false;
    for (int i = from_row; i < m.nrows(); ++i) {
        const Element& e = m.entries[i][col];
        if (e.is_ball_zero()) {
            saw_ball = true;
            continue;
        }
        auto v = e.certified_valuation();
        if (!v) continue;  // exact zero
        if (!best || *v < best_val) {
            best = i;
            best_val = *v;
        }
    }
    return best;
}

inline void swap_rows(LabeledMatrix& m, int a, int b) {
    if (a == b) return;
    std::swap(m.entries[a], m.entries[b]);
    if (!m.signatures.empty()) std::swap(m.signatures[a], m.signatures[b]);
    if (m.tracks_coords()) std::swap(m.coords[a], m.coords[b]);
}

// Shared elimination loop.  In prefix mode the computation returns at the
// first column offering no certified-nonzero pivot among the remaining rows;
// in full mode such a column is skipped when its remaining entries are all
// exactly zero and is an error when any of them is indistinguishable from
// zero (the echelon shape cannot be certified).
inline EchelonReport echelonize(LabeledMatrix& m, bool prefix) {
    EchelonReport rep;
    std::vector<int> original(m.nrows());
    for (int i = 0; i < m.nrows(); ++i) original[i] = i;
    int r = 0;
    rep.stop_column = m.ncols() + 1;
    for (int col = 0; col < m.ncols(); ++col) {
        bool saw_ball = false;
        auto piv = find_pivot(m, r, col, saw_ball);
        if (!piv) {
            if (prefix) {
                rep.stop_column = col + 1;
                rep.ambiguous_stop = saw_ball;
                break;
            }
            if (saw_ball) throw AmbiguousColumn(col + 1);
            continue;
        }
        // ties between equal minimal valuations go to the lowest original row
        int chosen = *piv;
        int val = *m.entries[chosen][col].certified_valuation();
        for (int i = r; i < m.nrows(); ++i) {
            auto v = m.entries[i][col].certified_valuation();
            if (v && *v == val && original[i] < original[chosen]) chosen = i;
        }
        swap_rows(m, r, chosen);
        std::swap(original[r], original[chosen]);
        for (int i = r + 1; i < m.nrows(); ++i)
            if (!m.entries[i][col].is_exact_zero()) pivot_eliminate(m, r, i, col);
        rep.pivots.push_back({r, col, val});
        ++r;
    }
    rep.permutation = std::move(original);
    return rep;
}

}  // namespace detail

/// Full row-echelon form (up to permutation) with valuation-minimal pivoting.
inline std::pair<LabeledMatrix, EchelonReport> row_echelon(LabeledMatrix m) {
    EchelonReport rep = detail::echelonize(m, /*prefix=*/false);
    return {std::move(m), std::move(rep)};
}

/// Row-echelon computation stopped at the first column with no certified
/// nonzero pivot; the stop column index is reported, never raised.
inline std::pair<LabeledMatrix, EchelonReport> row_echelon_prefix(LabeledMatrix m) {
    EchelonReport rep = detail::echelonize(m, /*prefix=*/true);
    return {std::move(m), std::move(rep)};
}

namespace detail {

// Fraction-free determinant (Bareiss) of an integer matrix.
inline Int det_bareiss(std::vector<std::vector<Int>> a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline Int entry_representative(const Element& e) {
    if (e.is_exact_zero()) return 0;
    if (e.shift() < 0) throw Error("matrix entry lies outside the valuation ring");
    return e.value() * e.field().pow(e.shift());
}

}  // namespace detail

/// Minimum valuation over all l x l minors taken on the first l columns of M
/// (rows chosen freely).  Used as the enumeration oracle for the pivot-product
/// identity; guarded against combinatorial blowup.
inline int min_minor_valuation(const LabeledMatrix& m, int l) {
    int n = m.nrows();
    if (l < 0 || l > n || l > m.ncols()) throw Error("invalid minor size");
    if (l == 0) return 0;
    // C(n, l) guard
    double combos = 1;
    for (int i = 0; i < l; ++i) combos *= static_cast<double>(n - i) / (i + 1);
    if (combos > 1e6) throw ResourceCapExceeded("too many minors to enumerate");

    int min_entry_order = kInfPrec;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < l; ++j) min_entry_order = std::min(min_entry_order, m.entries[i][j].order());

    long long p = m.field->p();
    int best = kInfPrec;
    std::vector<int> pick(l);
    for (int i = 0; i < l; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<Int>> sub(l, std::vector<Int>(l));
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                sub[i][j] = detail::entry_representative(m.entries[pick[i]][j]);
        Int d = detail::det_bareiss(std::move(sub));
        if (d != 0) best = std::min(best, detail::int_valuation(d, p));
        // next combination
        int i = l - 1;
        while (i >= 0 && pick[i] == n - l + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < l; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (best == kInfPrec) {
        if (min_entry_order == kInfPrec) return kInfPrec;  // all minors exactly vanish
        throw Error("minor valuations cannot be certified at the available precision");
    }
    if (best >= min_entry_order)
        throw Error("minor valuations cannot be certified at the available precision");
    return best;
}

}  // namespace padicgb
