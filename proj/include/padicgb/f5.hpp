#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "padicgb/linalg.hpp"
#include "padicgb/oracle.hpp"

namespace padicgb {

/// Macaulay bound sum(|f_i| - 1) + 1 on the degree of a grevlex basis of a
/// regular sequence (after a generic change of variables, which this library
/// does not perform; the bound is exposed as the default degree cap).
inline int macaulay_bound(const std::vector<int>& degrees) {
    if (degrees.empty()) throw Error("macaulay_bound needs at least one degree");
    int b = 1;
    for (int d : degrees) b += d - 1;
    return b;
}

/// Validated input system: homogeneous generators with coefficients in the
/// valuation ring, sorted by non-decreasing degree.  The sorting permutation
/// and any pi-power rescalings are recorded so results can be expressed in
/// terms of the original generators.
struct SystemInput {
    const Field* field = nullptr;
    MonomialOrder order;
    int degree_cap = 0;
    std::vector<Polynomial<Element>> polys;  // sorted, rescaled into R
    std::vector<int> degrees;
    std::vector<int> original_index;     // polys[k] is (a rescaling of) input[original_index[k]]
    std::vector<int> rescale_exponents;  // polys[k] = pi^rescale_exponents[k] * input[...]
    int entry_precision = kInfPrec;      // minimal coefficient order after rescaling

    int size() const { return static_cast<int>(polys.size()); }

    static SystemInput create(const Field& field, std::vector<Polynomial<Element>> input,
                              int degree_cap) {
        if (input.empty()) throw Error("empty input system");
        SystemInput in;
        in.field = &field;
        in.order = input.front().order();
        in.degree_cap = degree_cap;
        std::vector<int> idx(input.size());
        for (size_t k = 0; k < input.size(); ++k) {
            idx[k] = static_cast<int>(k);
            if (input[k].is_zero()) throw ZeroPolynomial();
            if (!input[k].is_homogeneous())
                throw Error("weak Matrix-F5 input must be homogeneous (see the affine front end)");
            if (!(input[k].order() == in.order))
                throw DimensionMismatch("generators live under different monomial orders");
            if (input[k].degree() < 1) throw Error("degree-zero generators span the whole ring");
        }
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return input[a].degree() < input[b].degree();
        });
        for (int k : idx) {
            Polynomial<Element> f = input[k];
            int min_floor = kInfPrec;
            for (const auto& t : f.terms())
                min_floor = std::min(min_floor, t.second.valuation_floor());
            int rescale = 0;
            if (min_floor < 0) {
                rescale = -min_floor;
                f = f.scaled(Element::exact_int(field, field.pow(rescale)));
            }
            in.rescale_exponents.push_back(rescale);
            in.original_index.push_back(k);
            in.degrees.push_back(f.degree());
            for (const auto& t : f.terms())
                in.entry_precision = std::min(in.entry_precision, t.second.order());
            in.polys.push_back(std::move(f));
        }
        if (degree_cap < in.degrees.back())
            throw Error("degree cap is below the largest generator degree");
        return in;
    }

    static SystemInput from_rationals(const Field& field, const std::vector<PolyQ>& input,
                                      int degree_cap, int precision) {
        std::vector<Polynomial<Element>> polys;
        polys.reserve(input.size());
        for (const auto& f : input) polys.push_back(to_elements(f, field, precision));
        return create(field, std::move(polys), degree_cap);
    }
};

struct StepRecord {
    int degree = 0;
    int index = 0;  // generator count i of the step (d, i)
    int pivot_valuation_sum = 0;
    int stop_column = 0;
    bool ambiguous_stop = false;
    bool certified = true;
    int rows = 0;
    int cols = 0;
    std::vector<Signature> kept_rows;  // rows of generator `index` surviving the F5 filter
};

struct PrecisionReport {
    std::vector<StepRecord> steps;
    int bound = 0;  // max pivot-valuation sum: prec_MF5 for mf5 runs, prec_Mac for matrix runs
    bool bound_certified = true;
    int entry_precision = kInfPrec;
    int realized_max_loss = 0;
    double realized_mean_loss = 0.0;
};

enum class GbMethod { WeakMF5, WeakMatrix };

/// Approximate minimal D-Groebner basis with its coordinate matrix: for every
/// basis element k, basis[k] = sum_j coordinates[k][j] * input[j] holds at the
/// recorded output precision (input in its original order and scaling).
struct GroebnerResult {
    const Field* field = nullptr;
    MonomialOrder order;
    GbMethod method = GbMethod::WeakMF5;
    int degree_cap = 0;
    bool minimal = true;
    std::vector<Polynomial<Element>> basis;
    std::vector<std::vector<Polynomial<Element>>> coordinates;
    PrecisionReport report;
    std::vector<std::string> notes;

    int min_coefficient_order() const {
        int m = kInfPrec;
        for (const auto& g : basis)
            for (const auto& t : g.terms()) m = std::min(m, t.second.order());
        return m;
    }
};

/// sum_j coords[j] * F[j]
inline Polynomial<Element> combine(const std::vector<Polynomial<Element>>& F,
                                   const std::vector<Polynomial<Element>>& coords) {
    Polynomial<Element> acc = Polynomial<Element>::zero(F.front().order());
    for (size_t j = 0; j < F.size(); ++j) acc = acc + F[j] * coords[j];
    return acc;
}

namespace f5_detail {

struct Row {
    Polynomial<Element> poly;
    Signature sig;
    std::vector<Polynomial<Element>> coords;
};

struct CompletedSet {
    std::vector<Row> rows;  // distinct certified leading monomials, decreasing
    std::set<Monomial> lms;
};

inline LabeledMatrix build_matrix(const Field& field, const MonomialOrder& order,
                                  const std::vector<Monomial>& columns,
                                  const std::map<Monomial, int>& column_index,
                                  const std::vector<Row>& rows) {
    LabeledMatrix m;
    m.field = &field;
    m.columns = columns;
    m.entries.assign(rows.size(),
                     std::vector<Element>(columns.size(), Element::exact_zero(field)));
    for (size_t r = 0; r < rows.size(); ++r) {
        for (const auto& t : rows[r].poly.terms())
            m.entries[r][column_index.at(t.first)] = t.second;
        m.signatures.push_back(rows[r].sig);
        m.coords.push_back(rows[r].coords);
    }
    (void)order;
    return m;
}

/// The Macaulay matrix Mac_d(f_1..f_i): one row x^a * f_j for every j <= i and
/// every monomial x^a of degree d - |f_j|, written in the degree-d basis.
inline std::vector<Row> macaulay_rows(const SystemInput& in, int d, int upto_i) {
    std::vector<Row> rows;
    int n = in.order.nvars;
    for (int j = 0; j < upto_i; ++j) {
        int rem = d - in.degrees[j];
        if (rem < 0) continue;
        for (const auto& a : monomials_of_degree(n, rem, in.order)) {
            Row r;
            r.poly = in.polys[j].times_monomial(a);
            r.sig = {j + 1, a};
            r.coords.assign(in.size(), Polynomial<Element>::zero(in.order));
            r.coords[j] = Polynomial<Element>::term(in.order, a, Element::exact_int(*in.field, 1));
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

}  // namespace f5_detail

/// Macaulay matrix of the (already sorted) system at degree d, rows labeled by
/// (generator, multiplier), columns the degree-d monomials in decreasing order.
inline LabeledMatrix macaulay_matrix(const SystemInput& in, int d) {
    auto columns = monomials_of_degree(in.order.nvars, d, in.order);
    std::map<Monomial, int> column_index;
    for (size_t c = 0; c < columns.size(); ++c) column_index[columns[c]] = static_cast<int>(c);
    auto rows = f5_detail::macaulay_rows(in, d, in.size());
    return f5_detail::build_matrix(*in.field, in.order, columns, column_index, rows);
}

namespace f5_detail {

inline GroebnerResult run_weak_engine(const SystemInput& in, GbMethod method) {
    const Field& field = *in.field;
    const MonomialOrder& order = in.order;
    const int n = order.nvars;
    const int s = in.size();
    const int D = in.degree_cap;

    // completed[(d,i)]: echelon basis of Im(Mac_d(f_1..f_i)) after completion
    std::map<std::pair<int, int>, CompletedSet> completed;

    struct BasisEntry {
        Polynomial<Element> poly;
        Monomial lm;
        std::vector<Polynomial<Element>> coords;
    };
    std::vector<BasisEntry> G;
    auto lm_is_new = [&](const Monomial& lm) {
        for (const auto& g : G)
            if (g.lm.divides(lm)) return false;
        return true;
    };

    PrecisionReport report;
    report.entry_precision = in.entry_precision;

    for (int d = 0; d <= D; ++d) {
        auto columns = monomials_of_degree(n, d, order);
        std::map<Monomial, int> column_index;
        for (size_t c = 0; c < columns.size(); ++c)
            column_index[columns[c]] = static_cast<int>(c);

        // F5-filtered rows, accumulated over i in their unechelonized form
        std::vector<Row> filtered;
        for (int i = 1; i <= s; ++i) {
            StepRecord step;
            step.degree = d;
            step.index = i;
            step.cols = static_cast<int>(columns.size());

            int rem = d - in.degrees[i - 1];
            if (rem >= 0) {
                const CompletedSet* prev = nullptr;
                auto it = completed.find({rem, i - 1});
                if (it != completed.end()) prev = &it->second;
                for (const auto& a : monomials_of_degree(n, rem, order)) {
                    // F5 criterion: discard x^a f_i when x^a is already a
                    // leading monomial at degree d - d_i for f_1..f_{i-1}
                    if (prev && prev->lms.count(a)) continue;
                    Row r;
                    r.poly = in.polys[i - 1].times_monomial(a);
                    r.sig = {i, a};
                    r.coords.assign(s, Polynomial<Element>::zero(order));
                    r.coords[i - 1] =
                        Polynomial<Element>::term(order, a, Element::exact_int(field, 1));
                    step.kept_rows.push_back(r.sig);
                    filtered.push_back(std::move(r));
                }
            }

            const int expected_rows = static_cast<int>(filtered.size());

            std::vector<Row> source;
            if (method == GbMethod::WeakMF5)
                source = filtered;
            else
                source = macaulay_rows(in, d, i);
            step.rows = static_cast<int>(source.size());

            if (source.empty()) {
                completed[{d, i}] = {};
                step.stop_column = 1;
                report.steps.push_back(step);
                continue;
            }

            LabeledMatrix m = build_matrix(field, order, columns, column_index, source);
            auto [mt, ech] = row_echelon_prefix(std::move(m));
            step.pivot_valuation_sum = ech.loss_bound();
            step.stop_column = ech.stop_column;
            step.ambiguous_stop = ech.ambiguous_stop;
            // self-referential guard: the pivot-product identity needs a minor
            // of valuation strictly below the working precision
            step.certified = in.entry_precision == kInfPrec ||
                             step.pivot_valuation_sum < in.entry_precision;
            report.steps.push_back(step);

            const int npiv = static_cast<int>(ech.pivots.size());
            const int needed = expected_rows - npiv;
            if (needed < 0) throw StructureOrPrecisionFailure(d, i, ech.stop_column);

            // completion: fill the missing leading monomials (at or beyond the
            // stop column) with variable multiples of the degree d-1 rows
            std::map<Monomial, std::pair<const Row*, int>> fills;
            if (needed > 0) {
                auto prev_it = completed.find({d - 1, i});
                if (prev_it != completed.end()) {
                    for (const auto& p : prev_it->second.rows) {
                        for (int v = 0; v < n; ++v) {
                            Monomial lm = p.poly.leading_monomial() * Monomial::variable(n, v);
                            int col = column_index.at(lm);
                            if (col + 1 < ech.stop_column) continue;
                            if (!fills.count(lm)) fills[lm] = {&p, v};
                        }
                    }
                }
                if (static_cast<int>(fills.size()) != needed)
                    throw StructureOrPrecisionFailure(d, i, ech.stop_column);
            }

            CompletedSet result;
            for (int r = 0; r < npiv; ++r) {
                Row row;
                row.poly = mt.row_polynomial(r, order);
                row.sig = mt.signatures[r];
                row.coords = mt.coords[r];
                result.lms.insert(columns[ech.pivots[r].column]);
                result.rows.push_back(std::move(row));
            }
            for (const auto& [lm, src] : fills) {
                Monomial xk = Monomial::variable(n, src.second);
                Row row;
                row.poly = src.first->poly.times_monomial(xk);
                row.sig = {src.first->sig.generator, src.first->sig.multiplier * xk};
                row.coords.reserve(s);
                for (const auto& c : src.first->coords) row.coords.push_back(c.times_monomial(xk));
                result.lms.insert(lm);
                result.rows.push_back(std::move(row));
            }
            std::sort(result.rows.begin(), result.rows.end(), [&](const Row& a, const Row& b) {
                return order.compare(a.poly.leading_monomial(), b.poly.leading_monomial()) > 0;
            });

            for (const auto& row : result.rows) {
                const Monomial& lm = row.poly.leading_monomial();
                if (lm_is_new(lm)) G.push_back({row.poly, lm, row.coords});
            }
            completed[{d, i}] = std::move(result);
        }
    }

    std::sort(G.begin(), G.end(), [&](const BasisEntry& a, const BasisEntry& b) {
        int da = a.lm.degree(), db = b.lm.degree();
        if (da != db) return da < db;
        return order.compare(a.lm, b.lm) > 0;
    });

    GroebnerResult out;
    out.field = &field;
    out.order = order;
    out.method = method;
    out.degree_cap = D;
    out.report = std::move(report);

    long long loss_count = 0;
    double loss_sum = 0.0;
    for (auto& g : G) {
        // express coordinates against the original, unscaled, unsorted input
        std::vector<Polynomial<Element>> coords(s, Polynomial<Element>::zero(order));
        for (int k = 0; k < s; ++k) {
            Polynomial<Element> c = g.coords[k];
            if (in.rescale_exponents[k] != 0)
                c = c.scaled(Element::exact_int(field, field.pow(in.rescale_exponents[k])));
            coords[in.original_index[k]] = std::move(c);
        }
        for (const auto& t : g.poly.terms()) {
            if (t.second.order() == kInfPrec || in.entry_precision == kInfPrec) continue;
            int loss = std::max(0, in.entry_precision - t.second.order());
            out.report.realized_max_loss = std::max(out.report.realized_max_loss, loss);
            loss_sum += loss;
            ++loss_count;
        }
        out.basis.push_back(std::move(g.poly));
        out.coordinates.push_back(std::move(coords));
    }
    if (loss_count > 0) out.report.realized_mean_loss = loss_sum / loss_count;

    out.report.bound = 0;
    out.report.bound_certified = true;
    for (const auto& st : out.report.steps) {
        out.report.bound = std::max(out.report.bound, st.pivot_valuation_sum);
        if (!st.certified) out.report.bound_certified = false;
    }
    return out;
}

}  // namespace f5_detail

/// The weak Matrix-F5 algorithm: for each (d, i) the F5-filtered Macaulay
/// matrix is echelonized up to the first column with no certifiable pivot and
/// completed with variable multiples of the degree d-1 echelon basis.  Fails
/// with a single signal when completion is impossible (the causes are not
/// distinguishable).
inline GroebnerResult weak_mf5(const SystemInput& in) {
    return f5_detail::run_weak_engine(in, GbMethod::WeakMF5);
}

/// Precision-lean variant: pivots are sought on the full Macaulay matrix
/// instead of the filtered one, lowering the certified loss bound to the
/// Macaulay precision at the cost of more elimination work.
inline GroebnerResult weak_matrix(const SystemInput& in) {
    return f5_detail::run_weak_engine(in, GbMethod::WeakMatrix);
}

struct PrecBounds {
    int prec_mf5 = 0;
    bool mf5_certified = false;
    int prec_mac = 0;
    bool mac_certified = false;
};

/// Sufficient-precision bounds from the pivot-valuation sums of both engines.
inline PrecBounds prec_bounds(const SystemInput& in) {
    PrecBounds b;
    GroebnerResult r1 = weak_mf5(in);
    b.prec_mf5 = r1.report.bound;
    b.mf5_certified = r1.report.bound_certified;
    GroebnerResult r2 = weak_matrix(in);
    b.prec_mac = r2.report.bound;
    b.mac_certified = r2.report.bound_certified;
    return b;
}

/// Bounds for an exact rational system: computed at a high finite precision,
/// doubled until the self-referential certification succeeds.
inline PrecBounds prec_bounds_exact(const Field& field, const std::vector<PolyQ>& F,
                                    int degree_cap) {
    for (int prec = 64; prec <= 1024; prec *= 2) {
        SystemInput in = SystemInput::from_rationals(field, F, degree_cap, prec);
        PrecBounds b = prec_bounds(in);
        if (b.mf5_certified && b.mac_certified) return b;
    }
    throw Error("precision bounds could not be certified at any tried precision");
}

inline int prec_mf5(const SystemInput& in) { return weak_mf5(in).report.bound; }
inline int prec_mac(const SystemInput& in) { return weak_matrix(in).report.bound; }

/// Affine front end: runs the homogeneous engine on the top-degree components
/// and transports the coordinates back onto the full generators.  Requires an
/// order refining total degree; homogeneous inputs delegate unchanged.
inline GroebnerResult affine_weak_mf5(const Field& field,
                                      const std::vector<Polynomial<Element>>& F, int degree_cap,
                                      GbMethod method = GbMethod::WeakMF5) {
    if (F.empty()) throw Error("empty input system");
    const MonomialOrder& order = F.front().order();
    if (!order.refines_degree())
        throw Error("the affine front end requires a monomial order refining total degree");
    bool homogeneous = true;
    for (const auto& f : F)
        if (!f.is_homogeneous()) homogeneous = false;
    if (homogeneous) {
        SystemInput in = SystemInput::create(field, F, degree_cap);
        return method == GbMethod::WeakMF5 ? weak_mf5(in) : weak_matrix(in);
    }
    std::vector<Polynomial<Element>> tops, tails;
    tops.reserve(F.size());
    tails.reserve(F.size());
    for (const auto& f : F) {
        if (f.is_zero()) throw ZeroPolynomial();
        tops.push_back(f.top_component());
        int d = f.degree();
        std::vector<Polynomial<Element>::Term> low;
        for (const auto& t : f.terms())
            if (t.first.degree() < d) low.push_back(t);
        tails.push_back(Polynomial<Element>(order, std::move(low)));
    }
    SystemInput in = SystemInput::create(field, tops, degree_cap);
    GroebnerResult hres = method == GbMethod::WeakMF5 ? weak_mf5(in) : weak_matrix(in);

    // g_k = sum_j coords[k][j] * f_j = h_k + sum_j coords[k][j] * (f_j - f_j^top):
    // the top component is taken from the homogeneous run, whose symbolic
    // zeros certify the leading monomial; only the lower-degree part needs
    // the expansion.
    GroebnerResult out = hres;
    out.basis.clear();
    for (size_t k = 0; k < hres.basis.size(); ++k) {
        Polynomial<Element> g = hres.basis[k];
        for (size_t j = 0; j < F.size(); ++j) g = g + hres.coordinates[k][j] * tails[j];
        if (!(g.leading_monomial() == hres.basis[k].leading_monomial()))
            throw LiftVerificationFailure(
                "affine combination changed a leading monomial; precision too low");
        out.basis.push_back(std::move(g));
    }
    return out;
}

}  // namespace padicgb
