#pragma once

#include <algorithm>
#include <vector>

#include "padicgb/polynomial.hpp"

namespace padicgb {

using PolyQ = Polynomial<Rational>;

/// Exact reduced Groebner basis together with (optionally) the coordinates of
/// each basis element in the input generators: basis[k] = sum_j coords[k][j] * F[j].
struct OracleResult {
    std::vector<PolyQ> basis;
    std::vector<std::vector<PolyQ>> coordinates;  // empty unless tracking was requested
};

struct OracleLimits {
    int max_basis = 512;
    long long max_pairs = 200000;
};

namespace oracle_detail {

struct Entry {
    PolyQ poly;
    std::vector<PolyQ> coords;
};

// Full normal form by the current list, greatest reducible term first.
// Independent of the shared reduce(): the oracle must not share elimination
// code with the finite-precision path it cross-checks.
inline Entry normal_form(Entry h, const std::vector<Entry>& basis, bool track) {
    std::vector<PolyQ::Term> out;
    while (!h.poly.is_zero()) {
        const auto& head = h.poly.terms().front();
        const Entry* red = nullptr;
        for (const auto& g : basis)
            if (!g.poly.is_zero() && g.poly.leading_monomial().divides(head.first)) {
                red = &g;
                break;
            }
        if (!red) {
            out.push_back(head);
            h.poly = h.poly.without_term(head.first);
            continue;
        }
        const auto& lt = red->poly.leading_term();
        Rational q = head.second / lt.second;
        Monomial qm = lt.first.divide_into(head.first);
        h.poly = h.poly.without_term(head.first) -
                 red->poly.without_term(lt.first).times_monomial(qm).scaled(q);
        if (track)
            for (size_t j = 0; j < h.coords.size(); ++j)
                h.coords[j] = h.coords[j] - red->coords[j].times_monomial(qm).scaled(q);
    }
    h.poly = PolyQ(h.poly.order(), std::move(out));
    return h;
}

}  // namespace oracle_detail

/// Unique reduced Groebner basis over the rationals (Buchberger, normal pair
/// selection, full inter-reduction, monic normalization).  Serves as ground
/// truth for every finite-precision computation.
inline OracleResult buchberger_reduced(const std::vector<PolyQ>& input, bool track_coords = false,
                                       const OracleLimits& limits = {}) {
    using oracle_detail::Entry;
    if (input.empty()) return {};
    const MonomialOrder order = input.front().order();
    const size_t s = input.size();

    std::vector<Entry> basis;
    auto unit_coords = [&](size_t j) {
        std::vector<PolyQ> c;
        if (!track_coords) return c;
        c.assign(s, PolyQ::zero(order));
        c[j] = PolyQ::term(order, Monomial::one(order.nvars), Rational(1));
        return c;
    };
    for (size_t j = 0; j < s; ++j) {
        if (input[j].is_zero()) continue;
        basis.push_back({input[j], unit_coords(j)});
    }
    if (basis.empty()) return {};

    struct Pair {
        int i, j;
        int lcm_degree;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
        if (a.lcm_degree != b.lcm_degree) return a.lcm_degree < b.lcm_degree;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](int k) {
        for (int i = 0; i < k; ++i) {
            Monomial lcm_m = Monomial::one(order.nvars);
            const Monomial& a = basis[i].poly.leading_monomial();
            const Monomial& b = basis[k].poly.leading_monomial();
            std::vector<int> e(order.nvars);
            for (int v = 0; v < order.nvars; ++v) e[v] = std::max(a.exponent(v), b.exponent(v));
            lcm_m = Monomial(std::move(e));
            pairs.push_back({i, k, lcm_m.degree()});
        }
        std::sort(pairs.begin(), pairs.end(), pair_less);
    };
    for (int k = 1; k < static_cast<int>(basis.size()); ++k) push_pairs(k);

    long long processed = 0;
    while (!pairs.empty()) {
        if (++processed > limits.max_pairs) throw ResourceCapExceeded("too many S-pairs");
        Pair pr = pairs.front();
        pairs.erase(pairs.begin());
        const Monomial& la = basis[pr.i].poly.leading_monomial();
        const Monomial& lb = basis[pr.j].poly.leading_monomial();
        std::vector<int> e(order.nvars);
        bool coprime = true;
        for (int v = 0; v < order.nvars; ++v) {
            e[v] = std::max(la.exponent(v), lb.exponent(v));
            if (la.exponent(v) > 0 && lb.exponent(v) > 0) coprime = false;
        }
        if (coprime) continue;  // product criterion
        Monomial lcm_m(std::move(e));

        Entry spoly{PolyQ::zero(order), {}};
        const Rational& ca = basis[pr.i].poly.leading_term().second;
        const Rational& cb = basis[pr.j].poly.leading_term().second;
        Monomial ua = la.divide_into(lcm_m);
        Monomial ub = lb.divide_into(lcm_m);
        spoly.poly = basis[pr.i].poly.times_monomial(ua).scaled(Rational(1) / ca) -
                     basis[pr.j].poly.times_monomial(ub).scaled(Rational(1) / cb);
        if (track_coords) {
            spoly.coords.assign(s, PolyQ::zero(order));
            for (size_t t = 0; t < s; ++t)
                spoly.coords[t] =
                    basis[pr.i].coords[t].times_monomial(ua).scaled(Rational(1) / ca) -
                    basis[pr.j].coords[t].times_monomial(ub).scaled(Rational(1) / cb);
        }
        Entry nf = oracle_detail::normal_form(std::move(spoly), basis, track_coords);
        if (nf.poly.is_zero()) continue;
        if (static_cast<int>(basis.size()) >= limits.max_basis)
            throw ResourceCapExceeded("basis grew beyond the desk-scale cap");
        basis.push_back(std::move(nf));
        push_pairs(static_cast<int>(basis.size()) - 1);
    }

    // minimize: drop elements whose leading monomial is a multiple of another's
    std::vector<char> keep(basis.size(), 1);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !keep[i] || !keep[j]) continue;
            if (basis[j].poly.leading_monomial().divides(basis[i].poly.leading_monomial()))
                keep[i] = 0;
        }
    std::vector<Entry> minimal;
    for (size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(basis[i]));

    // inter-reduce tails and normalize monic
    std::vector<Entry> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Entry> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Entry r = oracle_detail::normal_form(minimal[i], others, track_coords);
        const Rational lc = r.poly.leading_term().second;
        r.poly = r.poly.scaled(Rational(1) / lc);
        if (track_coords)
            for (auto& c : r.coords) c = c.scaled(Rational(1) / lc);
        reduced.push_back(std::move(r));
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Entry& a, const Entry& b) {
        int da = a.poly.degree(), db = b.poly.degree();
        if (da != db) return da < db;
        return order.compare(a.poly.leading_monomial(), b.poly.leading_monomial()) > 0;
    });

    OracleResult out;
    for (auto& e : reduced) {
        out.basis.push_back(std::move(e.poly));
        if (track_coords) out.coordinates.push_back(std::move(e.coords));
    }
    return out;
}

inline PolyQ normal_form(const PolyQ& f, const std::vector<PolyQ>& basis) {
    std::vector<oracle_detail::Entry> b;
    for (const auto& g : basis) b.push_back({g, {}});
    return oracle_detail::normal_form({f, {}}, b, false).poly;
}

inline bool in_ideal(const PolyQ& f, const std::vector<PolyQ>& reduced_basis) {
    return normal_form(f, reduced_basis).is_zero();
}

/// Coefficients of prod_j (1 - t^{d_j}) / (1-t)^nvars up to degree cap: the
/// Hilbert function a regular sequence of those degrees must realize.
inline std::vector<long long> regular_hilbert_function(const std::vector<int>& degrees, int nvars,
                                                       int cap) {
    std::vector<long long> c(cap + 1, 0);
    c[0] = 1;
    for (int d : degrees) {
        for (int k = cap; k >= d; --k) c[k] -= c[k - d];
    }
    for (int rep = 0; rep < nvars; ++rep)
        for (int k = 1; k <= cap; ++k) c[k] += c[k - 1];
    return c;
}

inline long long monomial_count(int nvars, int d) {
    // C(nvars + d - 1, d)
    long long r = 1;
    for (int i = 1; i <= d; ++i) r = r * (nvars + i - 1) / i;
    return r;
}

inline long long dim_leading_ideal(const std::vector<PolyQ>& basis, int d,
                                   const MonomialOrder& order) {
    long long count = 0;
    for (const auto& m : monomials_of_degree(order.nvars, d, order)) {
        for (const auto& g : basis)
            if (g.leading_monomial().divides(m)) {
                ++count;
                break;
            }
    }
    return count;
}

/// H1: every prefix ideal has the Hilbert function of a regular sequence,
/// checked degree by degree up to `cap` (default: the Macaulay bound of the
/// degree sequence).
inline bool check_regular_sequence(const std::vector<PolyQ>& F, int cap = -1) {
    if (F.empty()) return true;
    std::vector<int> degrees;
    for (const auto& f : F) {
        if (f.is_zero() || !f.is_homogeneous()) return false;
        degrees.push_back(f.degree());
    }
    if (cap < 0) {
        cap = 1;
        for (int d : degrees) cap += d - 1;
        cap = std::max(cap, *std::max_element(degrees.begin(), degrees.end()));
    }
    const MonomialOrder order = F.front().order();
    for (size_t i = 1; i <= F.size(); ++i) {
        std::vector<PolyQ> prefix(F.begin(), F.begin() + i);
        auto gb = buchberger_reduced(prefix).basis;
        std::vector<int> degs(degrees.begin(), degrees.begin() + i);
        auto hf = regular_hilbert_function(degs, order.nvars, cap);
        for (int d = 0; d <= cap; ++d) {
            long long expected = monomial_count(order.nvars, d) - hf[d];
            if (dim_leading_ideal(gb, d, order) != expected) return false;
        }
    }
    return true;
}

/// H2: each prefix ideal is weakly-w: for every leading monomial x^a of its
/// reduced basis, every same-degree monomial above x^a lies in LM(I).
inline bool check_weakly_w(const std::vector<PolyQ>& F, const MonomialOrder& order,
                           int degree_cap = -1) {
    for (size_t i = 1; i <= F.size(); ++i) {
        std::vector<PolyQ> prefix(F.begin(), F.begin() + i);
        auto gb = buchberger_reduced(prefix).basis;
        for (const auto& g : gb) {
            const Monomial& lm = g.leading_monomial();
            int d = lm.degree();
            if (degree_cap >= 0 && d > degree_cap) continue;
            for (const auto& m : monomials_of_degree(order.nvars, d, order)) {
                if (order.compare(m, lm) <= 0) break;  // list is decreasing
                bool covered = false;
                for (const auto& h : gb)
                    if (h.leading_monomial().divides(m)) {
                        covered = true;
                        break;
                    }
                if (!covered) return false;
            }
        }
    }
    return true;
}

}  // namespace padicgb
