#pragma once

#include <utility>
#include <vector>

#include "padicgb/f5.hpp"

namespace padicgb {

/// Differential of the reduced-basis map applied to a perturbation:
/// delta_g[k] = reduce(sum_j delta_f[j] * M[k][j], G), computed component-wise
/// with ball coefficients propagating through exact M and G.  The result is a
/// first-order estimate; the surjectivity hypothesis behind it is not checked.
inline std::vector<Polynomial<Element>> differential(
    const std::vector<Polynomial<Element>>& delta_f,
    const std::vector<std::vector<Polynomial<Element>>>& coordinates,
    const std::vector<Polynomial<Element>>& basis) {
    if (coordinates.size() != basis.size())
        throw DimensionMismatch("coordinate matrix does not match the basis");
    std::vector<Polynomial<Element>> out;
    out.reserve(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) {
        if (coordinates[k].size() != delta_f.size())
            throw DimensionMismatch("perturbation does not match the generator count");
        Polynomial<Element> acc = Polynomial<Element>::zero(basis[k].order());
        for (size_t j = 0; j < delta_f.size(); ++j) acc = acc + delta_f[j] * coordinates[k][j];
        out.push_back(reduce(acc, basis));
    }
    return out;
}

/// Same, with an exact basis and exact coordinates mapped to elements at a
/// working precision high enough that the caps never bite.
inline std::vector<Polynomial<Element>> differential(
    const Field& field, const std::vector<Polynomial<Element>>& delta_f,
    const std::vector<PolyQ>& exact_basis, const std::vector<std::vector<PolyQ>>& exact_coords,
    int working_order) {
    std::vector<std::vector<Polynomial<Element>>> coords;
    std::vector<Polynomial<Element>> basis;
    for (const auto& g : exact_basis) basis.push_back(to_elements(g, field, working_order));
    for (const auto& row : exact_coords) {
        std::vector<Polynomial<Element>> r;
        for (const auto& c : row) r.push_back(to_elements(c, field, working_order));
        coords.push_back(std::move(r));
    }
    return differential(delta_f, coords, basis);
}

inline std::vector<Polynomial<Element>> differential(
    const Field& field, const std::vector<Polynomial<Element>>& delta_f,
    const OracleResult& exact, int working_order) {
    return differential(field, delta_f, exact.basis, exact.coordinates, working_order);
}

/// Ball encoding of a concrete perturbation: each coefficient becomes the ball
/// O(pi^val(c)); exact-zero slots stay exactly zero.
inline std::vector<Polynomial<Element>> ball_encoding(const Field& field,
                                                      const std::vector<PolyQ>& delta_f) {
    std::vector<Polynomial<Element>> out;
    out.reserve(delta_f.size());
    for (const auto& d : delta_f) {
        std::vector<Polynomial<Element>::Term> terms;
        for (const auto& t : d.terms())
            terms.push_back({t.first, Element::ball(field, rational_valuation(t.second, field.p()))});
        out.push_back(Polynomial<Element>(d.order(), std::move(terms)));
    }
    return out;
}

inline int min_coefficient_order(const std::vector<Polynomial<Element>>& polys) {
    int m = kInfPrec;
    for (const auto& g : polys)
        for (const auto& t : g.terms()) m = std::min(m, t.second.order());
    return m;
}

/// Difference method: exact reduced bases of F and F + delta_f, compared
/// coefficient-wise by p-adic valuation of the difference (kInfPrec for equal
/// coefficients).  When the two leading-monomial sets differ the valuations
/// are meaningless and only the instability is reported.
struct DifferenceReport {
    bool lm_stable = true;
    // per basis element: (monomial, valuation of the coefficient difference)
    std::vector<std::vector<std::pair<Monomial, int>>> valuations;
    int min_valuation = kInfPrec;
};

inline DifferenceReport difference_method(const std::vector<PolyQ>& F,
                                          const std::vector<PolyQ>& delta_f, long long p) {
    if (F.size() != delta_f.size())
        throw DimensionMismatch("perturbation does not match the generator count");
    std::vector<PolyQ> perturbed;
    perturbed.reserve(F.size());
    for (size_t j = 0; j < F.size(); ++j) perturbed.push_back(F[j] + delta_f[j]);

    auto g1 = buchberger_reduced(F).basis;
    auto g2 = buchberger_reduced(perturbed).basis;

    DifferenceReport rep;
    if (g1.size() != g2.size()) {
        rep.lm_stable = false;
        return rep;
    }
    for (size_t k = 0; k < g1.size(); ++k)
        if (!(g1[k].leading_monomial() == g2[k].leading_monomial())) {
            rep.lm_stable = false;
            return rep;
        }
    const MonomialOrder& order = F.front().order();
    for (size_t k = 0; k < g1.size(); ++k) {
        std::vector<std::pair<Monomial, int>> vals;
        PolyQ diff = g1[k] - g2[k];
        // report every slot present in either basis element
        std::vector<Monomial> slots;
        for (const auto& t : g1[k].terms()) slots.push_back(t.first);
        for (const auto& t : g2[k].terms())
            if (!g1[k].coefficient(t.first)) slots.push_back(t.first);
        std::sort(slots.begin(), slots.end(), [&](const Monomial& a, const Monomial& b) {
            return order.compare(a, b) > 0;
        });
        for (const auto& m : slots) {
            auto c = diff.coefficient(m);
            int v = (!c || *c == 0) ? kInfPrec : rational_valuation(*c, p);
            vals.push_back({m, v});
            rep.min_valuation = std::min(rep.min_valuation, v);
        }
        rep.valuations.push_back(std::move(vals));
    }
    return rep;
}

}  // namespace padicgb
