#pragma once

#include <string>
#include <vector>

#include "padicgb/f5.hpp"

namespace padicgb {

/// Canonical lift of every coefficient: same digits, zeros appended up to
/// O(pi^target); target == kInfPrec turns the residues into exact integers.
inline Polynomial<Element> canonical_lift(const Polynomial<Element>& f, int target) {
    std::vector<Polynomial<Element>::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back({t.first, t.second.canonical_lift(target)});
    return Polynomial<Element>(f.order(), std::move(terms));
}

template <class C>
struct TrackedPoly {
    Polynomial<C> poly;
    std::vector<Polynomial<C>> coords;
};

/// Division with coordinate tracking: identical contract to reduce(), plus the
/// quotients are reflected on the coordinate labels.
template <class C>
TrackedPoly<C> reduce_tracked(TrackedPoly<C> h, const std::vector<TrackedPoly<C>>& basis) {
    std::vector<typename Polynomial<C>::Term> out;
    while (!h.poly.is_zero()) {
        const auto& head = h.poly.terms().front();
        const TrackedPoly<C>* red = nullptr;
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
        C q = coeff_div(head.second, lt.second);
        Monomial qm = lt.first.divide_into(head.first);
        h.poly = h.poly.without_term(head.first) -
                 red->poly.without_term(lt.first).times_monomial(qm).scaled(q);
        for (size_t j = 0; j < h.coords.size(); ++j)
            h.coords[j] = h.coords[j] - red->coords[j].times_monomial(qm).scaled(q);
    }
    h.poly = Polynomial<C>(h.poly.order(), std::move(out));
    return h;
}

/// Lift request: a finished run (G, M) at precision m together with the same
/// generators known at the higher precision l (kInfPrec for exact input).
struct LiftRequest {
    GroebnerResult from;
    std::vector<Polynomial<Element>> generators_at_l;
    int target_order = 0;
};

/// Result of an exact lift (target +infinity): basis and coordinates over Q.
struct ExactLiftResult {
    std::vector<PolyQ> basis;
    std::vector<std::vector<PolyQ>> coordinates;
    std::vector<std::string> notes;
};

namespace lift_detail {

inline void check_precision(const GroebnerResult& res, int target_order,
                            std::vector<std::string>& notes) {
    int m = res.report.entry_precision;
    if (target_order != kInfPrec && target_order <= m)
        throw Error("lift target precision must exceed the precision of the first run");
    if (res.report.bound_certified && m != kInfPrec && m <= 2 * res.report.bound)
        notes.push_back("first-run precision " + std::to_string(m) +
                        " does not exceed twice the certified bound " +
                        std::to_string(res.report.bound) +
                        "; proceeding with post-hoc leading-monomial verification");
}

}  // namespace lift_detail

/// Weak lifting at a finite target precision: H = (F + O(pi^l)) * M^ followed
/// by successive inter-reduction; every lifted leading monomial is verified
/// against the first run.
inline GroebnerResult weak_lift(const LiftRequest& req) {
    std::vector<std::string> notes;
    const GroebnerResult& res = req.from;
    lift_detail::check_precision(res, req.target_order, notes);
    if (!res.coordinates.empty() && req.generators_at_l.size() != res.coordinates.front().size())
        throw DimensionMismatch("generator count does not match the coordinate matrix");

    std::vector<TrackedPoly<Element>> done;
    for (size_t k = 0; k < res.basis.size(); ++k) {
        std::vector<Polynomial<Element>> mh;
        mh.reserve(res.coordinates[k].size());
        for (const auto& c : res.coordinates[k]) mh.push_back(canonical_lift(c, req.target_order));
        TrackedPoly<Element> h{combine(req.generators_at_l, mh), std::move(mh)};
        TrackedPoly<Element> g = reduce_tracked(std::move(h), done);
        if (!(g.poly.leading_monomial() == res.basis[k].leading_monomial()))
            throw LiftVerificationFailure("leading monomial of element " + std::to_string(k + 1) +
                                          " changed; the lift precision is insufficient");
        done.push_back(std::move(g));
    }

    GroebnerResult out = res;
    out.basis.clear();
    out.coordinates.clear();
    out.report.entry_precision = req.target_order;
    for (auto& g : done) {
        out.basis.push_back(std::move(g.poly));
        out.coordinates.push_back(std::move(g.coords));
    }
    out.notes.insert(out.notes.end(), notes.begin(), notes.end());
    return out;
}

/// Monic full inter-reduction with coordinate tracking: turns an exact lift
/// into the reduced basis together with coordinates whose denominators stem
/// only from the divisions the reduced basis itself requires.
inline void inter_reduce_exact(ExactLiftResult& lifted) {
    std::vector<TrackedPoly<Rational>> entries;
    for (size_t k = 0; k < lifted.basis.size(); ++k)
        entries.push_back({lifted.basis[k], lifted.coordinates[k]});
    for (size_t k = 0; k < entries.size(); ++k) {
        std::vector<TrackedPoly<Rational>> others;
        for (size_t j = 0; j < entries.size(); ++j)
            if (j != k) others.push_back(entries[j]);
        TrackedPoly<Rational> red = reduce_tracked(entries[k], others);
        Rational lc = red.poly.leading_term().second;
        red.poly = red.poly.scaled(Rational(1) / lc);
        for (auto& c : red.coords) c = c.scaled(Rational(1) / lc);
        entries[k] = std::move(red);
    }
    for (size_t k = 0; k < entries.size(); ++k) {
        lifted.basis[k] = std::move(entries[k].poly);
        lifted.coordinates[k] = std::move(entries[k].coords);
    }
}

/// Lift to exact rational coefficients (target +infinity).  The canonical
/// lift of M has integer entries, so H = F * M^ is integral; inter-reduction
/// may introduce denominators, in which case the element is cleared to a
/// primitive integral representative with positive leading coefficient.
inline ExactLiftResult weak_lift_exact(const GroebnerResult& res,
                                       const std::vector<PolyQ>& generators) {
    ExactLiftResult out;
    lift_detail::check_precision(res, kInfPrec, out.notes);
    if (!res.coordinates.empty() && generators.size() != res.coordinates.front().size())
        throw DimensionMismatch("generator count does not match the coordinate matrix");
    const MonomialOrder& order = res.order;

    std::vector<TrackedPoly<Rational>> done;
    for (size_t k = 0; k < res.basis.size(); ++k) {
        std::vector<PolyQ> mh;
        mh.reserve(res.coordinates[k].size());
        for (const auto& c : res.coordinates[k])
            mh.push_back(to_rationals(canonical_lift(c, kInfPrec)));
        PolyQ h = PolyQ::zero(order);
        for (size_t j = 0; j < generators.size(); ++j) h = h + generators[j] * mh[j];
        TrackedPoly<Rational> g = reduce_tracked(TrackedPoly<Rational>{h, std::move(mh)}, done);
        if (!(g.poly.leading_monomial() == res.basis[k].leading_monomial()))
            throw LiftVerificationFailure("leading monomial of element " + std::to_string(k + 1) +
                                          " changed; the first-run precision is insufficient");
        done.push_back(std::move(g));
    }

    for (auto& g : done) {
        bool integral = true;
        for (const auto& t : g.poly.terms())
            if (boost::multiprecision::denominator(t.second) != 1) integral = false;
        if (!integral) {
            Int lcm = 1, content = 0;
            for (const auto& t : g.poly.terms()) {
                const Int d = boost::multiprecision::denominator(t.second);
                lcm = boost::multiprecision::lcm(lcm, d);
            }
            PolyQ scaled = g.poly.scaled(Rational(lcm));
            for (const auto& t : scaled.terms()) {
                Int n = boost::multiprecision::numerator(t.second);
                if (n < 0) n = -n;
                content = content == 0 ? n : boost::multiprecision::gcd(content, n);
            }
            if (content != 0) scaled = scaled.scaled(Rational(1, content));
            if (scaled.leading_term().second < 0) scaled = scaled.scaled(Rational(-1));
            g.poly = scaled;
        }
        out.basis.push_back(std::move(g.poly));
        out.coordinates.push_back(std::move(g.coords));
    }
    return out;
}

}  // namespace padicgb
