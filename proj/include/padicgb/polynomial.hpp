#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicgb/cdvf.hpp"
#include "padicgb/monomial.hpp"

namespace padicgb {

// Coefficient shims shared by ball-valued and exact polynomials.
inline bool coeff_is_exact_zero(const Element& c) { return c.is_exact_zero(); }
inline bool coeff_is_certified_nonzero(const Element& c) {
    return c.certified_valuation().has_value();
}
inline Element coeff_div(const Element& a, const Element& b) { return a.div(b); }
inline std::string coeff_to_string(const Element& c) { return c.to_string(); }

inline bool coeff_is_exact_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_certified_nonzero(const Rational& c) { return c != 0; }
inline Rational coeff_div(const Rational& a, const Rational& b) {
    if (b == 0) throw DivisionByExactZero();
    return a / b;
}
inline std::string coeff_to_string(const Rational& c) { return c.str(); }

/// Multivariate polynomial with terms kept strictly decreasing under the
/// ambient monomial order.  Terms whose coefficient is exactly zero are never
/// stored; terms with ball coefficients (indistinguishable from zero at the
/// current precision) are stored, since they carry precision information.
template <class C>
class Polynomial {
public:
    using Term = std::pair<Monomial, C>;

    Polynomial() = default;
    explicit Polynomial(const MonomialOrder& order) : order_(order) {}

    Polynomial(const MonomialOrder& order, std::vector<Term> terms) : order_(order) {
        std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
            return order.compare(a.first, b.first) > 0;
        });
        terms_.reserve(terms.size());
        for (auto& t : terms) {
            if (!terms_.empty() && terms_.back().first == t.first)
                terms_.back().second = terms_.back().second + t.second;
            else
                terms_.push_back(std::move(t));
        }
        prune();
    }

    static Polynomial zero(const MonomialOrder& order) { return Polynomial(order); }

    static Polynomial term(const MonomialOrder& order, Monomial m, C c) {
        Polynomial p(order);
        if (!coeff_is_exact_zero(c)) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    const MonomialOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int nvars() const { return order_.nvars; }

    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.first.degree());
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.front().first.degree();
        for (const auto& t : terms_)
            if (t.first.degree() != d) return false;
        return true;
    }

    std::optional<C> coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.first == m) return t.second;
        return std::nullopt;
    }

    /// Greatest monomial whose coefficient has a certified valuation.  Fails
    /// when a greater stored coefficient is indistinguishable from zero: its
    /// vanishing cannot be certified, so neither can the leading monomial.
    const Term& leading_term() const {
        if (terms_.empty()) throw ZeroPolynomial();
        const Term& t = terms_.front();
        if (!coeff_is_certified_nonzero(t.second)) throw AmbiguousLeadingTerm();
        return t;
    }

    const Monomial& leading_monomial() const { return leading_term().first; }

    Polynomial operator-() const {
        Polynomial r(order_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.first, -t.second});
        return r;
    }

    Polynomial operator+(const Polynomial& b) const {
        require_same_order(b);
        Polynomial r(order_);
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < b.terms_.size()) {
            int c = order_.compare(terms_[i].first, b.terms_[j].first);
            if (c > 0)
                r.terms_.push_back(terms_[i++]);
            else if (c < 0)
                r.terms_.push_back(b.terms_[j++]);
            else {
                r.terms_.push_back({terms_[i].first, terms_[i].second + b.terms_[j].second});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        r.prune();
        return r;
    }

    Polynomial operator-(const Polynomial& b) const { return *this + (-b); }

    Polynomial scaled(const C& c) const {
        Polynomial r(order_);
        if (coeff_is_exact_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.first, t.second * c});
        r.prune();
        return r;
    }

    Polynomial times_monomial(const Monomial& m) const {
        Polynomial r(order_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.first * m, t.second});
        return r;  // multiplying by a monomial preserves the term order
    }

    Polynomial operator*(const Polynomial& b) const {
        require_same_order(b);
        auto cmp = [this](const Monomial& x, const Monomial& y) {
            return order_.compare(x, y) > 0;
        };
        std::map<Monomial, C, decltype(cmp)> acc(cmp);
        for (const auto& s : terms_)
            for (const auto& t : b.terms_) {
                Monomial m = s.first * t.first;
                C v = s.second * t.second;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), std::move(v));
                else
                    it->second = it->second + v;
            }
        Polynomial r(order_);
        r.terms_.reserve(acc.size());
        for (auto& kv : acc) r.terms_.push_back({kv.first, kv.second});
        r.prune();
        return r;
    }

    /// Drop the term at monomial m entirely (the symbolic zero written by a
    /// reduction or elimination step).
    Polynomial without_term(const Monomial& m) const {
        Polynomial r(order_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            if (!(t.first == m)) r.terms_.push_back(t);
        return r;
    }

    /// Sum of the terms of maximal total degree.
    Polynomial top_component() const {
        if (terms_.empty()) throw ZeroPolynomial();
        int d = degree();
        Polynomial r(order_);
        for (const auto& t : terms_)
            if (t.first.degree() == d) r.terms_.push_back(t);
        return r;
    }

    bool operator==(const Polynomial& b) const {
        return order_ == b.order_ && terms_ == b.terms_;
    }
    bool operator!=(const Polynomial& b) const { return !(*this == b); }

    std::string to_string(const std::vector<std::string>& vars) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            std::string c = coeff_to_string(t.second);
            bool wrap = c.find(" + O(") != std::string::npos;
            std::string mono = t.first.to_string(vars);
            if (!s.empty()) {
                if (!wrap && c.size() > 1 && c[0] == '-') {
                    s += " - ";
                    c = c.substr(1);
                } else {
                    s += " + ";
                }
            }
            if (wrap) c = "(" + c + ")";
            if (mono == "1")
                s += c;
            else if (c == "1")
                s += mono;
            else if (c == "-1")
                s += "-" + mono;
            else
                s += c + "*" + mono;
        }
        return s;
    }

private:
    void require_same_order(const Polynomial& b) const {
        if (!(order_ == b.order_))
            throw DimensionMismatch("polynomials live under different monomial orders");
    }

    void prune() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Term& t) { return coeff_is_exact_zero(t.second); }),
                     terms_.end());
    }

    MonomialOrder order_;
    std::vector<Term> terms_;
};

/// Deterministic multivariate division: always rewrite the greatest reducible
/// term, using the first divisor in G whose leading monomial divides it.  The
/// rewritten slot is dropped symbolically, exactly like an elimination pivot.
/// Post-condition: no remaining stored term is divisible by any LM(g).
template <class C>
Polynomial<C> reduce(const Polynomial<C>& f, const std::vector<Polynomial<C>>& G) {
    struct Divisor {
        Monomial lm;
        C lc;
        Polynomial<C> tail;
    };
    std::vector<Divisor> divisors;
    divisors.reserve(G.size());
    for (const auto& g : G) {
        if (g.is_zero()) continue;
        const auto& lt = g.leading_term();
        divisors.push_back({lt.first, lt.second, g.without_term(lt.first)});
    }
    Polynomial<C> h = f;
    std::vector<typename Polynomial<C>::Term> out;
    while (!h.is_zero()) {
        const auto& head = h.terms().front();
        const Divisor* chosen = nullptr;
        for (const auto& d : divisors)
            if (d.lm.divides(head.first)) {
                chosen = &d;
                break;
            }
        if (!chosen) {
            out.push_back(head);
            h = h.without_term(head.first);
            continue;
        }
        C q = coeff_div(head.second, chosen->lc);
        Monomial qm = chosen->lm.divide_into(head.first);
        h = h.without_term(head.first) - chosen->tail.times_monomial(qm).scaled(q);
    }
    return Polynomial<C>(f.order(), std::move(out));
}

/// Coefficient-wise agreement at the available precision; for exact
/// coefficients this is equality.
inline bool agrees_with(const Element& a, const Element& b) { return a.agrees_with(b); }
inline bool agrees_with(const Rational& a, const Rational& b) { return a == b; }

template <class C>
bool polynomials_agree(const Polynomial<C>& a, const Polynomial<C>& b) {
    size_t i = 0, j = 0;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    while (i < ta.size() || j < tb.size()) {
        if (i < ta.size() && j < tb.size() && ta[i].first == tb[j].first) {
            if (!agrees_with(ta[i].second, tb[j].second)) return false;
            ++i, ++j;
            continue;
        }
        int c;
        if (i >= ta.size())
            c = -1;
        else if (j >= tb.size())
            c = 1;
        else
            c = a.order().compare(ta[i].first, tb[j].first);
        if (c > 0) {
            // term only present in a: must be indistinguishable from zero
            if (coeff_is_certified_nonzero(ta[i].second)) return false;
            ++i;
        } else {
            if (coeff_is_certified_nonzero(tb[j].second)) return false;
            ++j;
        }
    }
    return true;
}

inline Polynomial<Element> to_elements(const Polynomial<Rational>& f, const Field& field,
                                       int order) {
    std::vector<Polynomial<Element>::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms())
        terms.push_back({t.first,
                         Element::from_rational(field, boost::multiprecision::numerator(t.second),
                                                boost::multiprecision::denominator(t.second),
                                                order)});
    return Polynomial<Element>(f.order(), std::move(terms));
}

/// Exact rational polynomial from the stored representatives (digits read off
/// as integers); meaningful for exact elements and canonical lifts.
inline Polynomial<Rational> to_rationals(const Polynomial<Element>& f) {
    std::vector<Polynomial<Rational>::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms())
        terms.push_back({t.first, t.second.representative_rational()});
    return Polynomial<Rational>(f.order(), std::move(terms));
}

}  // namespace padicgb
