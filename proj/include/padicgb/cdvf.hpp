#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padicgb/errors.hpp"

namespace padicgb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Sentinel for infinite absolute precision / infinite valuation.  Kept well
// below INT_MAX so saturating sums of two orders cannot overflow.
inline constexpr int kInfPrec = std::numeric_limits<int>::max() / 4;

inline int sat_add(int a, int b) {
    if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
    long long s = static_cast<long long>(a) + b;
    return s >= kInfPrec ? kInfPrec : static_cast<int>(s);
}

enum class FieldKind { PAdic, PowerSeries };

namespace detail {

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Valuation of a nonzero integer with respect to p.  For power-series
// encodings (base-p digit strings) this is the index of the first nonzero
// digit, which is the same computation.
inline int int_valuation(Int v, long long p) {
    if (v < 0) v = -v;
    int k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

inline Int mod_positive(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

// Inverse of u modulo m (u coprime to m) by extended Euclid.
inline Int mod_inverse(const Int& u, const Int& m) {
    Int a = mod_positive(u, m), b = m;
    Int x0 = 1, x1 = 0;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    // a == gcd; callers guarantee a unit
    return mod_positive(x0, m);
}

inline std::vector<long long> to_digits(Int v, long long p, int count) {
    std::vector<long long> d;
    d.reserve(count > 0 ? count : 8);
    while (v != 0 && (count < 0 || static_cast<int>(d.size()) < count)) {
        d.push_back(static_cast<long long>(v % p));
        v /= p;
    }
    if (count > 0) d.resize(count, 0);
    return d;
}

inline Int from_digits(const std::vector<long long>& d, long long p) {
    Int v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
    return v;
}

}  // namespace detail

/// Ambient coefficient field: Q_p with the p-adic valuation, or F_p((t)) with
/// the t-adic valuation.  Immutable after construction and freely shareable.
class Field {
public:
    Field(FieldKind kind, long long p) : kind_(kind), p_(p) {
        if (!detail::is_prime(p)) throw Error("p must be prime, got " + std::to_string(p));
        powers_.push_back(1);
        powers_.push_back(p);
    }

    FieldKind kind() const { return kind_; }
    long long p() const { return p_; }
    std::string uniformizer() const {
        return kind_ == FieldKind::PAdic ? std::to_string(p_) : "t";
    }
    bool same_as(const Field& other) const {
        return kind_ == other.kind_ && p_ == other.p_;
    }

    const Int& pow(int k) const {
        while (static_cast<int>(powers_.size()) <= k) powers_.push_back(powers_.back() * p_);
        return powers_[k];
    }

private:
    FieldKind kind_;
    long long p_;
    mutable std::vector<Int> powers_;
};

struct ValuationResult {
    enum class State { Finite, Infinite, Undefined } state;
    int value = 0;  // meaningful only when Finite
};

/// Finite-precision element of a complete discrete valuation field:
/// value * pi^shift + O(pi^order).  The stored value is reduced modulo
/// pi^(order - shift) and shift is normalized to be <= 0 (negative only for
/// elements outside the valuation ring).  order == kInfPrec marks an exact
/// element; the exact element 0 is the only one with infinite order and plays
/// the role of the "real zero" written by row elimination.
class Element {
public:
    Element() : field_(nullptr), order_(kInfPrec), shift_(0), value_(0) {}

    static Element exact_zero(const Field& f) { return Element(&f, kInfPrec, 0, 0); }

    static Element exact_int(const Field& f, Int v) {
        return Element(&f, kInfPrec, 0, std::move(v)).canonical();
    }

    /// value + O(pi^order), value interpreted in the ring of integers.
    static Element from_int(const Field& f, Int v, int order) {
        return Element(&f, order, 0, std::move(v)).canonical();
    }

    /// Pure ball O(pi^order): all digits unknown.
    static Element ball(const Field& f, int order) {
        return Element(&f, order, std::min(order, 0), 0);
    }

    /// p-adic (or t-adic) expansion of num/den truncated at O(pi^order).
    /// Powers of pi in num or den move into the shift; the remaining
    /// denominator must be a unit.
    static Element from_rational(const Field& f, const Int& num, const Int& den, int order) {
        if (den == 0) throw DivisionByExactZero();
        if (order < 0 && order != kInfPrec) throw Error("target order must be non-negative");
        if (num == 0) return exact_zero(f);
        if (f.kind() == FieldKind::PowerSeries) {
            // rationals embed through the residue field: constants of F_p((t))
            long long p = f.p();
            Int dn = detail::mod_positive(den, p);
            if (dn == 0) throw DivisionByExactZero();
            Int r = detail::mod_positive(num, p) * detail::mod_inverse(dn, Int(p)) % p;
            if (r == 0) return exact_zero(f);
            return Element(&f, order, 0, r).canonical();
        }
        Int n = num, d = den;
        int e = 0;
        long long p = f.p();
        while (n % p == 0) { n /= p; ++e; }
        while (d % p == 0) { d /= p; --e; }
        if (order == kInfPrec) {
            if (d == 1) return Element(&f, kInfPrec, e, n).canonical();
            if (d == -1) return Element(&f, kInfPrec, e, -n).canonical();
            throw Error("rational with non-trivial denominator is not exactly representable");
        }
        int k = order - e;
        if (k <= 0) return ball(f, order);
        const Int& m = f.pow(k);
        Int v = detail::mod_positive(n, m) * detail::mod_inverse(d, m) % m;
        return Element(&f, order, e, v).canonical();
    }

    const Field& field() const { return *field_; }
    int order() const { return order_; }
    int shift() const { return shift_; }
    const Int& value() const { return value_; }

    bool is_exact() const { return order_ == kInfPrec; }
    bool is_exact_zero() const { return order_ == kInfPrec && value_ == 0; }
    /// All stored digits are zero but the element is not known to be zero.
    bool is_ball_zero() const { return order_ != kInfPrec && value_ == 0; }

    ValuationResult valuation() const {
        if (is_exact_zero()) return {ValuationResult::State::Infinite, 0};
        if (value_ == 0) return {ValuationResult::State::Undefined, 0};
        return {ValuationResult::State::Finite,
                shift_ + detail::int_valuation(value_, field_->p())};
    }

    std::optional<int> certified_valuation() const {
        auto v = valuation();
        if (v.state == ValuationResult::State::Finite) return v.value;
        return std::nullopt;
    }

    /// Lower bound for the valuation of every field element in this ball.
    int valuation_floor() const {
        if (is_exact_zero()) return kInfPrec;
        if (value_ == 0) return order_;
        return shift_ + detail::int_valuation(value_, field_->p());
    }

    Element add(const Element& b) const {
        check_field(b);
        if (is_exact_zero()) return b;
        if (b.is_exact_zero()) return *this;
        int e = std::min(shift_, b.shift_);
        int o = std::min(order_, b.order_);
        Int va = scaled_value(e), vb = b.scaled_value(e);
        Int v = field_->kind() == FieldKind::PAdic ? va + vb : series_add(va, vb);
        return Element(field_, o, e, std::move(v)).canonical();
    }

    Element negate() const {
        if (is_exact_zero()) return *this;
        Int v = field_->kind() == FieldKind::PAdic ? -value_ : series_neg(value_);
        return Element(field_, order_, shift_, std::move(v)).canonical();
    }

    Element sub(const Element& b) const { return add(b.negate()); }

    Element mul(const Element& b) const {
        check_field(b);
        if (is_exact_zero() || b.is_exact_zero()) return exact_zero(*field_);
        int o = std::min(sat_add(order_, b.valuation_floor()),
                         sat_add(b.order_, valuation_floor()));
        int e = shift_ + b.shift_;
        Int v;
        if (field_->kind() == FieldKind::PAdic) {
            v = value_ * b.value_;
        } else {
            int k = o == kInfPrec ? -1 : o - e;
            v = series_mul(value_, b.value_, k);
        }
        return Element(field_, o, e, std::move(v)).canonical();
    }

    /// Quotient per the division rule for balls: for a = eps*pi^n1 + O(pi^m1)
    /// and b = mu*pi^n0 + O(pi^m0) the result is
    /// eps*mu^-1*pi^(n1-n0) + O(pi^min(m1-n0, m0+n1-2n0)).  The divisor must
    /// have a certified valuation.
    Element div(const Element& b) const {
        check_field(b);
        if (b.is_exact_zero()) throw DivisionByExactZero();
        if (b.value_ == 0) throw AmbiguousDivisor();
        if (is_exact_zero()) return exact_zero(*field_);
        long long p = field_->p();
        int n0 = b.shift_ + detail::int_valuation(b.value_, p);
        if (value_ == 0) {
            // dividend indistinguishable from zero: 0 + O(pi^(m1 - n0))
            return ball(*field_, order_ - n0);
        }
        int n1 = shift_ + detail::int_valuation(value_, p);
        int o;
        if (order_ == kInfPrec && b.order_ == kInfPrec) {
            o = kInfPrec;
        } else if (b.order_ == kInfPrec) {
            o = order_ - n0;
        } else if (order_ == kInfPrec) {
            o = sat_add(b.order_, n1 - 2 * n0);
        } else {
            o = std::min(order_ - n0, sat_add(b.order_, n1 - 2 * n0));
        }
        Int ua = unit_part();
        Int ub = b.unit_part();
        int e = n1 - n0;
        if (o == kInfPrec) {
            // only unit denominators have finitely many digits
            if (field_->kind() == FieldKind::PAdic) {
                if (ub == 1) return Element(field_, kInfPrec, e, ua).canonical();
                if (ub == -1) return Element(field_, kInfPrec, e, -ua).canonical();
            } else if (ub < p) {
                Int v = series_mul(ua, detail::mod_inverse(ub, Int(p)), -1);
                return Element(field_, kInfPrec, e, v).canonical();
            }
            throw Error("exact quotient is not finitely representable; truncate an operand first");
        }
        int k = o - e;
        if (k <= 0) throw PrecisionExhausted("quotient has no certifiable digit");
        Int v;
        if (field_->kind() == FieldKind::PAdic) {
            const Int& m = field_->pow(k);
            v = detail::mod_positive(ua, m) * detail::mod_inverse(ub, m) % m;
        } else {
            v = series_mul(ua, series_inverse(ub, k), k);
        }
        return Element(field_, o, e, std::move(v)).canonical();
    }

    /// Restrict the known precision to at most `order` (a weaker statement
    /// about the same element).  Exact elements are left untouched.
    Element capped(int order) const {
        if (is_exact() || order >= order_) return *this;
        return Element(field_, order, shift_, value_).canonical();
    }

    /// Raise the order to `order`, appending zero digits.  With order ==
    /// kInfPrec the stored residue becomes an exact integer.  Elements already
    /// known at least that precisely are returned unchanged.
    Element canonical_lift(int order) const {
        if (order <= order_) return *this;
        return Element(field_, order, shift_, value_).canonical();
    }

    /// Exact rational represented by the stored digits (p-adic fields only).
    Rational representative_rational() const {
        if (field_->kind() != FieldKind::PAdic)
            throw Error("no rational representative for power-series elements");
        Rational r(value_);
        if (shift_ >= 0)
            r *= Rational(field_->pow(shift_));
        else
            r /= Rational(field_->pow(-shift_));
        return r;
    }

    bool operator==(const Element& b) const {
        return field_->same_as(*b.field_) && order_ == b.order_ && shift_ == b.shift_ &&
               value_ == b.value_;
    }
    bool operator!=(const Element& b) const { return !(*this == b); }

    /// True when the two balls are consistent: their difference is
    /// indistinguishable from zero at the combined precision.
    bool agrees_with(const Element& b) const {
        Element d = sub(b);
        return d.value_ == 0;
    }

    std::string to_string() const {
        if (is_exact_zero()) return "0";
        std::ostringstream os;
        if (field_->kind() == FieldKind::PAdic) {
            if (value_ == 0) {
                os << "O(" << field_->p() << "^" << order_ << ")";
                return os.str();
            }
            if (shift_ == 0)
                os << value_;
            else if (shift_ > 0)
                os << value_ * field_->pow(shift_);
            else
                os << value_ << "/" << field_->pow(-shift_);
            if (!is_exact()) os << " + O(" << field_->p() << "^" << order_ << ")";
            return os.str();
        }
        // power series: print the digit polynomial in t
        if (value_ == 0) {
            os << "O(t^" << order_ << ")";
            return os.str();
        }
        auto digits = detail::to_digits(value_, field_->p(), -1);
        bool first = true;
        for (size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            int e = shift_ + static_cast<int>(i);
            if (e == 0)
                os << digits[i];
            else if (digits[i] == 1)
                os << "t" << (e == 1 ? "" : "^" + std::to_string(e));
            else
                os << digits[i] << "*t" << (e == 1 ? "" : "^" + std::to_string(e));
        }
        if (!is_exact()) os << " + O(t^" << order_ << ")";
        return os.str();
    }

private:
    Element(const Field* f, int order, int shift, Int value)
        : field_(f), order_(order), shift_(shift), value_(std::move(value)) {}

    void check_field(const Element& b) const {
        if (!field_->same_as(*b.field_)) throw ContextMismatch();
    }

    Int scaled_value(int new_shift) const {
        // new_shift <= shift_: multiplying by pi^(shift-new_shift) shifts the
        // digit string, which is the same integer operation for both kinds
        return value_ * field_->pow(shift_ - new_shift);
    }

    Int unit_part() const {
        long long p = field_->p();
        Int v = value_;
        bool neg = v < 0;
        if (neg) v = -v;
        while (v % p == 0) v /= p;
        return neg ? -v : v;
    }

    Int series_add(const Int& a, const Int& b) const {
        long long p = field_->p();
        auto da = detail::to_digits(a, p, -1);
        auto db = detail::to_digits(b, p, -1);
        if (da.size() < db.size()) da.resize(db.size(), 0);
        for (size_t i = 0; i < db.size(); ++i) da[i] = (da[i] + db[i]) % p;
        return detail::from_digits(da, p);
    }

    Int series_neg(const Int& a) const {
        long long p = field_->p();
        auto da = detail::to_digits(a, p, -1);
        for (auto& d : da) d = (p - d) % p;
        return detail::from_digits(da, p);
    }

    Int series_mul(const Int& a, const Int& b, int trunc) const {
        long long p = field_->p();
        auto da = detail::to_digits(a, p, -1);
        auto db = detail::to_digits(b, p, -1);
        int n = static_cast<int>(da.size() + db.size());
        if (trunc >= 0) n = std::min(n, trunc);
        std::vector<long long> out(std::max(n, 0), 0);
        for (size_t i = 0; i < da.size(); ++i) {
            if (da[i] == 0) continue;
            for (size_t j = 0; j < db.size() && i + j < out.size(); ++j)
                out[i + j] = (out[i + j] + da[i] * db[j]) % p;
        }
        return detail::from_digits(out, p);
    }

    // inverse of a unit power series, digit by digit, modulo t^k
    Int series_inverse(const Int& u, int k) const {
        long long p = field_->p();
        auto du = detail::to_digits(u, p, k);
        std::vector<long long> w(k, 0);
        long long inv0 = static_cast<long long>(detail::mod_inverse(du[0], Int(p)));
        w[0] = inv0;
        for (int j = 1; j < k; ++j) {
            long long acc = 0;
            for (int i = 1; i <= j; ++i) acc = (acc + du[i] * w[j - i]) % p;
            w[j] = (p - acc % p) % p * inv0 % p;
        }
        return detail::from_digits(w, p);
    }

    Element& canonicalize() {
        long long p = field_->p();
        if (order_ == kInfPrec) {
            if (value_ == 0) {
                shift_ = 0;
                return *this;
            }
            if (shift_ > 0) {
                value_ *= field_->pow(shift_);
                shift_ = 0;
            }
            while (shift_ < 0 && value_ % p == 0) {
                value_ /= p;
                ++shift_;
            }
            return *this;
        }
        if (shift_ > 0) {
            value_ *= field_->pow(shift_);
            shift_ = 0;
        }
        int k = order_ - shift_;
        if (k <= 0) {
            value_ = 0;
            shift_ = std::min(order_, 0);
            return *this;
        }
        value_ = detail::mod_positive(value_, field_->pow(k));
        if (value_ == 0) {
            shift_ = std::min(order_, 0);
            return *this;
        }
        while (shift_ < 0 && value_ % p == 0) {
            value_ /= p;
            ++shift_;
        }
        return *this;
    }

    Element canonical() const {
        Element e = *this;
        e.canonicalize();
        return e;
    }

    const Field* field_;
    int order_;
    int shift_;
    Int value_;
};

inline Element operator+(const Element& a, const Element& b) { return a.add(b); }
inline Element operator-(const Element& a, const Element& b) { return a.sub(b); }
inline Element operator*(const Element& a, const Element& b) { return a.mul(b); }
inline Element operator/(const Element& a, const Element& b) { return a.div(b); }
inline Element operator-(const Element& a) { return a.negate(); }

/// p-adic valuation of a nonzero rational.
inline int rational_valuation(const Rational& r, long long p) {
    if (r == 0) return kInfPrec;
    return detail::int_valuation(boost::multiprecision::numerator(r), p) -
           detail::int_valuation(boost::multiprecision::denominator(r), p);
}

}  // namespace padicgb
