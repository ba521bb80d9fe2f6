#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "padicgb/errors.hpp"

namespace padicgb {

/// Exponent vector of a power product, one slot per variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents) : e_(std::move(exponents)) {}
    static Monomial one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }
    static Monomial variable(int nvars, int index, int power = 1) {
        std::vector<int> e(nvars, 0);
        e[index] = power;
        return Monomial(std::move(e));
    }

    int nvars() const { return static_cast<int>(e_.size()); }
    int exponent(int i) const { return e_[i]; }
    const std::vector<int>& exponents() const { return e_; }
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
    }

    bool operator==(const Monomial& m) const { return e_ == m.e_; }
    bool operator!=(const Monomial& m) const { return e_ != m.e_; }
    /// Arbitrary strict order so monomials can key ordered containers.
    bool operator<(const Monomial& m) const { return e_ < m.e_; }

    Monomial operator*(const Monomial& m) const {
        require_same_vars(m);
        std::vector<int> e(e_);
        for (size_t i = 0; i < e.size(); ++i) e[i] += m.e_[i];
        return Monomial(std::move(e));
    }

    bool divides(const Monomial& m) const {
        require_same_vars(m);
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    /// m / *this, defined when *this divides m.
    Monomial divide_into(const Monomial& m) const {
        require_same_vars(m);
        std::vector<int> e(m.e_);
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] -= e_[i];
            if (e[i] < 0) throw Error("monomial division is not exact");
        }
        return Monomial(std::move(e));
    }

    std::string to_string(const std::vector<std::string>& vars) const {
        std::string s;
        for (size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars[i];
            if (e_[i] > 1) s += "^" + std::to_string(e_[i]);
        }
        return s.empty() ? "1" : s;
    }

private:
    void require_same_vars(const Monomial& m) const {
        if (e_.size() != m.e_.size())
            throw DimensionMismatch("monomials have different variable counts");
    }

    std::vector<int> e_;
};

enum class OrderKind { Grevlex, Lex };

/// Total order on monomials.  Variable precedence is declaration order
/// (X_1 > X_2 > ...).  Grevlex refines total degree; lex does not.
struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    int nvars = 0;

    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && nvars == o.nvars;
    }
    bool refines_degree() const { return kind == OrderKind::Grevlex; }

    /// +1 when u > v, 0 when equal, -1 when u < v.
    int compare(const Monomial& u, const Monomial& v) const {
        if (u.nvars() != nvars || v.nvars() != nvars)
            throw DimensionMismatch("monomial does not match the order's variable count");
        if (kind == OrderKind::Grevlex) {
            int du = u.degree(), dv = v.degree();
            if (du != dv) return du > dv ? 1 : -1;
            // ties: the last differing variable, smaller exponent wins
            for (int i = nvars - 1; i >= 0; --i) {
                if (u.exponent(i) != v.exponent(i))
                    return u.exponent(i) < v.exponent(i) ? 1 : -1;
            }
            return 0;
        }
        for (int i = 0; i < nvars; ++i) {
            if (u.exponent(i) != v.exponent(i))
                return u.exponent(i) > v.exponent(i) ? 1 : -1;
        }
        return 0;
    }

    bool greater(const Monomial& u, const Monomial& v) const { return compare(u, v) > 0; }
};

/// All monomials in `nvars` variables of total degree d, strictly decreasing
/// with respect to the order (the column basis of degree-d Macaulay matrices).
inline std::vector<Monomial> monomials_of_degree(int nvars, int d, const MonomialOrder& order) {
    if (d < 0) throw Error("degree must be non-negative");
    std::vector<Monomial> out;
    std::vector<int> e(nvars, 0);
    // enumerate compositions of d into nvars parts
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == nvars - 1) {
            e[pos] = remaining;
            out.push_back(Monomial(e));
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[pos] = k;
            self(self, pos + 1, remaining - k);
        }
        e[pos] = 0;
    };
    if (nvars == 0) {
        if (d == 0) out.push_back(Monomial(e));
        return out;
    }
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) > 0; });
    return out;
}

}  // namespace padicgb
