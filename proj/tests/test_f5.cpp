#include <catch2/catch_amalgamated.hpp>

#include "padicgb/f5.hpp"
#include "padicgb/harness.hpp"
#include "padicgb/io.hpp"

using namespace padicgb;

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};
const MonomialOrder kO3{OrderKind::Grevlex, 3};

Polynomial<Element> pe(const std::string& s, const Field& f, int prec) {
    return parse_polynomial(s, f, kXYZ, kO3, prec);
}

PolyQ pq(const std::string& s) { return parse_polynomial_exact(s, kXYZ, kO3); }

std::vector<Monomial> lm_set(const GroebnerResult& r) {
    std::vector<Monomial> out;
    for (const auto& g : r.basis) out.push_back(g.leading_monomial());
    return out;
}

const StepRecord& step_at(const GroebnerResult& r, int d, int i) {
    for (const auto& st : r.report.steps)
        if (st.degree == d && st.index == i) return st;
    throw std::runtime_error("step not found");
}

}  // namespace

TEST_CASE("macaulay matrix construction") {
    Field q5(FieldKind::PAdic, 5);
    SECTION("single linear generator in two variables") {
        MonomialOrder o2{OrderKind::Grevlex, 2};
        auto f = parse_polynomial("x + y", q5, {"x", "y"}, o2, 20);
        SystemInput in = SystemInput::create(q5, {f}, 2);
        LabeledMatrix m = macaulay_matrix(in, 2);
        REQUIRE(m.nrows() == 2);
        REQUIRE(m.ncols() == 3);
        // rows x(x+y), y(x+y) against columns x^2 > xy > y^2
        CHECK(m.entries[0][0].value() == 1);
        CHECK(m.entries[0][1].value() == 1);
        CHECK(m.entries[0][2].is_exact_zero());
        CHECK(m.entries[1][0].is_exact_zero());
        CHECK(m.entries[1][1].value() == 1);
        CHECK(m.entries[1][2].value() == 1);
        CHECK(m.signatures[0].generator == 1);
        CHECK(m.signatures[0].multiplier == Monomial({1, 0}));
    }
    SECTION("degree below the first generator yields an empty matrix") {
        SystemInput in = SystemInput::create(q5, {pe("x", q5, 10)}, 3);
        CHECK(macaulay_matrix(in, 0).nrows() == 0);
    }
    SECTION("row and column counts of the mixed example") {
        SystemInput in = SystemInput::create(
            q5, {pe("5*x", q5, 30), pe("y", q5, 30), pe("25*x*y + z^2", q5, 30)}, 2);
        LabeledMatrix m = macaulay_matrix(in, 2);
        CHECK(m.nrows() == 7);
        CHECK(m.ncols() == 6);
    }
}

TEST_CASE("the F5 criterion discards predictable rows") {
    Field q7(FieldKind::PAdic, 7);
    MonomialOrder o2{OrderKind::Grevlex, 2};
    std::vector<std::string> vars = {"x", "y"};
    auto fx = parse_polynomial("x", q7, vars, o2, 20);
    auto fy = parse_polynomial("y", q7, vars, o2, 20);
    SystemInput in = SystemInput::create(q7, {fx, fy}, 3);
    GroebnerResult r = weak_mf5(in);

    SECTION("nothing is discarded for the first generator") {
        const auto& st = step_at(r, 2, 1);
        REQUIRE(st.kept_rows.size() == 2);  // x*x, y*x
    }
    SECTION("x*f2 is discarded, y*f2 is kept") {
        const auto& st = step_at(r, 2, 2);
        REQUIRE(st.kept_rows.size() == 1);
        CHECK(st.kept_rows[0].generator == 2);
        CHECK(st.kept_rows[0].multiplier == Monomial({0, 1}));
    }
    SECTION("filtered row count equals the ideal's graded dimension") {
        // dim <x,y> cap A_d for d = 1..3 in two variables
        const int expected[] = {0, 2, 3, 4};
        for (int d = 1; d <= 3; ++d) CHECK(step_at(r, d, 2).rows == expected[d]);
    }
}

TEST_CASE("filtered row counts match the oracle's graded dimensions") {
    Field q7(FieldKind::PAdic, 7);
    std::vector<PolyQ> F = {pq("x + 2*y"), pq("x*y^2 + y^3 + z^3")};
    REQUIRE(check_regular_sequence(F));
    GroebnerResult r = weak_mf5(SystemInput::from_rationals(q7, F, 4, 20));
    for (size_t i = 1; i <= F.size(); ++i) {
        auto gb = buchberger_reduced({F.begin(), F.begin() + i}).basis;
        for (int d = 1; d <= 4; ++d)
            CHECK(step_at(r, d, static_cast<int>(i)).rows == dim_leading_ideal(gb, d, kO3));
    }
}

TEST_CASE("weak matrix-F5 on the worked example") {
    Field q5(FieldKind::PAdic, 5);
    auto f1 = pe("x", q5, 10);
    auto f2 = pe("x*y^2 + y^3 + z^3", q5, 10);
    SystemInput in = SystemInput::create(q5, {f1, f2}, 3);
    GroebnerResult r = weak_mf5(in);

    REQUIRE(r.basis.size() == 2);
    CHECK(lm_set(r) == std::vector<Monomial>{Monomial({1, 0, 0}), Monomial({0, 3, 0})});
    CHECK(r.basis[0] == pe("x", q5, 10));
    CHECK(r.basis[1] == pe("y^3 + z^3", q5, 10));
    CHECK(r.report.realized_max_loss == 0);

    // M = [[1, -y^2], [0, 1]]
    REQUIRE(r.coordinates.size() == 2);
    CHECK(r.coordinates[0][0] == Polynomial<Element>(kO3, {{Monomial({0, 0, 0}),
                                                            Element::exact_int(q5, 1)}}));
    CHECK(r.coordinates[0][1].is_zero());
    CHECK(polynomials_agree(r.coordinates[1][0], pe("-1*y^2", q5, 10)));
    CHECK(polynomials_agree(r.coordinates[1][1], pe("1", q5, 10)));

    SECTION("G = F * M at the output precision") {
        for (size_t k = 0; k < r.basis.size(); ++k)
            CHECK(polynomials_agree(combine({f1, f2}, r.coordinates[k]), r.basis[k]));
    }
    SECTION("the basis is minimal") {
        for (size_t i = 0; i < r.basis.size(); ++i)
            for (size_t j = 0; j < r.basis.size(); ++j)
                if (i != j)
                    CHECK_FALSE(
                        r.basis[i].leading_monomial().divides(r.basis[j].leading_monomial()));
    }
}

TEST_CASE("a principal ideal is its own basis") {
    Field q5(FieldKind::PAdic, 5);
    SystemInput in = SystemInput::create(q5, {pe("x", q5, 8)}, 4);
    GroebnerResult r = weak_mf5(in);
    REQUIRE(r.basis.size() == 1);
    CHECK(r.basis[0] == pe("x", q5, 8));
    CHECK(r.report.bound == 0);
}

TEST_CASE("structure failures raise the single combined error") {
    Field q7(FieldKind::PAdic, 7);
    SECTION("regular but not weakly-w") {
        SystemInput in =
            SystemInput::create(q7, {pe("x + y", q7, 12), pe("x*y + y^2 + z^2", q7, 12)}, 4);
        CHECK_THROWS_AS(weak_mf5(in), StructureOrPrecisionFailure);
    }
    SECTION("weakly-w but not regular") {
        SystemInput in = SystemInput::create(q7, {pe("x + y", q7, 12), pe("x^2 + x*y", q7, 12)}, 4);
        CHECK_THROWS_AS(weak_mf5(in), StructureOrPrecisionFailure);
    }
    SECTION("diagnostics carry the failing step") {
        SystemInput in =
            SystemInput::create(q7, {pe("x + y", q7, 12), pe("x*y + y^2 + z^2", q7, 12)}, 4);
        try {
            weak_mf5(in);
            FAIL("expected a failure");
        } catch (const StructureOrPrecisionFailure& e) {
            CHECK(e.degree == 2);
            CHECK(e.index == 2);
        }
    }
}

TEST_CASE("precision bounds of the mixed-valuation example") {
    Field q5(FieldKind::PAdic, 5);
    PrecBounds b = prec_bounds_exact(q5, {pq("5*x"), pq("y"), pq("25*x*y + z^2")}, 2);
    CHECK(b.prec_mf5 == 3);
    CHECK(b.mf5_certified);
    CHECK(b.prec_mac == 2);
    CHECK(b.mac_certified);
}

TEST_CASE("unit systems have zero bounds") {
    Field q5(FieldKind::PAdic, 5);
    PrecBounds b = prec_bounds_exact(q5, {pq("x"), pq("y")}, 3);
    CHECK(b.prec_mf5 == 0);
    CHECK(b.prec_mac == 0);
}

TEST_CASE("weak matrix variant") {
    Field q5(FieldKind::PAdic, 5);
    auto sys = [&](int prec) {
        return SystemInput::create(
            q5, {pe("5*x", q5, prec), pe("y", q5, prec), pe("25*x*y + z^2", q5, prec)}, 2);
    };
    GroebnerResult rm = weak_matrix(sys(10));
    GroebnerResult rf = weak_mf5(sys(10));
    CHECK(rm.report.realized_max_loss <= 2);
    CHECK(rf.report.realized_max_loss <= 3);
    CHECK(lm_set(rm) == lm_set(rf));

    SECTION("unit systems produce identical output either way") {
        SystemInput in1 = SystemInput::create(q5, {pe("x", q5, 10), pe("x*y^2 + y^3 + z^3", q5, 10)}, 3);
        GroebnerResult a = weak_mf5(in1);
        GroebnerResult b = weak_matrix(in1);
        REQUIRE(a.basis.size() == b.basis.size());
        for (size_t k = 0; k < a.basis.size(); ++k) {
            CHECK(a.basis[k] == b.basis[k]);
            for (size_t j = 0; j < a.coordinates[k].size(); ++j)
                CHECK(a.coordinates[k][j] == b.coordinates[k][j]);
        }
    }
}

TEST_CASE("bound comparison on random systems") {
    Rng rng(99);
    Field q5(FieldKind::PAdic, 5);
    int done = 0;
    while (done < 20) {
        std::vector<PolyQ> F;
        for (int d : {2, 2}) {
            std::vector<PolyQ::Term> terms;
            for (const auto& m : monomials_of_degree(3, d, kO3)) {
                long long c = static_cast<long long>(rng.digit(7)) - 3;
                if (c == 0) c = 1;
                terms.push_back({m, Rational(c)});
            }
            F.push_back(PolyQ(kO3, std::move(terms)));
        }
        PrecBounds b;
        try {
            b = prec_bounds_exact(q5, F, 3);
        } catch (const Error&) {
            continue;
        }
        ++done;
        CHECK(b.prec_mac <= b.prec_mf5);
    }
}

TEST_CASE("macaulay bound") {
    CHECK(macaulay_bound({2, 3, 4}) == 7);
    CHECK(macaulay_bound({2}) == 2);
    CHECK(macaulay_bound({3, 4, 7}) == 12);
}

TEST_CASE("affine front end") {
    Field q5(FieldKind::PAdic, 5);
    SECTION("the affine worked example") {
        auto f1 = pe("x - 1", q5, 10);
        auto f2 = pe("x*y^2 + y^3 + z^3", q5, 10);
        GroebnerResult r = affine_weak_mf5(q5, {f1, f2}, 3);
        REQUIRE(r.basis.size() == 2);
        CHECK(polynomials_agree(r.basis[0], pe("x - 1", q5, 10)));
        CHECK(polynomials_agree(r.basis[1], pe("y^3 + z^3 + y^2", q5, 10)));
        CHECK(r.basis[1].leading_monomial() == Monomial({0, 3, 0}));
    }
    SECTION("homogeneous inputs delegate unchanged") {
        auto f1 = pe("x", q5, 10);
        auto f2 = pe("x*y^2 + y^3 + z^3", q5, 10);
        GroebnerResult a = affine_weak_mf5(q5, {f1, f2}, 3);
        GroebnerResult b = weak_mf5(SystemInput::create(q5, {f1, f2}, 3));
        REQUIRE(a.basis.size() == b.basis.size());
        for (size_t k = 0; k < a.basis.size(); ++k) {
            CHECK(a.basis[k] == b.basis[k]);
            for (size_t j = 0; j < a.coordinates[k].size(); ++j)
                CHECK(a.coordinates[k][j] == b.coordinates[k][j]);
        }
    }
    SECTION("lex is rejected") {
        MonomialOrder lex{OrderKind::Lex, 3};
        auto f = parse_polynomial("x - 1", q5, kXYZ, lex, 10);
        CHECK_THROWS_AS(affine_weak_mf5(q5, {f}, 3), Error);
    }
}

TEST_CASE("leading monomials are locally constant above the certified bound") {
    Field q5(FieldKind::PAdic, 5);
    auto f1 = pq("x");
    auto f2 = pq("x*y^2 + y^3 + z^3");
    PrecBounds b = prec_bounds_exact(q5, {f1, f2}, 3);
    const int m = std::max({b.prec_mf5 + 1, 2});
    const int prec = 10;

    SystemInput base = SystemInput::from_rationals(q5, {f1, f2}, 3, prec);
    auto base_lms = lm_set(weak_mf5(base));

    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Polynomial<Element>> F;
        for (const auto& f : {f1, f2}) {
            std::vector<Polynomial<Element>::Term> terms;
            int deg = f.degree();
            for (const auto& mon : monomials_of_degree(3, deg, kO3)) {
                auto c = f.coefficient(mon);
                Int v = c ? boost::multiprecision::numerator(*c) : Int(0);
                // perturb every slot by an element of p^m R
                v += q5.pow(m) * Int(rng.digit(25));
                if (v == 0 && !c) continue;
                terms.push_back({mon, Element::from_int(q5, v, prec)});
            }
            F.push_back(Polynomial<Element>(kO3, std::move(terms)));
        }
        GroebnerResult r = weak_mf5(SystemInput::create(q5, F, 3));
        CHECK(lm_set(r) == base_lms);
    }
}

TEST_CASE("agreement with the exact oracle on structured random systems") {
    Rng rng(1234);
    Field q5(FieldKind::PAdic, 5);
    int done = 0;
    while (done < 5) {
        std::vector<PolyQ> F;
        for (int d : {2, 3}) {
            std::vector<PolyQ::Term> terms;
            for (const auto& m : monomials_of_degree(3, d, kO3)) {
                long long c = static_cast<long long>(rng.digit(7)) - 3;
                if (c == 0) c = 2;
                terms.push_back({m, Rational(c)});
            }
            F.push_back(PolyQ(kO3, std::move(terms)));
        }
        if (!check_regular_sequence(F) || !check_weakly_w(F, kO3)) continue;
        ++done;
        auto oracle = buchberger_reduced(F);
        int cap = 0;
        for (const auto& g : oracle.basis) cap = std::max(cap, g.degree());
        for (const auto& f : F) cap = std::max(cap, f.degree());
        PrecBounds b = prec_bounds_exact(q5, F, cap);
        int m = 2 * b.prec_mf5 + 5;
        GroebnerResult r = weak_mf5(SystemInput::from_rationals(q5, F, cap, m));
        REQUIRE(r.basis.size() == oracle.basis.size());
        for (size_t k = 0; k < r.basis.size(); ++k)
            CHECK(r.basis[k].leading_monomial() == oracle.basis[k].leading_monomial());
    }
}
