#include <weylkit/polynomial.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace weylkit;

TEST_CASE("binomial coefficients are exact for all integer arguments", "[polynomial]") {
    CHECK(binomial(Int(5), 2) == 10);
    CHECK(binomial(Int(0), 0) == 1);
    CHECK(binomial(Int(7), 0) == 1);
    CHECK(binomial(Int(4), 5) == 0);
    CHECK(binomial(Int(52), 5) == 2598960);

    // Falling-factorial definition extends to negative upper argument.
    CHECK(binomial(Int(-1), 3) == -1);
    CHECK(binomial(Int(-2), 2) == 3);
    CHECK(binomial(Int(-3), 4) == 15);
    CHECK(binomial(Int(-1), 0) == 1);
}

TEST_CASE("parsing and evaluation golden cases", "[polynomial]") {
    CHECK(parse_polynomial("n^2").eval(Int(5)) == 25);
    CHECK(parse_polynomial("2n^3 - n").eval(Int(3)) == 51);
    CHECK(parse_polynomial("binom(n,2)").eval(Int(4)) == 6);
    CHECK(parse_polynomial("binom(2n,2)").eval(Int(3)) == 15);
    CHECK(parse_polynomial("n^2/2 - n/2").eval(Int(9)) == 36);
    CHECK(parse_polynomial("(n+1)(n+2)/2 - 1").eval(Int(0)) == 0);
    CHECK(parse_rational_polynomial("n^2 n").eval(Rat(2)) == 8);
    CHECK(parse_rational_polynomial("n/2").eval(Rat(7)) == Rat(7, 2));
    CHECK(parse_rational_polynomial("-n + 3").eval(Rat(1)) == 2);

    // Big-integer evaluation stays exact.
    Int big = boost::multiprecision::pow(Int(10), 20);
    CHECK(parse_polynomial("n^4").eval(big) == boost::multiprecision::pow(Int(10), 80));
}

TEST_CASE("parser reports the offending position", "[polynomial]") {
    auto pos_of = [](const std::string& text) -> std::size_t {
        try {
            parse_rational_polynomial(text);
        } catch (const ParseError& e) {
            return e.pos;
        }
        FAIL("expected ParseError for: " << text);
        return static_cast<std::size_t>(-1);
    };
    CHECK(pos_of("2x") == 1);
    CHECK(pos_of("") == 0);
    CHECK(pos_of("n/n") == 1);
    CHECK(pos_of("n^") == 2);
    CHECK(pos_of("binom(n)") == 7);
    CHECK_THROWS_AS(parse_rational_polynomial("(n"), ParseError);
    CHECK_THROWS_AS(parse_rational_polynomial("foo"), ParseError);
}

TEST_CASE("integrality failures name the first bad binomial coefficient", "[polynomial]") {
    try {
        parse_polynomial("n/2");
        FAIL("n/2 is not integer-valued");
    } catch (const IntegralityError& e) {
        CHECK(e.index == 1);
        CHECK(e.value == Rat(1, 2));
    }
    try {
        parse_polynomial("n^2/2");
        FAIL("n^2/2 is not integer-valued");
    } catch (const IntegralityError& e) {
        CHECK(e.index == 1);
        CHECK(e.value == Rat(1, 2));
    }
    // binom(n,2) = n^2/2 - n/2 is integer-valued even with fractional monomials.
    CHECK(parse_polynomial("n^2/2 - n/2").binom_coeffs() == std::vector<Int>{0, 0, 1});
}

TEST_CASE("values constructor interpolates finite differences", "[polynomial]") {
    IntegralPolynomial p = IntegralPolynomial::from_values({Int(0), Int(0), Int(1)});
    CHECK(p == parse_polynomial("binom(n,2)"));
    CHECK(p.eval(Int(4)) == 6);
    CHECK(IntegralPolynomial::from_values({Int(3)}) == IntegralPolynomial::constant(3));
}

TEST_CASE("monomial conversions round trip", "[polynomial]") {
    testkit::Rng rng(0x5eed0001ull);
    for (int t = 0; t < 50; ++t) {
        IntegralPolynomial p = testkit::random_poly(rng, 4);
        CHECK(IntegralPolynomial::from_monomial(p.to_monomial()) == p);
        CHECK(parse_polynomial(p.str()) == p);
    }
    // Rational round trip through text as well.
    RationalPolynomial q(std::vector<Rat>{Rat(0), Rat(-1, 2), Rat(0), Rat(2, 3)});
    CHECK(parse_rational_polynomial(q.str()) == q);
}

TEST_CASE("binomial transform golden cases", "[polynomial]") {
    IntegralPolynomial p = parse_polynomial("2n");
    CHECK(p.binomial_transform(1) == p);
    CHECK(p.binomial_transform(0) == IntegralPolynomial::constant(1));

    // binom(2n,2) = binom(n,1) + 4*binom(n,2).
    CHECK(p.binomial_transform(2).binom_coeffs() == std::vector<Int>{0, 1, 4});
    CHECK(p.binomial_transform(2).eval(Int(2)) == 6);

    CHECK(parse_polynomial("n").binomial_transform(2) == parse_polynomial("binom(n,2)"));
    CHECK(parse_polynomial("n^2").binomial_transform(2).eval(Int(3)) == binomial(Int(9), 2));

    // Constants collapse to binom(c, k).
    CHECK(IntegralPolynomial::constant(4).binomial_transform(2) == IntegralPolynomial::constant(6));
    CHECK(IntegralPolynomial().binomial_transform(3) == IntegralPolynomial());
}

TEST_CASE("binomial transform agrees with pointwise binomials", "[polynomial][property]") {
    testkit::Rng rng(0x5eed0002ull);
    for (int t = 0; t < 40; ++t) {
        IntegralPolynomial p = testkit::random_poly(rng, 3);
        for (unsigned k = 1; k <= 3; ++k) {
            IntegralPolynomial tf = p.binomial_transform(k);
            for (long long n = -6; n <= 6; ++n)
                CHECK(tf.eval(Int(n)) == binomial(p.eval(Int(n)), k));
        }
    }
}

TEST_CASE("composition matches nested evaluation", "[polynomial]") {
    IntegralPolynomial sq = parse_polynomial("n^2");
    IntegralPolynomial shift = parse_polynomial("n + 1");
    CHECK(sq.compose(shift) == parse_polynomial("n^2 + 2n + 1"));

    testkit::Rng rng(0x5eed0003ull);
    for (int t = 0; t < 25; ++t) {
        IntegralPolynomial p = testkit::random_poly(rng, 3);
        IntegralPolynomial q = testkit::random_poly(rng, 2);
        IntegralPolynomial c = p.compose(q);
        for (long long n = -5; n <= 5; ++n) CHECK(c.eval(Int(n)) == p.eval(q.eval(Int(n))));
    }
}

TEST_CASE("ring operations agree with pointwise arithmetic", "[polynomial][property]") {
    testkit::Rng rng(0x5eed0004ull);
    for (int t = 0; t < 40; ++t) {
        IntegralPolynomial p = testkit::random_poly(rng, 4);
        IntegralPolynomial q = testkit::random_poly(rng, 4);
        Int s = Int(rng.in_range(-5, 5));
        for (long long n = -4; n <= 4; ++n) {
            CHECK((p + q).eval(Int(n)) == p.eval(Int(n)) + q.eval(Int(n)));
            CHECK((p - q).eval(Int(n)) == p.eval(Int(n)) - q.eval(Int(n)));
            CHECK((-p).eval(Int(n)) == -p.eval(Int(n)));
            CHECK(p.scaled(s).eval(Int(n)) == s * p.eval(Int(n)));
        }
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("essential distinctness detects constant gaps", "[polynomial]") {
    auto fam = [](std::initializer_list<const char*> texts) {
        std::vector<IntegralPolynomial> ps;
        for (const char* t : texts) ps.push_back(parse_polynomial(t));
        return ps;
    };
    CHECK(essentially_distinct(fam({"n", "2n"})));
    CHECK(essentially_distinct(fam({"n", "n^2"})));
    CHECK(essentially_distinct(fam({"n^2", "n^2 + n"})));
    CHECK_FALSE(essentially_distinct(fam({"n", "n + 1"})));
    CHECK_FALSE(essentially_distinct(fam({"n", "2n", "n"})));
    CHECK_FALSE(essentially_distinct(fam({"3"})));
    CHECK(essentially_distinct(fam({"n"})));
}

TEST_CASE("degree sentinels and zero handling", "[polynomial]") {
    CHECK(IntegralPolynomial().degree() == kNegInfDegree);
    CHECK(RationalPolynomial().degree() == kNegInfDegree);
    CHECK(IntegralPolynomial().is_zero());
    CHECK(IntegralPolynomial().str() == "0");
    CHECK(IntegralPolynomial::constant(0).is_zero());
    CHECK(parse_polynomial("n - n").is_zero());
    CHECK(parse_polynomial("0").is_zero());
    CHECK(IntegralPolynomial::constant(7).degree() == 0);
    CHECK(parse_polynomial("n^3").degree() == 3);
    CHECK(parse_polynomial("2n^3 - n^4").str() == "2*n^3 - n^4");
}
