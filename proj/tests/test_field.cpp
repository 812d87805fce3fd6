#include "flagstrata/field.hpp"

#include <doctest.h>

#include <random>

using namespace flagstrata;

namespace {

std::vector<FieldCtx> sample_contexts() {
    return {FieldCtx::rationals(),      FieldCtx::gaussian_rationals(),
            FieldCtx::prime(3),         FieldCtx::prime(5),
            FieldCtx::prime(13),        FieldCtx::prime_power(3, 2),
            FieldCtx::prime_power(5, 2), FieldCtx::prime_power(3, 4),
            FieldCtx::make("Q[rt:2]"),  FieldCtx::make("Qi[rt:1+1i]")};
}

FieldElement random_element(const FieldCtx& F, std::mt19937_64& rng) {
    if (F.finite()) return F.element_at(rng() % F.order());
    std::vector<Rational> coords(F.degree());
    for (auto& c : coords)
        c = Rational(static_cast<std::int64_t>(rng() % 41) - 20,
                     static_cast<std::int64_t>(rng() % 9) + 1);
    return F.from_coords(coords);
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("descriptor construction") {
    CHECK(FieldCtx::make("Fp:3").characteristic() == 3);
    CHECK(FieldCtx::make("Fp:3").order() == 3);
    CHECK_THROWS_AS(FieldCtx::make("Fp:2"), DomainError);
    CHECK_THROWS_AS(FieldCtx::prime(2), DomainError);
    CHECK_THROWS_AS(FieldCtx::make("Fp:9"), DomainError);
    CHECK_THROWS_AS(FieldCtx::make("Fq:3^3"), DomainError);
    CHECK_THROWS_AS(FieldCtx::make("nonsense"), ParseError);

    const FieldCtx qi = FieldCtx::make("Qi");
    CHECK(qi.kind() == FieldKind::GaussianRational);
    const FieldElement i = qi.parse("1i");
    CHECK(i * i == qi.integer(-1));

    CHECK(FieldCtx::make("Q").kind() == FieldKind::Rational);
    CHECK(FieldCtx::make("Fq:3^2").order() == 9);
    CHECK(FieldCtx::of_order(49) == FieldCtx::prime_power(7, 2));
    for (const FieldCtx& F : sample_contexts())
        CHECK(FieldCtx::make(F.descriptor()) == F);
}

TEST_CASE("deterministic moduli") {
    using P = std::vector<std::int64_t>;
    CHECK(FieldCtx::prime_power(3, 2).modulus() == P{1, 0, 1});
    CHECK(FieldCtx::prime_power(5, 2).modulus() == P{2, 0, 1});
    CHECK(FieldCtx::prime_power(7, 2).modulus() == P{1, 0, 1});
    CHECK(FieldCtx::prime_power(11, 2).modulus() == P{1, 0, 1});
    CHECK(FieldCtx::prime_power(13, 2).modulus() == P{2, 0, 1});
    CHECK(FieldCtx::prime_power(3, 4).modulus() == P{2, 1, 0, 0, 1});
    CHECK(FieldCtx::prime_power(5, 4).modulus() == P{2, 0, 0, 0, 1});
    CHECK(FieldCtx::prime_power(7, 4).modulus() == P{1, 1, 0, 0, 1});
}

TEST_CASE("element parsing") {
    const FieldCtx qi = FieldCtx::gaussian_rationals();
    const FieldElement x = qi.parse("1-1i");
    CHECK(x == qi.from_coords(std::vector<Rational>{1, -1}));

    CHECK(FieldCtx::prime(5).parse("7") == FieldCtx::prime(5).integer(2));
    CHECK(FieldCtx::prime(3).parse("1/2") == FieldCtx::prime(3).integer(2));
    CHECK(FieldCtx::rationals().parse("-3/4") ==
          FieldCtx::rationals().rational(Rational(-3, 4)));
    CHECK(FieldCtx::prime_power(3, 2).parse("[1,2]") ==
          FieldCtx::prime_power(3, 2).from_coords(std::vector<std::int64_t>{1, 2}));

    CHECK_THROWS_AS(qi.parse(""), ParseError);
    CHECK_THROWS_AS(qi.parse("1+"), ParseError);
    CHECK_THROWS_AS(qi.parse("x"), ParseError);
    CHECK_THROWS_AS(FieldCtx::rationals().parse("1/0"), ParseError);
    CHECK_THROWS_AS(FieldCtx::prime(3).parse("1/3"), DomainError);
    CHECK_THROWS_AS(FieldCtx::prime_power(3, 2).parse("[1,2,0]"), ParseError);
}

TEST_CASE("print/parse round trip") {
    std::mt19937_64 rng(20260810);
    for (const FieldCtx& F : sample_contexts()) {
        for (int n = 0; n < 50; ++n) {
            const FieldElement x = random_element(F, rng);
            CAPTURE(F.descriptor());
            CAPTURE(x.str());
            CHECK(F.parse(x.str()) == x);
        }
    }
}

TEST_CASE("field axioms, randomized") {
    std::mt19937_64 rng(1234);
    for (const FieldCtx& F : sample_contexts()) {
        CAPTURE(F.descriptor());
        for (int n = 0; n < 40; ++n) {
            const FieldElement a = random_element(F, rng);
            const FieldElement b = random_element(F, rng);
            const FieldElement c = random_element(F, rng);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + (-a)).is_zero());
            CHECK(a * F.one() == a);
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        }
    }
}

TEST_CASE("sqrt_or_extend spec examples") {
    const FieldCtx f7 = FieldCtx::prime(7);
    const SqrtOutcome r1 = sqrt_or_extend(f7.integer(4));
    CHECK(r1.root == f7.integer(2));
    CHECK_FALSE(r1.extended);
    CHECK(r1.field == f7);

    const FieldCtx f3 = FieldCtx::prime(3);
    // brute-force: 2 has no root in F_3 but has one in F_9
    bool root_in_f3 = false;
    for (std::uint64_t i = 0; i < 3; ++i)
        if (f3.element_at(i) * f3.element_at(i) == f3.integer(2)) root_in_f3 = true;
    CHECK_FALSE(root_in_f3);
    const SqrtOutcome r2 = sqrt_or_extend(f3.integer(2));
    CHECK(r2.extended);
    CHECK(r2.field == FieldCtx::prime_power(3, 2));
    CHECK(r2.root * r2.root == r2.field.integer(2));

    const SqrtOutcome r3 = sqrt_or_extend(FieldCtx::rationals().integer(-1));
    CHECK(r3.extended);
    CHECK(r3.field == FieldCtx::gaussian_rationals());
    CHECK(r3.root == r3.field.parse("1i"));

    const SqrtOutcome r0 = sqrt_or_extend(f7.zero());
    CHECK_FALSE(r0.extended);
    CHECK(r0.root.is_zero());
}

TEST_CASE("sqrt agrees with exhaustive search, all supported q <= 49 plus 81") {
    for (std::uint64_t q : {3ull, 5ull, 7ull, 9ull, 11ull, 13ull, 17ull, 19ull, 23ull, 25ull,
                            29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 49ull, 81ull}) {
        const FieldCtx F = FieldCtx::of_order(q);
        CAPTURE(q);
        for (std::uint64_t i = 0; i < q; ++i) {
            const FieldElement a = F.element_at(i);
            FieldElement best;
            bool found = false;
            for (std::uint64_t j = 0; j < q; ++j) {
                const FieldElement x = F.element_at(j);
                if (x * x == a) {
                    if (!found || x.cmp(best) < 0) best = x;
                    found = true;
                }
            }
            CHECK(is_square(a) == found);
            if (!found && F.degree() == 4) {
                CHECK_THROWS_AS(sqrt_or_extend(a), ExtensionBudgetError);
                continue;
            }
            const SqrtOutcome out = sqrt_or_extend(a);
            CHECK(out.extended == !found);
            if (found) {
                CHECK(out.root == best);  // lexicographically smaller root
                CHECK(out.field == F);
            } else {
                CHECK(lift(a, out.field) == out.root * out.root);
            }
        }
    }
}

TEST_CASE("embedding F_q -> F_q2 is a ring homomorphism, exhaustive q <= 13") {
    for (std::uint64_t q : {3ull, 5ull, 7ull, 9ull, 11ull, 13ull}) {
        const FieldCtx F = FieldCtx::of_order(q);
        const FieldCtx G = FieldCtx::of_order(q * q);
        CAPTURE(q);
        CHECK(relative_degree(F, G) == 2);
        CHECK(lift(F.zero(), G).is_zero());
        CHECK(lift(F.one(), G).is_one());
        for (std::uint64_t i = 0; i < q; ++i) {
            const FieldElement a = F.element_at(i);
            for (std::uint64_t j = 0; j < q; ++j) {
                const FieldElement b = F.element_at(j);
                CHECK(lift(a + b, G) == lift(a, G) + lift(b, G));
                CHECK(lift(a * b, G) == lift(a, G) * lift(b, G));
            }
        }
        // injective on a generator ladder: distinct elements stay distinct
        for (std::uint64_t i = 1; i < q; ++i)
            CHECK(lift(F.element_at(i), G) != lift(F.element_at(i - 1), G));
    }
}

TEST_CASE("rational and tower square roots") {
    const FieldCtx Q = FieldCtx::rationals();
    CHECK(sqrt_or_extend(Q.parse("9/4")).root == Q.parse("3/2"));
    CHECK(is_square(Q.parse("16")));
    CHECK_FALSE(is_square(Q.parse("8/9")));
    CHECK_FALSE(is_square(Q.parse("-4")));

    // Q(i): -4 becomes a square
    const FieldCtx Qi = FieldCtx::gaussian_rationals();
    const SqrtOutcome m4 = sqrt_or_extend(Qi.parse("-4"));
    CHECK_FALSE(m4.extended);
    CHECK(m4.root * m4.root == Qi.parse("-4"));
    CHECK(is_square(Qi.parse("2i")));  // (1+i)^2 = 2i

    // extension by sqrt(2), then arithmetic in Q(sqrt 2)
    const SqrtOutcome s2 = sqrt_or_extend(Q.parse("2"));
    CHECK(s2.extended);
    CHECK(s2.field.descriptor() == "Q[rt:2]");
    const FieldElement rt2 = s2.root;
    CHECK(rt2 * rt2 == s2.field.integer(2));
    CHECK((rt2 + s2.field.one()) * (rt2 - s2.field.one()) == s2.field.one());

    // sqrt of a tower element that is a square in the tower
    const FieldElement y = s2.field.parse("[3,1]");  // 3 + sqrt2
    const SqrtOutcome sy = sqrt_or_extend(y * y);
    CHECK_FALSE(sy.extended);
    CHECK(sy.root * sy.root == y * y);
}

TEST_CASE("extension budget") {
    // Q -> Q(rt2) -> Q(rt2, rt3) is the cap for a Q-based tower
    const FieldCtx t1 = FieldCtx::make("Q[rt:2]");
    const FieldCtx t2 = sqrt_or_extend(t1.integer(3)).field;
    CHECK(t2.degree() == 4);
    CHECK_THROWS_AS(sqrt_or_extend(t2.integer(5)), ExtensionBudgetError);
    try {
        sqrt_or_extend(t2.integer(5));
    } catch (const ExtensionBudgetError& e) {
        CHECK(e.radicand_chain.size() == 3);
        CHECK(e.radicand_chain.back() == "5");
    }
    // a leading i leaves room for two more adjunctions
    const FieldCtx g1 = FieldCtx::make("Qi[rt:2]");
    const FieldCtx g2 = sqrt_or_extend(g1.integer(3)).field;
    CHECK(g2.degree() == 8);
    CHECK_THROWS_AS(sqrt_or_extend(g2.integer(5)), ExtensionBudgetError);
    // finite fields stop at degree 4
    const FieldCtx f81 = FieldCtx::prime_power(3, 4);
    FieldElement nonsquare;
    for (std::uint64_t i = 0; i < 81; ++i)
        if (!is_square(f81.element_at(i))) {
            nonsquare = f81.element_at(i);
            break;
        }
    CHECK_THROWS_AS(sqrt_or_extend(nonsquare), ExtensionBudgetError);
}

TEST_CASE("canonical element order") {
    const FieldCtx Q = FieldCtx::rationals();
    // nonnegatives precede negatives; sqrt picks the smaller root
    CHECK(Q.parse("2").cmp(Q.parse("-2")) < 0);
    CHECK(Q.parse("0").cmp(Q.parse("1")) < 0);
    CHECK(Q.parse("-1").cmp(Q.parse("-2")) < 0);
    CHECK(sqrt_or_extend(Q.parse("4")).root == Q.parse("2"));
    const FieldCtx F13 = FieldCtx::prime(13);
    CHECK(sqrt_or_extend(F13.integer(-1)).root == F13.integer(5));  // 5^2 = -1, 5 < 8
}

}  // TEST_SUITE
