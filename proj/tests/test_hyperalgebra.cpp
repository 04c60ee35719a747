#include <bggkit/hyperalgebra.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace bggkit;

namespace {

struct Sl2 {
    Hyperalgebra U{build_root_datum("A1")};
    std::size_t F = U.negative_simple(0), H = U.cartan(0), E = U.positive_simple(0);
    std::vector<int> mono(int a, int c, int b) const { return {a, c, b}; }
};

} // namespace

TEST(Hyperalgebra, RealizationsHaveIntegralChevalleyConstants)
{
    for (auto t : {"A1", "A2", "B2"}) {
        Hyperalgebra U(build_root_datum(t));
        for (std::size_t a = 0; a < U.num_generators(); ++a)
            for (std::size_t b = 0; b < U.num_generators(); ++b)
                for (auto& c : U.bracket(a, b))
                    EXPECT_EQ(c.get_den(), 1);
    }
}

TEST(Hyperalgebra, Sl2Basics)
{
    Sl2 s;
    auto& U = s.U;
    auto f1 = U.divided(s.F, 1);
    EXPECT_EQ(U.divided_product(f1, f1, 10), U.divided(s.F, 2) * Scalar(2));
    // E F = F E + H
    auto ef = U.divided_product(U.divided(s.E, 1), f1, 10);
    EXPECT_EQ(ef, U.monomial(s.mono(1, 0, 1)) + U.divided(s.H, 1));
    EXPECT_THROW(U.divided_product(U.divided(s.F, 6), U.divided(s.F, 6), 10), DomainError);
}

TEST(Hyperalgebra, Specialization)
{
    Sl2 s;
    auto& U = s.U;
    Field f2 = Field::prime(2), f5 = Field::prime(5);
    EXPECT_TRUE(U.specialize(U.divided(s.F, 2) * Scalar(2), f2).is_zero());
    EXPECT_TRUE(U.specialize(U.divided(s.F, 5) * Scalar(5), f5).is_zero());
    EXPECT_FALSE(U.specialize(U.divided(s.F, 5), f5).is_zero());
    EXPECT_EQ(U.specialize(U.divided(s.E, 1) * Scalar(3), Field::rationals()), U.divided(s.E, 1) * Scalar(3));
    // F^(1) F^(1) over F_2 vanishes
    auto f1 = U.divided(s.F, 1, f2);
    EXPECT_TRUE(U.divided_product(f1, f1, 4).is_zero());
}

TEST(Hyperalgebra, AdNilpotency)
{
    Sl2 s;
    auto& U = s.U;
    EXPECT_EQ(U.adjoint_nilpotency_degree(s.F, U.divided(s.E, 1)), 3);
    EXPECT_EQ(U.adjoint_nilpotency_degree(s.F, U.divided(s.F, 1)), 1);
    EXPECT_EQ(U.adjoint_nilpotency_degree(s.F, U.divided(s.H, 1)), 2);
}

// Oracle: sl2 Kostant formula
// E^(a) F^(b) = sum_j F^(b-j) binom(H - a - b + 2j, j) E^(a-j),
// with binom(H + c, j) = sum_k C(c, j - k) binom(H, k).
TEST(Hyperalgebra, KostantCommutationSl2)
{
    Sl2 s;
    auto& U = s.U;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            AlgebraElement expect{Field::rationals(), {}};
            for (int j = 0; j <= std::min(a, b); ++j) {
                int c = -a - b + 2 * j;
                for (int k = 0; k <= j; ++k)
                    expect.add(s.mono(b - j, k, a - j), Scalar(binomial(c, j - k)));
            }
            auto got = U.divided_product(U.divided(s.E, a), U.divided(s.F, b), 20);
            EXPECT_EQ(got, expect) << a << " " << b;
        }
}

TEST(Hyperalgebra, VermaVectorAnnihilated)
{
    // E^(2) F^(2) v on M(1): the F, H, E normal form acting on v gives
    // sum over terms with no E, H evaluated at 1.
    Sl2 s;
    auto& U = s.U;
    auto x = U.divided_product(U.divided(s.E, 2), U.divided(s.F, 2), 10);
    mpq_class total = 0;
    for (auto& [m, c] : x.terms)
        if (m[2] == 0 && m[0] == 0)
            total += c.rational() * mpq_class(binomial(1, m[1]));
    EXPECT_EQ(total, 0);
}

TEST(Hyperalgebra, DividedPowersOfSimpleGenerators)
{
    for (auto t : {"A2", "B2"}) {
        Hyperalgebra U(build_root_datum(t));
        for (std::size_t i = 0; i < 2; ++i)
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; b <= 3; ++b) {
                    auto g = U.negative_simple(i);
                    EXPECT_EQ(U.divided_product(U.divided(g, a), U.divided(g, b), 12),
                              U.divided(g, a + b) * Scalar(binomial(a + b, a)));
                }
    }
}

TEST(Hyperalgebra, AssociativityAndIntegrality)
{
    std::mt19937 rng(7);
    for (auto t : {"A2", "B2"}) {
        Hyperalgebra U(build_root_datum(t));
        std::size_t n = U.num_generators();
        auto random_mono = [&]() {
            for (;;) {
                std::vector<int> m(n, 0);
                for (int k = 0; k < 2; ++k)
                    ++m[rng() % n];
                if (U.height(m) <= 2)
                    return m;
            }
        };
        for (int trial = 0; trial < 25; ++trial) {
            auto x = U.monomial(random_mono()), y = U.monomial(random_mono()), z = U.monomial(random_mono());
            auto lhs = U.divided_product(U.divided_product(x, y, 6), z, 6);
            auto rhs = U.divided_product(x, U.divided_product(y, z, 6), 6);
            EXPECT_EQ(lhs, rhs);
            for (auto& [m, c] : lhs.terms)
                EXPECT_TRUE(c.is_integral());
        }
    }
}

TEST(Hyperalgebra, ConvexOrderChangesOnlyTheOrdering)
{
    auto rd = build_root_datum("A2");
    Hyperalgebra U(rd), V(rd, {1, 0, 1});
    EXPECT_NE(U.convex_order(), V.convex_order());
    // E_1 F_1 expands to F_1 E_1 + H_1 in both conventions
    for (Hyperalgebra* A : {&U, &V}) {
        auto e = A->divided(A->positive_simple(0), 1), f = A->divided(A->negative_simple(0), 1);
        auto x = A->divided_product(e, f, 4);
        std::vector<int> fe(A->num_generators(), 0);
        fe[A->negative_simple(0)] = fe[A->positive_simple(0)] = 1;
        EXPECT_EQ(x, A->monomial(fe) + A->divided(A->cartan(0), 1));
    }
}
