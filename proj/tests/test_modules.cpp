#include <bggkit/verma.hpp>

#include <gtest/gtest.h>

using namespace bggkit;

namespace {

const RootDatum A1 = build_root_datum("A1");
const RootDatum A2 = build_root_datum("A2");
const RootDatum B2 = build_root_datum("B2");

Scalar entry(const Matrix& m) { return m(0, 0); }

} // namespace

TEST(Verma, Sl2ActionFormula)
{
    // E F^(n) v = (lam - n + 1) F^(n-1) v
    for (int lam : {0, 2, -3}) {
        auto m = verma(A1, {lam}, 6);
        for (int n = 1; n <= 6; ++n)
            EXPECT_EQ(entry(m->E(0, 1, {lam - 2 * n})), Scalar(lam - n + 1)) << lam << " " << n;
        // F F^(n) = (n + 1) F^(n+1)
        for (int n = 0; n < 6; ++n)
            EXPECT_EQ(entry(m->F(0, 1, {lam - 2 * n})), Scalar(n + 1));
    }
}

TEST(Verma, OverF2)
{
    auto m = verma(A1, {1}, 3, Field::prime(2));
    EXPECT_TRUE(m->E(0, 1, {-3}).is_zero());
    EXPECT_FALSE(m->F(0, 2, {1}).is_zero());
    EXPECT_TRUE(m->F(0, 1, {-1}).is_zero());  // F F v = 2 F^(2) v
}

TEST(Verma, CharactersMatchPartitionFunction)
{
    for (auto* rd : {&A1, &A2, &B2}) {
        Weight lam(rd->rank(), 1);
        auto m = verma(*rd, lam, 5);
        EXPECT_EQ(m->character().mult, verma_character(*rd, lam, 5).mult);
    }
    EXPECT_EQ(verma(A2, {0, 0}, 2)->dim(from_root_coords(A2, {-1, -1})), 2u);
}

TEST(Verma, RelationAudit)
{
    for (auto* rd : {&A1, &A2, &B2})
        for (unsigned p : {0u, 2u, 3u}) {
            Field f = p ? Field::prime(p) : Field::rationals();
            Weight lam(rd->rank(), 0);
            lam[0] = 1;
            auto rep = audit_relations(*verma(*rd, lam, 5, f), 4);
            EXPECT_TRUE(rep.ok()) << rd->label() << " p=" << p << " " << (rep.ok() ? "" : rep.failures.front());
            EXPECT_GT(rep.checks, 20u);
        }
}

TEST(Verma, AuditCatchesCorruption)
{
    TruncatedModule m = *verma(A1, {0}, 4);
    Matrix bad = m.E(0, 1, {-4});
    bad(0, 0) += Scalar(1);
    m.set_op(+1, 0, 1, {-4}, bad);
    EXPECT_FALSE(audit_relations(m).ok());
}

TEST(Contragredient, Basics)
{
    auto m = verma(A1, {0}, 5);
    auto dm = contragredient(*m);
    EXPECT_EQ(dm.character().mult, m->character().mult);
    EXPECT_TRUE(dm.F(0, 1, {0}).is_zero());
    auto ddm = contragredient(dm);
    EXPECT_EQ(ddm.ops(), m->ops());
    EXPECT_TRUE(audit_relations(dm).ok());
}

TEST(Contragredient, SwapsInjectiveAndSurjective)
{
    auto p = enumerate_weyl(A1);
    auto f = verma_embedding(p, p.elements[1], p.elements[0], {2}, 8);
    EXPECT_TRUE(map_is_injective(f));
    EXPECT_FALSE(map_is_surjective(f));
    auto da = share(contragredient(*f.src)), db = share(contragredient(*f.tgt));
    auto g = contragredient_map(f, da, db);
    EXPECT_TRUE(is_module_map(g));
    EXPECT_TRUE(map_is_surjective(g));
    EXPECT_FALSE(map_is_injective(g));
}

TEST(SingularVectors, Sl2)
{
    auto m0 = verma(A1, {0}, 4);
    EXPECT_EQ(singular_vectors(*m0, {-2}).cols(), 1u);
    auto m2 = verma(A1, {2}, 5);
    EXPECT_EQ(singular_vectors(*m2, {-4}).cols(), 1u);
    EXPECT_EQ(singular_vectors(*m2, {0}).cols(), 0u);
    EXPECT_THROW(singular_vectors(*m2, {-20}), DomainError);
    // over F_p more singular vectors appear: M(0) over F_2 at -4 (F^(2) v)
    auto m0p = verma(A1, {0}, 4, Field::prime(2));
    EXPECT_EQ(singular_vectors(*m0p, {-2}).cols(), 1u);
    EXPECT_EQ(singular_vectors(*m0p, {-4}).cols(), 0u);  // E^(2) F^(2) v = binom(0,2)... = 0, but E F^(2) v = -F v != 0
}

TEST(WeylModule, Dimensions)
{
    auto w = weyl_module(A1, {2}, Field::prime(3));
    EXPECT_EQ(w->total_dim(), 3u);
    EXPECT_EQ(w->dim({2}), 1u);
    EXPECT_EQ(w->dim({-2}), 1u);
    EXPECT_EQ(weyl_module(A1, {0})->total_dim(), 1u);
    EXPECT_EQ(weyl_module(A2, {1, 0}, Field::prime(2))->total_dim(), 3u);
    for (unsigned p : {0u, 2u, 3u}) {
        Field f = p ? Field::prime(p) : Field::rationals();
        for (auto lam : {Weight{1, 1}, Weight{2, 1}}) {
            auto w2 = weyl_module(A2, lam, f);
            EXPECT_EQ(w2->character().mult, weyl_character(A2, lam).mult) << p;
            EXPECT_TRUE(audit_relations(*w2).ok());
        }
        auto wb = weyl_module(B2, {1, 1}, f);
        EXPECT_EQ(wb->character().mult, weyl_character(B2, {1, 1}).mult) << p;
        EXPECT_TRUE(audit_relations(*wb).ok());
    }
    EXPECT_THROW(weyl_module(A1, {-1}), DomainError);
}

TEST(WeylModule, Rank1GeneratedQuotientAgrees)
{
    for (unsigned p : {0u, 2u, 3u, 5u}) {
        Field f = p ? Field::prime(p) : Field::rationals();
        for (int lam = 0; lam <= 6; ++lam) {
            auto a = weyl_module(A1, {lam}, f, lam + 1);
            auto b = weyl_module_rank1(lam, f, lam + 1);
            EXPECT_EQ(a->character().mult, b->character().mult);
            EXPECT_TRUE(find_isomorphism(a, b).has_value()) << p << " " << lam;
        }
    }
}

TEST(WeylModule, DiffersFromSimpleInSmallCharacteristic)
{
    // over F_2, W(2) has dimension 3 while the canonical image M -> DM is 2-dimensional
    EXPECT_EQ(weyl_module(A1, {2}, Field::prime(2))->total_dim(), 3u);
    EXPECT_EQ(canonical_image(A1, {2}, Field::prime(2))->total_dim(), 2u);
    EXPECT_EQ(canonical_image(A1, {2})->total_dim(), 3u);
}

TEST(WeylModule, CoweylIsDual)
{
    auto w = weyl_module(A2, {1, 1}, Field::prime(3));
    auto dw = coweyl_module(A2, {1, 1}, Field::prime(3));
    EXPECT_EQ(dw->character().mult, w->character().mult);
    EXPECT_TRUE(audit_relations(*dw).ok());
}

TEST(Embedding, Sl2)
{
    auto p = enumerate_weyl(A1);
    auto f = verma_embedding(p, p.elements[1], p.elements[0], {2}, 8);
    EXPECT_EQ(f.src->top(), Weight{-4});
    // generator goes to F^(3) v with coefficient 1
    EXPECT_EQ(entry(f.block({-4})), Scalar(1));
    EXPECT_TRUE(is_module_map(f));
    EXPECT_TRUE(map_is_injective(f));
}

TEST(Embedding, A2SimpleCase)
{
    auto p = enumerate_weyl(A2);
    auto f = verma_embedding(p, p.element("s1"), p.identity(), {0, 0}, 4);
    Matrix blk = f.block({-2, 1});
    ASSERT_EQ(blk.rows(), 1u);
    EXPECT_EQ(blk(0, 0), Scalar(1));
    EXPECT_TRUE(is_module_map(f));
    EXPECT_THROW(verma_embedding(p, p.element("s1s2"), p.element("s1"), {-1, 0}, 4), DomainError);
    EXPECT_THROW(verma_embedding(p, p.element("s2"), p.element("s1"), {0, 0}, 4), DomainError);
}

TEST(Lattice, A1)
{
    auto p = enumerate_weyl(A1);
    auto lat = submodule_lattice(p, {2}, 8);
    std::size_t codim = 0;
    for (auto& mu : lat.verma->weights())
        codim += lat.verma->dim(mu) - lat.images[1].at(mu).cols();
    EXPECT_EQ(codim, 3u);
    for (auto& mu : lat.verma->weights())
        EXPECT_EQ(lat.images[0].at(mu).cols(), lat.verma->dim(mu));
}

TEST(Lattice, A2OrderIsOppositeBruhat)
{
    for (unsigned pr : {0u, 2u, 3u, 5u}) {
        Field f = pr ? Field::prime(pr) : Field::rationals();
        auto p = enumerate_weyl(A2);
        auto lat = submodule_lattice(p, {0, 0}, 6, f);
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) {
                bool contained = subspace_contains(lat.images[a], lat.images[b]);
                if (p.leq[a][b]) {
                    EXPECT_TRUE(contained) << pr << " " << a << " " << b;
                }
                if (pr == 0) {
                    EXPECT_EQ(contained, static_cast<bool>(p.leq[a][b])) << a << " " << b;
                }
            }
        if (pr == 0) {
            EXPECT_FALSE(subspace_equal(lat.images[3], lat.images[4]));
            for (auto& s : lat.images)
                EXPECT_NO_THROW(submodule(lat.verma, s));
        }
    }
}

TEST(Lattice, IndependentOfReducedWord)
{
    for (auto* rd : {&A2, &B2}) {
        std::vector<int> alt = rd->tag == TypeTag::A2 ? std::vector<int>{1, 0, 1} : std::vector<int>{1, 0, 1, 0};
        auto p = enumerate_weyl(*rd), q = enumerate_weyl(*rd, alt);
        int depth = rd->tag == TypeTag::A2 ? 6 : 8;
        for (unsigned pr : {0u, 3u}) {
            Field f = pr ? Field::prime(pr) : Field::rationals();
            auto a = submodule_lattice(p, Weight(2, 0), depth, f), b = submodule_lattice(q, Weight(2, 0), depth, f);
            for (std::size_t k = 0; k < p.size(); ++k) {
                auto j = static_cast<std::size_t>(q.index_of_matrix(p.elements[k].matrix));
                EXPECT_TRUE(subspace_equal(a.images[k], b.images[j])) << rd->label() << " " << p.elements[k].name();
            }
        }
    }
}

TEST(Cokernel, Sl2WeylInclusion)
{
    // coker(DW_F(4) -> DM_F(4)) over F_3 has the character of M(-6)
    Field f3 = Field::prime(3);
    int depth = 10;
    auto m = verma(A1, {4}, depth, f3);
    auto dm = share(contragredient(*m));
    auto dw = coweyl_module(A1, {4}, f3, depth);
    auto homs = solve_homs(dw, dm);
    ASSERT_EQ(homs.size(), 1u);
    EXPECT_TRUE(map_is_injective(homs[0]));
    auto coker = map_cokernel(homs[0]);
    auto expect = verma_character(A1, {-6}, depth - 5);
    for (auto& [mu, k] : expect.mult)
        EXPECT_EQ(coker.module->dim(mu), static_cast<std::size_t>(k));
    EXPECT_EQ(coker.module->dim({4}) + coker.module->dim({2}) + coker.module->dim({-4}), 0u);
    EXPECT_TRUE(audit_relations(*coker.module).ok());
    // zero map: cokernel is the target
    auto z = zero_map(dw, dm);
    EXPECT_EQ(map_cokernel(z).module->character().mult, dm->character().mult);
}
