#include <bggkit/io.hpp>

#include <gtest/gtest.h>

using namespace bggkit;

TEST(Io, LaurentAsExponentMap)
{
    Json j = to_json(quantum_integer(3));
    EXPECT_EQ(j.dump(), R"({"-2":"1","0":"1","2":"1"})");
    EXPECT_EQ(to_json(Laurent()).dump(), "{}");
}

TEST(Io, ComplexReportFields)
{
    RootDatum a1 = build_root_datum(TypeTag::A1);
    Json j = to_json(verify_complex(assemble_cousin(a1, {2}, 8, 3), 3));
    for (const char* key : {"id", "depth", "margin", "d2_ok", "cohomology", "h0_character", "euler_ok"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["depth"], 8);
    EXPECT_EQ(j["margin"], 3);
    EXPECT_EQ(j["h0_dim"], 3);
    EXPECT_EQ(j["h0_character"][0]["weight"], Json::array({-2}));
}

TEST(Io, CharacterCsvRows)
{
    RootDatum a2 = build_root_datum(TypeTag::A2);
    std::string csv = characters_csv({{"weyl", weyl_character(a2, {1, 0})}});
    EXPECT_EQ(csv, "table,w1,w2,multiplicity\nweyl,-1,1,1\nweyl,0,-1,1\nweyl,1,0,1\n");
}

TEST(Io, ModuleDump)
{
    RootDatum a1 = build_root_datum(TypeTag::A1);
    Json j = to_json(*verma(a1, {1}, 2, Field::prime(2)));
    EXPECT_EQ(j["field"], "F2");
    EXPECT_EQ(j["dims"].size(), 3u);
    EXPECT_EQ(to_json(*quantum_verma(1, 2))["ring"], "Z[v,1/v]");
}
