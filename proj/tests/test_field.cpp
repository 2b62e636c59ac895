#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumcast/field.hpp"
#include "sumcast/matrix.hpp"
#include "sumcast/rng.hpp"

using namespace sumcast;

TEST_CASE("field spec parsing round-trips") {
    CHECK(FieldSpec::parse("prime:3").kind == FieldKind::Prime);
    CHECK(FieldSpec::parse("prime:3").modulus == 3);
    CHECK(FieldSpec::parse("gf2m:8").kind == FieldKind::BinaryExtension);
    CHECK(FieldSpec::parse("gf2m:8").str() == "gf2m:8");
    CHECK_THROWS_AS(FieldSpec::parse("weird:3"), FieldError);
    CHECK_THROWS_AS(FieldSpec::parse("prime"), FieldError);
}

TEST_CASE("prime field construction validates the modulus") {
    CHECK_THROWS_AS(Field{FieldSpec::prime(4)}, FieldError);
    CHECK_THROWS_AS(Field{FieldSpec::prime(1)}, FieldError);
    Field f3{FieldSpec::prime(3)};
    CHECK(f3.add(2, 2) == 1);
    CHECK(f3.sub(0, 1) == 2);
    CHECK(f3.mul(2, 2) == 1);
    CHECK(f3.inv(2) == 2);
    Field f2{FieldSpec::prime(2)};
    CHECK(f2.add(1, 1) == 0);
}

TEST_CASE("binary extension arithmetic reduces by the fixed polynomial") {
    Field f8{FieldSpec::gf2m(3)}; // x^3 + x + 1
    CHECK(f8.mul(0b010, 0b100) == 0b011); // x * x^2 = x + 1
    CHECK(f8.add(5, 5) == 0);
    for (FieldElem a = 1; a < f8.size(); ++a) CHECK(f8.mul(a, f8.inv(a)) == 1);
    CHECK_THROWS_AS(Field{FieldSpec::gf2m(4, 0b10101)}, FieldError); // x^4+x^2+1 = (x^2+x+1)^2
    CHECK_THROWS_AS(Field{FieldSpec::gf2m(2, 0b101)}, FieldError);   // x^2 + 1 = (x+1)^2
    CHECK_THROWS_AS(Field{FieldSpec::gf2m(17)}, FieldError);
}

TEST_CASE("every stored reduction polynomial is irreducible") {
    for (std::uint32_t m = 1; m <= 16; ++m) {
        CAPTURE(m);
        Field f{FieldSpec::gf2m(m)};
        CHECK(f.size() == (1u << m));
        // spot-check inverses at the field edges
        CHECK(f.mul(f.size() - 1, f.inv(f.size() - 1)) == 1);
    }
}

TEST_CASE("field axioms hold exhaustively on the small fields") {
    for (const char* spec : {"prime:2", "prime:3", "prime:5", "gf2m:2", "gf2m:3"}) {
        CAPTURE(spec);
        Field f{FieldSpec::parse(spec)};
        auto elems = f.elements();
        for (FieldElem a : elems) {
            CHECK(f.add(a, f.zero()) == a);
            CHECK(f.mul(a, f.one()) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (FieldElem b : elems) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (FieldElem c : elems) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("rank examples") {
    Field f3{FieldSpec::prime(3)};
    CHECK(mat_rank(f3, Matrix::from_rows({{1, 0}, {0, 1}})) == 2);
    Field f5{FieldSpec::prime(5)};
    CHECK(mat_rank(f5, Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
    Field f2{FieldSpec::prime(2)};
    CHECK(mat_rank(f2, Matrix::from_rows({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("rank is invariant under row order (independent elimination)") {
    Rng rng(7);
    for (const char* spec : {"prime:2", "prime:3", "prime:5", "gf2m:3"}) {
        Field f{FieldSpec::parse(spec)};
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
            Matrix m(rows, cols);
            for (auto& x : m.a) x = f.from_int(rng.next());
            std::vector<std::size_t> order(rows);
            for (std::size_t i = 0; i < rows; ++i) order[i] = i;
            for (std::size_t i = rows; i > 1; --i)
                std::swap(order[i - 1], order[rng.below(i)]);
            CHECK(mat_rank(f, m) == testing::rank_oracle(f, m, order));
        }
    }
}

TEST_CASE("determinant matches singularity") {
    Field f3{FieldSpec::prime(3)};
    CHECK(mat_det(f3, Matrix::from_rows({{1, 2}, {0, 1}})) == 1);
    CHECK(mat_det(f3, Matrix::from_rows({{2, 1}, {1, 1}})) == f3.sub(f3.mul(2, 1), f3.mul(1, 1)));
    CHECK(mat_det(f3, Matrix::from_rows({{1, 2}, {2, 1}})) == 0); // second row = 2 * first
}

TEST_CASE("span membership: worked examples") {
    Field f2{FieldSpec::prime(2)};
    auto r = in_span(f2, {1, 1}, Matrix::from_rows({{1, 0}, {0, 1}}));
    REQUIRE(r.in_span);
    CHECK(r.coeffs == std::vector<FieldElem>{1, 1});

    Field f3{FieldSpec::prime(3)};
    auto r2 = in_span(f3, {1, 1, 1}, Matrix::from_rows({{2, 1, 0}, {0, 1, 2}}));
    REQUIRE(r2.in_span);
    CHECK(r2.coeffs == std::vector<FieldElem>{2, 2});

    for (const char* spec : {"prime:2", "prime:3", "prime:5", "gf2m:3"}) {
        Field f{FieldSpec::parse(spec)};
        auto r3 = in_span(f, {1, 1, 1}, Matrix::from_rows({{1, 1, 0}, {0, 1, 1}}));
        CHECK_FALSE(r3.in_span);
        CHECK(r3.rank_aug == r3.rank_rows + 1);
    }
}

TEST_CASE("span membership equals exhaustive combination search") {
    Rng rng(11);
    for (const char* spec : {"prime:2", "prime:3", "prime:5", "prime:7", "gf2m:2", "gf2m:3"}) {
        CAPTURE(spec);
        Field f{FieldSpec::parse(spec)};
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t rows = rng.below(4), cols = 1 + rng.below(3);
            Matrix m(rows, cols);
            for (auto& x : m.a) x = f.from_int(rng.next());
            std::vector<FieldElem> target(cols);
            for (auto& x : target) x = f.from_int(rng.next());
            auto got = in_span(f, target, m);
            CHECK(got.in_span == testing::exhaustive_in_span(f, target, m));
            if (got.in_span) {
                std::vector<FieldElem> acc(cols, 0);
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < cols; ++j)
                        acc[j] = f.add(acc[j], f.mul(got.coeffs[i], m.at(i, j)));
                CHECK(acc == target);
            }
        }
    }
}
