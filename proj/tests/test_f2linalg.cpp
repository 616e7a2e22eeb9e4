#include <random>
#include <stdexcept>

#include "cyclo2/f2linalg.hpp"
#include "doctest.h"

using namespace cyclo2;

static F2Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c)
{
    F2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng() & 1)
                m.set(i, j);
    return m;
}

TEST_CASE("rank of small matrices")
{
    auto e = rank_kernel_image(F2Matrix(0, 0));
    CHECK(e.rank == 0);
    CHECK(e.kernel.dim() == 0);
    CHECK(e.image.dim() == 0);

    auto id = rank_kernel_image(F2Matrix::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.kernel.dim() == 0);

    auto ones = F2Matrix::from_entries(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto o = rank_kernel_image(ones);
    CHECK(o.rank == 1);
    REQUIRE(o.kernel.dim() == 1);
    CHECK(o.kernel.vectors[0].get(0));
    CHECK(o.kernel.vectors[0].get(1));
}

TEST_CASE("solve")
{
    auto x = solve(F2Matrix::identity(3), unit_vector(3, 0));
    REQUIRE(x);
    CHECK(*x == unit_vector(3, 0));

    CHECK_FALSE(solve(F2Matrix(2, 2), unit_vector(2, 1)));

    auto row = F2Matrix::from_entries(1, 2, {{0, 0}, {0, 1}});
    auto z = solve(row, BitVec(1));
    REQUIRE(z);
    CHECK_FALSE(z->any());

    CHECK_THROWS_AS(solve(row, BitVec(2)), std::invalid_argument);
}

TEST_CASE("quotient coordinates")
{
    Echelon z(3);
    z.insert(unit_vector(3, 0));
    z.insert(unit_vector(3, 1));
    SubspaceBasis cycles = z.basis();

    CHECK_FALSE(quotient_coordinates(cycles, cycles, unit_vector(3, 1)).any());

    SubspaceBasis none;
    none.ambient_dim = 3;
    auto c = quotient_coordinates(cycles, none, unit_vector(3, 0));
    CHECK(c.size() == 2);
    CHECK(c.count() == 1);

    Echelon b(3);
    b.insert(unit_vector(3, 0));
    auto c2 = quotient_coordinates(cycles, b.basis(), unit_vector(3, 1));
    CHECK(c2.size() == 1);
    CHECK(c2.get(0));

    CHECK_THROWS_AS(quotient_coordinates(cycles, none, unit_vector(3, 2)), std::invalid_argument);
    Echelon bad(3);
    bad.insert(unit_vector(3, 2));
    CHECK_THROWS_AS(quotient_coordinates(cycles, bad.basis(), unit_vector(3, 0)), std::logic_error);
}

TEST_CASE("random rank identities")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = rng() % 70, c = rng() % 70;
        F2Matrix m = random_matrix(rng, r, c);
        auto rki = rank_kernel_image(m);
        CHECK(rki.rank == rank(m.transpose()));
        CHECK(rki.rank + rki.kernel.dim() == c);
        CHECK(rki.image.dim() == rki.rank);
        for (const auto& v : rki.kernel.vectors)
            CHECK_FALSE(m.apply(v).any());
        BitVec x(c);
        for (std::size_t j = 0; j < c; ++j)
            if (rng() & 1)
                x.set(j);
        BitVec target = m.apply(x);
        auto s = solve(m, target);
        REQUIRE(s);
        CHECK(m.apply(*s) == target);
    }
}

TEST_CASE("quotient coordinates are linear")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 40;
        F2Matrix d1 = random_matrix(rng, n, n);
        /* cycles = kernel of d1, boundaries = a random subspace of it */
        auto z = rank_kernel_image(d1).kernel;
        Echelon b(n);
        for (const auto& v : z.vectors)
            if (rng() % 3 == 0)
                b.insert(v);
        QuotientCoords q(z, b);
        CHECK(q.dim() == z.dim() - b.rank());
        if (z.dim() < 2)
            continue;
        BitVec v = z.vectors[0], w = z.vectors[1];
        BitVec s = v;
        s ^= w;
        BitVec cv = q.coordinates(v);
        cv ^= q.coordinates(w);
        CHECK(cv == q.coordinates(s));
    }
}
