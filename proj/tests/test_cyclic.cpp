#include <doctest.h>

#include "cyclo2/cyclic.hpp"
#include "oracle_tables.hpp"
#include "support.hpp"

using namespace cyclo2;

namespace {

struct Ctx {
    Algebra A;
    Hochschild H;
    Homology hom;
    explicit Ctx(const std::string& name, int w = 10) : A(fixture(name)), H(A), hom(H) { A.prepare(w); }

    int window(int n, int d) const { return std::max(0, (d - n + 1) / 2) + 1; }

    std::size_t dim(Theory t, int n, int d, bool* stable = nullptr) const
    {
        std::size_t total = 0;
        for (const auto& g : A.grades_of_weight(d)) {
            auto hp = hom.homology(t, n, g, window(n, d));
            if (stable)
                *stable = *stable && hp.stable;
            total += hp.dim();
        }
        return total;
    }
};

template <std::size_t R, std::size_t C>
void check_table(const Ctx& c, Theory t, const int (&table)[R][C], int lo)
{
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t d = 0; d < C; ++d) {
            int n = lo + int(i);
            bool stable = true;
            CAPTURE(n);
            CAPTURE(d);
            CHECK(c.dim(t, n, int(d), &stable) == std::size_t(table[i][d]));
            CHECK(stable);
        }
}

}  // namespace

TEST_CASE("tower dimensions against the dense reference")
{
    Ctx x("f2x");
    check_table(x, Theory::hh, f2x_hh, f2x_hh_lo);
    check_table(x, Theory::minus, f2x_minus, f2x_minus_lo);
    check_table(x, Theory::plus, f2x_plus, f2x_plus_lo);
    check_table(x, Theory::per, f2x_per, f2x_per_lo);
    Ctx xy("f2xy");
    check_table(xy, Theory::minus, f2xy_minus, f2xy_minus_lo);
}

TEST_CASE("dual numbers split by exponent count")
{
    Ctx c("dual", 1);
    CHECK(c.A.split_mode() == SplitMode::multidegree);
    check_table(c, Theory::minus, dual_minus_by_exponent, dual_minus_by_exponent_lo);
    for (int n = 0; n < 5; ++n) {
        std::size_t total = 0;
        for (int e = 0; e <= n + 1; ++e)
            total += c.dim(Theory::hh, n, e);
        CHECK(total == std::size_t(dual_hh_total[n]));
    }
    /* the unsplit truncated tower is the sum of the truncated pieces */
    for (int S : {4, 5}) {
        const int* ref = S == 4 ? dual_minus_unsplit_S4 : dual_minus_unsplit_S5;
        for (int n = -4; n <= 4; ++n) {
            std::size_t total = 0;
            for (int e = 0; e <= n + 2 * S + 2; ++e)
                total += c.hom.compute(Theory::minus, n, Grade{e}, S).dim();
            CAPTURE(n);
            CHECK(total == std::size_t(ref[n + 4]));
        }
    }
}

TEST_CASE("negative cyclic homology of the ground field")
{
    Ctx c("f2", 0);
    for (int n = -7; n <= 3; ++n) {
        auto hp = c.hom.homology(Theory::minus, n, c.A.zero_grade(), 6);
        CHECK(hp.stable);
        CHECK(hp.dim() == ((n <= 0 && n % 2 == 0) ? 1u : 0u));
    }
    auto hp = c.hom.homology(Theory::minus, -4, c.A.zero_grade(), 6);
    UChain r = hp.representative(0);
    CHECK(r == uchain(Theory::minus, 2, Chain{Word{0}}));
}

TEST_CASE("Hochschild homology of F2[x] in low degrees")
{
    Ctx c("f2x");
    for (int d = 1; d <= 5; ++d) {
        auto hh0 = c.hom.homology(Theory::hh, 0, Grade{d}, 0);
        auto hh1 = c.hom.homology(Theory::hh, 1, Grade{d}, 0);
        REQUIRE(hh0.dim() == 1);
        REQUIRE(hh1.dim() == 1);
        /* x^d[] and x^{d-1}[x] */
        Word w0{c.A.id_of(Mono{uint16_t(d)})};
        Word w1{c.A.id_of(Mono{uint16_t(d - 1)}), c.A.id_of(Mono{1})};
        CHECK(hh0.coordinates(uchain(Theory::hh, 0, Chain{w0})).any());
        CHECK(hh1.coordinates(uchain(Theory::hh, 0, Chain{w1})).any());
        CHECK(c.hom.homology(Theory::hh, 2, Grade{d}, 0).dim() == 0);
    }
}

TEST_CASE("tower basis layout")
{
    Ctx c("f2x");
    TowerSlice t(c.H, Theory::minus, 0, Grade{2}, 3);
    /* u^0: x^2[], u^1: 1[x|x] */
    REQUIRE(t.dim() == 2);
    CHECK(t.basis()[0].first == 0);
    CHECK(t.basis()[1] == std::make_pair(1, Word{0, 1, 1}));
    CHECK(exact_window(c.A, 0, Grade{2}) == 1);
    auto [lo, hi] = exponent_bounds(c.A, Theory::plus, -2, Grade{2}, 0);
    CHECK(lo == 1);
    CHECK(hi == 0);
    UChain stray = uchain(Theory::minus, 7, Chain{Word{0}});
    CHECK_FALSE(t.vector_of(stray).any());
}

TEST_CASE("long exact sequences")
{
    for (const char* name : {"f2x", "f2xy"}) {
        Ctx c(name);
        int top = std::string(name) == "f2x" ? 6 : 4;
        for (int d = 0; d <= top; ++d)
            for (const auto& g : c.A.grades_of_weight(d))
                for (int n = -2; n <= 3; ++n) {
                    int S = c.window(n - 1, d) + 1;
                    CAPTURE(name);
                    CAPTURE(d);
                    CAPTURE(n);
                    for (auto kind : {LesKind::minus_les, LesKind::connes, LesKind::per_les}) {
                        auto m = les_maps(c.H, kind, n, g, S);
                        CHECK(m.stable);
                        CHECK(les_exact(m));
                    }
                }
    }
}

TEST_CASE("h after u vanishes and I is injective on HH0")
{
    Ctx c("f2xy");
    for (int d = 0; d <= 4; ++d)
        for (const auto& g : c.A.grades_of_weight(d)) {
            auto m = les_maps(c.H, LesKind::minus_les, 0, g, 4);
            CHECK((m.maps[1] * m.maps[0]).is_zero());
            auto conn = les_maps(c.H, LesKind::connes, 0, g, 4);
            CHECK(rank(conn.maps[0]) == conn.spaces[0].dim());
        }
}

TEST_CASE("F4 towers stabilize")
{
    Ctx c("f4", 2);
    CHECK(c.A.split_mode() == SplitMode::trivial);
    for (int n = -4; n <= 2; ++n) {
        auto hp = c.hom.homology(Theory::minus, n, c.A.zero_grade(), 4);
        CHECK(hp.stable);
        CHECK(hp.dim() == ((n <= 0 && n % 2 == 0) ? 2u : 0u));
    }
    auto m = les_maps(c.H, LesKind::minus_les, 0, c.A.zero_grade(), 4);
    CHECK(les_exact(m));
}

TEST_CASE("connecting map is linear over negative cyclic homology")
{
    Ctx c("f2xy");
    for (int dy = 0; dy <= 2; ++dy)
        for (int dx = 1; dx <= 2; ++dx)
            for (const auto& gy : c.A.grades_of_weight(dy))
                for (const auto& gx : c.A.grades_of_weight(dx))
                    for (int p : {-2, 0, 1})
                        for (int q : {0, 1}) {
                            auto Y = c.hom.homology(Theory::minus, p, gy, 5);
                            auto X = c.hom.homology(Theory::hh, q, gx, 0);
                            Grade g = c.A.grade_add(gx, gy);
                            auto target = c.hom.homology(Theory::minus, p + q + 1, g, 6);
                            for (std::size_t i = 0; i < Y.dim(); ++i)
                                for (std::size_t j = 0; j < X.dim(); ++j) {
                                    UChain y = Y.representative(i), x = X.representative(j);
                                    UChain hx = mu_chain(c.H, project_h(y), x);
                                    UChain lhs = connecting_minus(c.H, hx.at[0]);
                                    UChain rhs = mu_chain(c.H, y, connecting_minus(c.H, x.at[0]), 6);
                                    CHECK(target.coordinates(lhs) == target.coordinates(rhs));
                                }
                        }
}
