#include <algorithm>
#include <random>
#include <set>

#include "cyclo2/hochschild.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cyclo2;

namespace {

struct Ctx {
    Algebra A;
    Hochschild H;
    explicit Ctx(const std::string& name, int w = 8) : A(fixture(name)), H(A) { A.prepare(w); }
    Element e(const std::string& s) const { return elem(A, s); }
    Chain w(const std::string& a0, std::vector<std::string> bars) const
    {
        std::vector<Element> b;
        for (auto& s : bars)
            b.push_back(e(s));
        return H.make(e(a0), b);
    }
};

Chain sum(std::initializer_list<Chain> cs)
{
    Chain r;
    for (const auto& c : cs)
        chain_add(r, c);
    return r;
}

}  // namespace

TEST_CASE("b and B on small words")
{
    Ctx c("f2xy");
    CHECK(c.H.boundary_b(c.w("1", {"x", "y"})) == sum({c.w("x", {"y"}), c.w("1", {"x*y"}), c.w("y", {"x"})}));
    CHECK(c.H.boundary_b(c.w("x", {"x"})).empty());
    CHECK(c.H.boundary_b(c.w("x", {})).empty());
    CHECK(c.H.connes_B(c.w("x^2", {})) == c.w("1", {"x^2"}));
    CHECK(c.H.connes_B(c.w("1", {"x"})).empty());
    CHECK(c.H.connes_B(c.w("x", {"y"})) == sum({c.w("1", {"x", "y"}), c.w("1", {"y", "x"})}));
    CHECK(c.w("x", {"1"}).empty());
    CHECK(c.w("x", {"x + 1"}) == c.w("x", {"x"}));
}

TEST_CASE("shuffle enumeration")
{
    CHECK(shuffles(1, 0) == std::vector<Perm>{{1}});
    CHECK(shuffles(1, 1).size() == 2);
    CHECK(shuffles(1, 2) == std::vector<Perm>{{1, 2, 3}, {2, 1, 3}, {3, 1, 2}});
    CHECK(shuffles(3, 4).size() == 35);
    CHECK(cyclic_shuffles(1, 1) == std::vector<Perm>{{1, 2}});
    std::set<Perm> cs21(cyclic_shuffles(2, 1).begin(), cyclic_shuffles(2, 1).end());
    CHECK(cs21 == std::set<Perm>{{1, 2, 3}, {1, 3, 2}, {2, 1, 3}});
    std::set<Perm> cs22(cyclic_shuffles(2, 2).begin(), cyclic_shuffles(2, 2).end());
    std::set<Perm> expect{{1, 2, 3, 4}, {2, 1, 3, 4}, {1, 2, 4, 3}, {2, 1, 4, 3}, {1, 3, 2, 4}, {1, 3, 4, 2},
                          {1, 4, 2, 3}, {4, 1, 2, 3}, {1, 4, 3, 2}, {4, 1, 3, 2}, {2, 4, 1, 3}, {4, 2, 1, 3}};
    CHECK(cs22 == expect);
    CHECK(inverse(Perm{3, 1, 2}) == Perm{2, 3, 1});
}

TEST_CASE("shuffle products")
{
    Ctx c("f2xy");
    CHECK(c.H.shuffle_product(c.w("x", {"y"}), c.w("y", {})) == c.w("x*y", {"y"}));
    CHECK(c.H.shuffle_product(c.w("x", {"x"}), c.w("y", {"y"})) ==
          sum({c.w("x*y", {"x", "y"}), c.w("x*y", {"y", "x"})}));
    CHECK(c.H.shuffle_product(c.w("1", {"x"}), c.w("1", {"y"})) == sum({c.w("1", {"x", "y"}), c.w("1", {"y", "x"})}));
}

TEST_CASE("mu on low words")
{
    Ctx c("f2xy");
    auto m = mu_chain(c.H, uchain(Theory::minus, 0, c.w("x", {})), uchain(Theory::minus, 0, c.w("y", {})));
    UChain expect = uchain(Theory::minus, 0, c.w("x*y", {}));
    expect.add(1, c.w("1", {"x", "y"}));
    CHECK(m == expect);
    CHECK(mu_chain(c.H, uchain(Theory::minus, 0, c.w("1", {"x"})), uchain(Theory::minus, 0, c.w("1", {"x"}))).is_zero());
    CHECK(mu_chain(c.H, uchain(Theory::minus, 0, c.w("x", {"x"})), uchain(Theory::minus, 0, c.w("x", {"x"}))).is_zero());
    CHECK_THROWS_AS(mu_chain(c.H, uchain(Theory::per, 0, {}), uchain(Theory::plus, 0, {})), std::invalid_argument);
    auto plus = mu_chain(c.H, uchain(Theory::minus, 0, c.w("x", {})), uchain(Theory::plus, 0, c.w("y", {})));
    CHECK(plus == uchain(Theory::plus, 0, c.w("x*y", {})));
}

TEST_CASE("word enumeration")
{
    Ctx c("f2x");
    CHECK(c.H.words(2, {2}) == std::vector<Word>{c.w("1", {"x", "x"})[0]});
    CHECK(c.H.words(0, {0}).size() == 1);
    CHECK(c.H.words(1, {0}).empty());
    Ctx d("dual");
    CHECK(d.H.words(3, {3}).size() == 1);
    CHECK(d.H.words(2, {3}).size() == 1);
    Ctx f("f4");
    CHECK(f.H.words(2, {}).size() == 2);
}

static Chain random_chain(const Hochschild& H, std::mt19937_64& rng, int maxbars, int maxweight = 6)
{
    const Algebra& A = H.algebra();
    std::vector<Word> terms;
    int n = int(rng() % std::uint64_t(maxbars + 1));
    int t = 1 + int(rng() % 4);
    for (int i = 0; i < t; ++i) {
        Word w;
        w.push_back(int(rng() % A.num_basis()));
        for (int j = 0; j < n; ++j) {
            if (A.num_basis() < 2)
                return {};
            w.push_back(1 + int(rng() % (A.num_basis() - 1)));
        }
        if (A.graded() && H.weight(w) > maxweight)
            continue;
        terms.push_back(w);
    }
    return chain_normalize(terms);
}

TEST_CASE("differential identities on random chains")
{
    for (const char* name : {"f2x", "f2xy", "f4", "dual"}) {
        Ctx c(name, 12);
        std::mt19937_64 rng(3);
        for (int t = 0; t < 200; ++t) {
            Chain x = random_chain(c.H, rng, 4);
            CHECK(c.H.boundary_b(c.H.boundary_b(x)).empty());
            CHECK(c.H.connes_B(c.H.connes_B(x)).empty());
            Chain bb = c.H.boundary_b(c.H.connes_B(x));
            chain_add(bb, c.H.connes_B(c.H.boundary_b(x)));
            CHECK(bb.empty());
        }
    }
}

TEST_CASE("shuffle product is a chain map for b")
{
    Ctx c("f2xy", 12);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        Chain x = random_chain(c.H, rng, 2, 5), y = random_chain(c.H, rng, 2, 5);
        Chain lhs = c.H.boundary_b(c.H.shuffle_product(x, y));
        Chain rhs = c.H.shuffle_product(c.H.boundary_b(x), y);
        chain_add(rhs, c.H.shuffle_product(x, c.H.boundary_b(y)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("antisymmetrization")
{
    Ctx c("f2xy");
    CHECK(c.H.antisymmetrize(c.e("1"), {c.e("x"), c.e("y")}) == sum({c.w("1", {"x", "y"}), c.w("1", {"y", "x"})}));
    CHECK(c.H.antisymmetrize(c.e("x"), {}) == c.w("x", {}));
    CHECK(c.H.antisymmetrize(c.e("x"), {c.e("y")}) == c.w("x", {"y"}));
}

TEST_CASE("chain-level witnesses for the defining relations")
{
    Ctx c("f2xyz", 10);
    auto M = [&](const Chain& ch, int k = 0) { return uchain(Theory::minus, k, ch); };
    auto d = [&](const std::string& a) { return M(c.w("1", {a})); };
    auto q = [&](const std::string& a) { return M(c.w(a, {a})); };
    auto phi = [&](const std::string& a) {
        UChain r = M(c.H.make(c.H.algebra().multiply(c.e(a), c.e(a)), {}));
        r.add(1, c.w("1", {a, a}));
        return r;
    };
    UChain u = M(c.w("1", {}), 1);
    auto mu = [&](const UChain& x, const UChain& y) { return mu_chain(c.H, x, y); };
    auto plus = [](std::initializer_list<UChain> xs) {
        UChain r;
        for (const auto& x : xs)
            r.add(x);
        return r;
    };
    auto D = [&](const UChain& x) { return total_boundary(c.H, x); };

    CHECK(plus({q("x + y"), q("x"), q("y"), d("x*y")}) == D(M(c.w("1", {"x", "y"}))));
    CHECK(plus({mu(d("x*y"), d("z")), mu(d("y*z"), d("x")), mu(d("z*x"), d("y"))}) ==
          D(M(sum({c.w("1", {"x", "y", "z"}), c.w("1", {"y", "z", "x"}), c.w("1", {"z", "x", "y"})}))));
    CHECK(plus({phi("x*y"), mu(phi("x"), phi("y")), mu(mu(u, q("x")), q("y"))}) ==
          D(M(sum({c.w("1", {"x", "y", "x*y"}), c.w("1", {"x", "x", "y^2"}), c.w("x", {"y", "x", "y"}),
                   c.w("x", {"x", "y", "y"})}),
              1)));
    UChain w6 = M(c.w("x*y", {"x", "y"}));
    w6.add(1, sum({c.w("1", {"x", "y", "y", "x"}), c.w("1", {"y", "x", "x", "y"}), c.w("1", {"y", "x", "y", "x"})}));
    CHECK(plus({q("x*y"), mu(q("x"), phi("y")), mu(phi("x"), q("y"))}) == D(w6));
    CHECK(plus({mu(d("x"), phi("y")), d("x*y^2")}) == D(M(sum({c.w("1", {"x", "y^2"}), c.w("x", {"y", "y"})}))));
    CHECK(plus({mu(d("x"), q("y")), mu(d("x*y"), d("y"))}) == D(M(c.w("1", {"y", "x", "y"}))));
    CHECK(mu(u, d("x")) == D(M(c.w("x", {}))));
    CHECK(phi("1") == M(c.w("1", {})));
}
