#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "cyclo2/approx.hpp"
#include "oracle_tables.hpp"
#include "support.hpp"

using namespace cyclo2;

namespace {

/* every comparison below is exact over F2; the only tolerances are wall-clock limits */
constexpr int kRandomChains = 1000;
constexpr double kChainSeconds = 30.0;
constexpr double kMainSeconds = 600.0;
constexpr int kDeformationPairs = 200;
constexpr int kModulePairs = 100;

struct Fixture {
    Algebra A;
    Hochschild H;
    DeRham R;
    Ell L;
    Approx P;
    Homology hom;
    Fixture(const std::string& name, int w) : A(fixture(name)), H(A), R(A), L(A, R), P(H, L), hom(H) { A.prepare(w); }
    Element e(const std::string& s) const { return elem(A, s); }
    Chain w(const std::string& a0, std::vector<std::string> bars) const
    {
        std::vector<Element> b;
        for (const auto& s : bars)
            b.push_back(e(s));
        return H.make(e(a0), b);
    }
};

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::size_t kernel_dim(const F2Matrix& m)
{
    return m.cols() - rank(m);
}

bool exact_at(const F2Matrix& in, const F2Matrix& out)
{
    return (out * in).is_zero() && rank(in) == kernel_dim(out);
}

F2Matrix forms_to_ell(const OmegaSpace& src, const EllSpace& tgt, const std::function<EllPoly(const Form&)>& f)
{
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < src.dim(); ++i)
        cols.push_back(tgt.coordinates(f(src.basis_form(i))));
    return F2Matrix::from_columns(tgt.dim(), cols);
}

F2Matrix ell_to_forms(const EllSpace& src, const OmegaSpace& tgt, const std::function<Form(const EllPoly&)>& f)
{
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < src.dim(); ++i)
        cols.push_back(tgt.coordinates(f(src.basis_element(i))));
    return F2Matrix::from_columns(tgt.dim(), cols);
}

Chain random_chain(const Algebra& A, const Hochschild& H, std::mt19937& rng)
{
    std::vector<int> low;
    for (std::size_t id = 0; id < A.num_basis(); ++id)
        if (A.weight(int(id)) <= 3)
            low.push_back(int(id));
    Chain c;
    int terms = 1 + int(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        int a0 = low[rng() % low.size()];
        std::vector<int> bars;
        int len = int(rng() % 5);
        for (int i = 0; i < len; ++i) {
            int b = low[rng() % low.size()];
            if (b != A.unit())
                bars.push_back(b);
        }
        chain_add(c, H.make_ids(a0, bars));
    }
    return c;
}

Outcome chain_identities()
{
    auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, failed = 0, words = 0, top = 0;
    for (const char* name : {"f2x", "f2xy", "f4", "dual"}) {
        Fixture f(name, 12);
        std::mt19937 rng(2024);
        for (int i = 0; i < kRandomChains; ++i) {
            Chain c = random_chain(f.A, f.H, rng);
            words += c.size();
            for (const auto& w : c)
                top = std::max(top, w.size() - 1);
            Chain bB = f.H.boundary_b(f.H.connes_B(c));
            chain_add(bB, f.H.connes_B(f.H.boundary_b(c)));
            bool ok = f.H.boundary_b(f.H.boundary_b(c)).empty() && f.H.connes_B(f.H.connes_B(c)).empty() && bB.empty();
            ++checked;
            if (!ok)
                ++failed;
        }
    }
    double s = seconds_since(t0);
    return {failed == 0 && s < kChainSeconds, fmt("%zu random chains over four fixtures (%zu words, bar length up to %zu), %zu failures, %.1f s",
                                                checked, words, top, failed, s)};
}

Outcome shuffle_lists()
{
    std::set<Perm> cs22(cyclic_shuffles(2, 2).begin(), cyclic_shuffles(2, 2).end());
    std::set<Perm> cs21(cyclic_shuffles(2, 1).begin(), cyclic_shuffles(2, 1).end());
    const std::set<Perm> e22{{1, 2, 3, 4}, {2, 1, 3, 4}, {1, 2, 4, 3}, {2, 1, 4, 3}, {1, 3, 2, 4}, {1, 3, 4, 2},
                             {1, 4, 2, 3}, {4, 1, 2, 3}, {1, 4, 3, 2}, {4, 1, 3, 2}, {2, 4, 1, 3}, {4, 2, 1, 3}};
    const std::set<Perm> e21{{1, 2, 3}, {1, 3, 2}, {2, 1, 3}};
    bool ok = cs22 == e22 && cs21 == e21 && cyclic_shuffles(2, 2).size() == 12 && cyclic_shuffles(2, 1).size() == 3;
    return {ok, fmt("CS(2,2) has %zu, CS(2,1) has %zu", cyclic_shuffles(2, 2).size(), cyclic_shuffles(2, 1).size())};
}

Outcome witnesses()
{
    Fixture c("f2xyz", 10);
    auto M = [&](const Chain& ch, int k = 0) { return uchain(Theory::minus, k, ch); };
    auto d = [&](const std::string& a) { return M(c.w("1", {a})); };
    auto q = [&](const std::string& a) { return M(c.w(a, {a})); };
    auto phi = [&](const std::string& a) {
        UChain r = M(c.H.make(c.A.multiply(c.e(a), c.e(a)), {}));
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
    auto sum = [](std::initializer_list<Chain> cs) {
        Chain r;
        for (const auto& x : cs)
            chain_add(r, x);
        return r;
    };
    UChain w6 = M(c.w("x*y", {"x", "y"}));
    w6.add(1, sum({c.w("1", {"x", "y", "y", "x"}), c.w("1", {"y", "x", "x", "y"}), c.w("1", {"y", "x", "y", "x"})}));
    std::vector<std::pair<const char*, bool>> ids = {
        {"q_add", plus({q("x + y"), q("x"), q("y"), d("x*y")}) == D(M(c.w("1", {"x", "y"})))},
        {"delta_cocycle", plus({mu(d("x*y"), d("z")), mu(d("y*z"), d("x")), mu(d("z*x"), d("y"))}) ==
                   D(M(sum({c.w("1", {"x", "y", "z"}), c.w("1", {"y", "z", "x"}), c.w("1", {"z", "x", "y"})})))},
        {"phi_mul", plus({phi("x*y"), mu(phi("x"), phi("y")), mu(mu(u, q("x")), q("y"))}) ==
                   D(M(sum({c.w("1", {"x", "y", "x*y"}), c.w("1", {"x", "x", "y^2"}), c.w("x", {"y", "x", "y"}),
                            c.w("x", {"x", "y", "y"})}),
                       1))},
        {"q_mul", plus({q("x*y"), mu(q("x"), phi("y")), mu(phi("x"), q("y"))}) == D(w6)},
        {"delta_phi", plus({mu(d("x"), phi("y")), d("x*y^2")}) == D(M(sum({c.w("1", {"x", "y^2"}), c.w("x", {"y", "y"})})))},
        {"delta_q", plus({mu(d("x"), q("y")), mu(d("x*y"), d("y"))}) == D(M(c.w("1", {"y", "x", "y"})))},
        {"u_delta", mu(u, d("x")) == D(M(c.w("x", {})))},
    };
    std::string failed;
    for (const auto& [name, ok] : ids)
        if (!ok)
            failed += std::string(" ") + name;
    return {failed.empty(), failed.empty() ? "7 of 7 identities hold" : "failing:" + failed};
}

std::string summarize(const ApproxReport& rep)
{
    std::size_t rel = 0, sq = 0;
    for (const auto& r : rep.records)
        rel += r.relation_rows;
    for (const auto& s : rep.squares)
        sq += s.checked;
    return fmt("%zu bidegrees, %zu non-iso, %zu truncated, %zu relation rows, %zu square entries, products %zu/%zu",
               rep.records.size(), rep.non_iso().size(), rep.truncated().size(), rel, sq,
               rep.product_samples - rep.product_failures, rep.product_samples);
}

bool clean(const ApproxReport& rep)
{
    return rep.all_iso() && rep.truncated().empty() && rep.consistent();
}

Outcome main_comparison()
{
    std::string detail;
    bool ok = true;
    for (const char* name : {"f2x", "f2xy"}) {
        auto t0 = std::chrono::steady_clock::now();
        Fixture f(name, 12);
        ApproxOptions opt;
        opt.min_n = -8;
        opt.max_n = 8;
        opt.max_d = 8;
        auto rep = verify_approximation(f.P, Theory::minus, opt);
        double s = seconds_since(t0);
        ok = ok && clean(rep) && s < kMainSeconds;
        detail += fmt("%s%s: %s, %.1f s", detail.empty() ? "" : "; ", name, summarize(rep).c_str(), s);
    }
    return {ok, detail};
}

Outcome deformation()
{
    bool ok = true;
    std::size_t bidegrees = 0, pairs = 0, bad = 0;
    for (const char* name : {"f2x", "f2xy"}) {
        Fixture c(name, 12);
        for (int d = 0; d <= 8; ++d)
            for (const auto& g : c.A.grades_of_weight(d))
                for (int n = -8; n <= 8; ++n) {
                    ++bidegrees;
                    if (c.L.space(Flavor::ell_tilde, n, g)->dim() != omega_u(c.R, n, g).dim())
                        ok = false;
                }
        std::mt19937 rng(77);
        int checked = 0;
        while (checked < kDeformationPairs) {
            int d1 = int(rng() % 5), d2 = int(rng() % 5);
            int n1 = int(rng() % 7) - 3, n2 = int(rng() % 7) - 3;
            auto g1s = c.A.grades_of_weight(d1), g2s = c.A.grades_of_weight(d2);
            Grade g1 = g1s[rng() % g1s.size()], g2 = g2s[rng() % g2s.size()];
            auto s1 = c.L.space(Flavor::ell_tilde, n1, g1), s2 = c.L.space(Flavor::ell_tilde, n2, g2);
            if (!s1->dim() || !s2->dim())
                continue;
            EllPoly a = s1->basis_element(rng() % s1->dim()), b = s2->basis_element(rng() % s2->dim());
            auto om = omega_u(c.R, n1 + n2, c.A.grade_add(g1, g2));
            if (om.coordinates(c.L.f_bar(c.L.mul(Flavor::ell_tilde, a, b))) !=
                om.coordinates(c.L.star(c.L.f_bar(a), c.L.f_bar(b))))
                ++bad;
            ++checked;
            ++pairs;
        }
    }
    return {ok && bad == 0, fmt("%zu bidegrees compared, f-bar multiplicative on %zu of %zu pairs", bidegrees, pairs - bad, pairs)};
}

Outcome sequences()
{
    std::size_t joints = 0, bad = 0;
    auto check = [&](bool e) {
        ++joints;
        if (!e)
            ++bad;
    };
    for (const char* name : {"f2x", "f2xy"}) {
        Fixture c(name, 12);
        auto u_of = [&](Flavor f) { return [&c, f](const EllPoly& x) { return c.L.times_u(f, x); }; };
        for (int d = 0; d <= 6; ++d)
            for (const auto& g : c.A.grades_of_weight(d))
                for (int n = -2; n <= 4; ++n) {
                    auto l2 = c.L.space(Flavor::ell, n + 2, g), l0 = c.L.space(Flavor::ell, n, g);
                    auto l1 = c.L.space(Flavor::ell, n + 1, g), lm = c.L.space(Flavor::ell, n - 1, g);
                    auto om = c.R.space(n, g);
                    F2Matrix u1 = ell_matrix(*l2, *l0, u_of(Flavor::ell));
                    F2Matrix r = ell_to_forms(*l0, *om, [&](const EllPoly& x) { return c.L.map_r(x); });
                    F2Matrix tau = forms_to_ell(*om, *l1, [&](const Form& w) { return c.L.map_tau(w); });
                    F2Matrix u2 = ell_matrix(*l1, *lm, u_of(Flavor::ell));
                    check(exact_at(u1, r));
                    check(exact_at(r, tau));
                    check(exact_at(tau, u2));

                    auto p_n = c.L.space(Flavor::ell_plus, n, g), p_n2 = c.L.space(Flavor::ell_plus, n - 2, g);
                    auto om1 = c.R.space(n - 1, g);
                    auto p_n1 = c.L.space(Flavor::ell_plus, n - 1, g);
                    auto I = [&](const Form& w) { return c.L.map_I(w); };
                    F2Matrix i1 = forms_to_ell(*om, *p_n, I);
                    F2Matrix up = ell_matrix(*p_n, *p_n2, u_of(Flavor::ell_plus));
                    F2Matrix D = ell_to_forms(*p_n2, *om1, [&](const EllPoly& x) { return c.L.map_D(x); });
                    F2Matrix i2 = forms_to_ell(*om1, *p_n1, I);
                    check(exact_at(i1, up));
                    check(exact_at(up, D));
                    check(exact_at(D, i2));
                }
    }
    std::size_t kt = 0, kt_bad = 0;
    for (const char* name : {"f2x", "f2xy", "f4", "dual"}) {
        Fixture c(name, 12);
        int top = c.A.split_mode() == SplitMode::trivial ? 0 : 6;
        for (int d = 0; d <= top; ++d)
            for (const auto& g : c.A.grades_of_weight(d))
                for (int n = -3; n <= 4; ++n) {
                    auto here = c.L.space(Flavor::ell, n, g), below = c.L.space(Flavor::ell, n - 2, g);
                    auto om = c.R.space(n - 1, g);
                    F2Matrix tau = forms_to_ell(*om, *here, [&](const Form& w) { return c.L.map_tau(w); });
                    F2Matrix u = ell_matrix(*here, *below, [&](const EllPoly& x) { return c.L.times_u(Flavor::ell, x); });
                    ++kt;
                    if (!exact_at(tau, u))
                        ++kt_bad;
                }
    }
    return {bad == 0 && kt_bad == 0,
            fmt("%zu smooth joints, %zu inexact; Ker u = Im tau at %zu bidegrees over four fixtures, %zu failures", joints,
                bad, kt, kt_bad)};
}

Outcome spectral()
{
    Fixture c("f2x", 12);
    std::size_t entries = 0, bad = 0;
    for (int d = 0; d <= 8; ++d) {
        Grade g{d};
        for (int t = -8; t <= 8; ++t)
            for (int s = -8; s <= 0; ++s) {
                int m = t - s;
                if (m < 0)
                    continue;
                std::size_t expect = s == 0 ? c.R.closed_forms(m, g).dim() : c.R.cohomology(m, g).dim();
                ++entries;
                if (e2_page(c.H, INT_MIN, 0, s, t, g).dim != expect)
                    ++bad;
            }
    }
    return {bad == 0, fmt("%zu E2 entries against closed forms and de Rham cohomology, %zu mismatches", entries, bad)};
}

Outcome plus_per()
{
    Fixture f("f2x", 16);
    ApproxOptions opt;
    opt.min_n = -6;
    opt.max_n = 6;
    opt.max_d = 6;
    auto hc = verify_approximation(f.P, Theory::plus, opt);
    auto per = verify_approximation(f.P, Theory::per, opt);
    return {clean(hc) && clean(per), "hc: " + summarize(hc) + "; hcper: " + summarize(per)};
}

Outcome negative_control()
{
    Fixture f("dual", 12);
    ApproxOptions opt;
    opt.min_n = dual_minus_by_exponent_lo;
    opt.max_n = 4;
    opt.max_d = 8;
    auto rep = verify_approximation(f.P, Theory::minus, opt);
    std::size_t mismatches = 0;
    for (const auto& r : rep.records)
        if (r.dim_target != std::size_t(dual_minus_by_exponent[r.n - opt.min_n][r.grade[0]]))
            ++mismatches;
    /* the reference tables were produced at windows S and S + 1 with equal results */
    std::size_t unstable = rep.truncated().size();
    auto bad = rep.non_iso();
    std::string first = bad.empty() ? "none" : fmt("n=%d e=%d (%zu vs %zu)", bad[0]->n, bad[0]->grade[0], bad[0]->dim_source, bad[0]->dim_target);
    bool ok = !bad.empty() && bad[0]->n <= 4 && mismatches == 0 && unstable == 0 && rep.consistent();
    return {ok, fmt("%zu non-iso bidegrees, first %s; HC- dims vs reference: %zu mismatches", bad.size(), first.c_str(), mismatches)};
}

Outcome module_structure()
{
    std::size_t checked = 0, bad = 0;
    for (const char* name : {"f2x", "f2xy", "f4", "dual"}) {
        Fixture c(name, 12);
        std::mt19937 rng(31);
        const int maxd = c.A.split_mode() == SplitMode::trivial ? 0 : 2;
        int done = 0;
        for (int attempt = 0; attempt < 20000 && done < kModulePairs; ++attempt) {
            int dy = int(rng() % (maxd + 1)), dx = int(rng() % (maxd + 1));
            int p = -4 + int(rng() % 6), q = int(rng() % 3);
            auto gys = c.A.grades_of_weight(dy), gxs = c.A.grades_of_weight(dx);
            if (gys.empty() || gxs.empty())
                continue;
            Grade gy = gys[rng() % gys.size()], gx = gxs[rng() % gxs.size()];
            Grade g = c.A.grade_add(gx, gy);
            int St = tower_window(p + q + 1, c.A.grade_weight(g)) + 1;
            auto Y = c.hom.homology(Theory::minus, p, gy, St + 1);
            auto X = c.hom.homology(Theory::hh, q, gx, 0);
            if (!Y.dim() || !X.dim())
                continue;
            auto target = c.hom.homology(Theory::minus, p + q + 1, g, St);
            BitVec cy(Y.dim()), cx(X.dim());
            while (!cy.any())
                for (std::size_t i = 0; i < Y.dim(); ++i)
                    if (rng() & 1u)
                        cy.flip(i);
            while (!cx.any())
                for (std::size_t i = 0; i < X.dim(); ++i)
                    if (rng() & 1u)
                        cx.flip(i);
            UChain y, x;
            y.theory = Theory::minus;
            x.theory = Theory::hh;
            for (std::size_t i : cy.ones())
                y.add(Y.representative(i));
            for (std::size_t i : cx.ones())
                x.add(X.representative(i));
            UChain hx = mu_chain(c.H, project_h(y), x);
            UChain lhs = connecting_minus(c.H, hx.at[0]);
            UChain rhs = mu_chain(c.H, y, connecting_minus(c.H, x.at[0]), St);
            ++checked;
            ++done;
            if (!target.stable || target.coordinates(lhs) != target.coordinates(rhs))
                ++bad;
        }
        if (done < kModulePairs)
            ++bad;
    }
    return {bad == 0, fmt("%zu sampled pairs over four fixtures, %zu failures", checked, bad)};
}

Outcome ground_field()
{
    Fixture f("f2", 0);
    bool ok = true;
    for (int n = -10; n <= 4; ++n) {
        std::size_t expect = n <= 0 && n % 2 == 0;
        auto hp = f.hom.homology(Theory::minus, n, f.A.zero_grade(), tower_window(n, 0));
        auto sp = f.L.space(Flavor::ell, n, f.A.zero_grade());
        ok = ok && hp.dim() == expect && hp.stable && sp->dim() == expect;
        if (expect)
            ok = ok && sp->basis_element(0) == f.L.u_pow(-n / 2);
    }
    ApproxOptions opt;
    opt.min_n = -10;
    opt.max_n = 4;
    opt.max_d = 0;
    auto rep = verify_approximation(f.P, Theory::minus, opt);
    ok = ok && clean(rep);
    return {ok, "HC- and ell agree with F2[u] for -10 <= n <= 4; " + summarize(rep)};
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion all[] = {
        {1, "chain identities", chain_identities},
        {2, "cyclic shuffle lists", shuffle_lists},
        {3, "boundary witnesses", witnesses},
        {4, "psi iso for F2[x] and F2[x,y]", main_comparison},
        {5, "deformation model", deformation},
        {6, "exact sequences", sequences},
        {7, "second page for F2[x]", spectral},
        {8, "psi+ and psi-per iso for F2[x]", plus_per},
        {9, "negative control", negative_control},
        {10, "module structure", module_structure},
        {11, "ground field", ground_field},
    };
    int failures = 0;
    for (const auto& c : all) {
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures ? 1 : 0;
}
