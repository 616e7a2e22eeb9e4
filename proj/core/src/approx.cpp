#include "cyclo2/approx.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace cyclo2 {

Flavor flavor_for(Theory t)
{
    switch (t) {
    case Theory::minus:
        return Flavor::ell;
    case Theory::plus:
        return Flavor::ell_plus;
    case Theory::per:
        return Flavor::ell_per;
    default:
        throw std::invalid_argument(std::string("no approximation for theory ") + theory_name(t));
    }
}

int tower_window(int n, int d)
{
    return std::max(0, (d - n + 1) / 2) + 1;
}

bool ApproxReport::all_iso() const
{
    for (const auto& r : records)
        if (!r.truncated && !r.iso)
            return false;
    return true;
}

std::vector<const ApproxRecord*> ApproxReport::non_iso() const
{
    std::vector<const ApproxRecord*> out;
    for (const auto& r : records)
        if (!r.truncated && !r.iso)
            out.push_back(&r);
    return out;
}

std::vector<const ApproxRecord*> ApproxReport::truncated() const
{
    std::vector<const ApproxRecord*> out;
    for (const auto& r : records)
        if (r.truncated)
            out.push_back(&r);
    return out;
}

bool ApproxReport::consistent() const
{
    for (const auto& r : records)
        if (r.relation_failures)
            return false;
    for (const auto& s : squares)
        if (s.residual)
            return false;
    return product_failures == 0;
}

Approx::Approx(const Hochschild& H, const Ell& L) : H_(H), L_(L) {}

void Approx::require_cycle(const UChain& x, const char* what) const
{
    if (!total_boundary(H_, x).is_zero())
        throw std::logic_error(std::string("image of ") + what + " is not a cycle");
}

UChain Approx::image_delta(const Element& a) const
{
    UChain r = uchain(Theory::minus, 0, H_.make({H_.algebra().unit()}, {a}));
    require_cycle(r, "delta");
    return r;
}

UChain Approx::image_q(const Element& a) const
{
    UChain r = uchain(Theory::minus, 0, H_.make(a, {a}));
    require_cycle(r, "q");
    return r;
}

UChain Approx::image_phi(const Element& a) const
{
    const Algebra& A = H_.algebra();
    UChain r = uchain(Theory::minus, 0, H_.make(A.multiply(a, a), {}));
    r.add(1, H_.make({A.unit()}, {a, a}));
    require_cycle(r, "phi");
    return r;
}

UChain Approx::image_u(int j, Theory t) const
{
    return uchain(t, j, H_.make_ids(H_.algebra().unit(), {}));
}

UChain Approx::image_gamma(const Element& a) const
{
    UChain r = uchain(Theory::plus, 0, H_.make(a, {}));
    require_cycle(r, "gamma");
    return r;
}

UChain Approx::image_v(int i) const
{
    return uchain(Theory::plus, -i, H_.make_ids(H_.algebra().unit(), {}));
}

UChain Approx::psi(Flavor f, const EllMonomial& m, int max_exp) const
{
    const Theory ring = f == Flavor::ell_per ? Theory::per : Theory::minus;
    int cap = max_exp;
    if (m.marker == Marker::gamma)
        cap = 0;
    else if (m.marker == Marker::v)
        cap = m.mark;
    UChain acc = image_u(m.u, ring);
    auto times = [&](UChain g) {
        g.theory = ring;
        acc = mu_chain(H_, acc, g, cap);
    };
    for (int a : m.phi)
        times(image_phi({a}));
    for (int a : m.q)
        times(image_q({a}));
    for (int a : m.delta)
        times(image_delta({a}));
    if (m.marker == Marker::gamma)
        acc = mu_chain(H_, acc, image_gamma({m.mark}), max_exp);
    else if (m.marker == Marker::v)
        acc = mu_chain(H_, acc, image_v(m.mark), max_exp);
    acc.clipped = 0;
    return acc;
}

UChain Approx::psi(Flavor f, const EllPoly& x, int max_exp) const
{
    UChain r;
    r.theory = f == Flavor::ell_per ? Theory::per : f == Flavor::ell_plus ? Theory::plus : Theory::minus;
    for (const auto& m : x)
        r.add(psi(f, m, max_exp));
    return r;
}

BitVec Approx::psi_class(Flavor f, const EllPoly& x, const HomologyPresentation& tgt) const
{
    UChain c = psi(f, x, tgt.S);
    if (!tgt.is_cycle(c))
        throw std::logic_error("psi image is not a cycle: " + L_.format(x));
    return tgt.coordinates(c);
}

F2Matrix Approx::psi_matrix(const EllSpace& src, const HomologyPresentation& tgt) const
{
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < src.dim(); ++i)
        cols.push_back(psi_class(src.flavor(), src.basis_element(i), tgt));
    return F2Matrix::from_columns(tgt.dim(), cols);
}

ApproxRecord Approx::compare(Theory t, int n, const Grade& g, int S) const
{
    const Flavor f = flavor_for(t);
    Homology hom(H_);
    auto src = L_.space(f, n, g);
    auto tgt = hom.homology(t, n, g, S);
    ApproxRecord r;
    r.n = n;
    r.grade = g;
    r.window = S;
    r.dim_source = src->dim();
    r.dim_target = tgt.dim();
    r.rank = rank(psi_matrix(*src, tgt));
    r.iso = r.dim_source == r.dim_target && r.rank == r.dim_source;
    r.truncated = !tgt.stable || !src->stable();
    for (const auto& row : src->relation_rows()) {
        ++r.relation_rows;
        UChain c = psi(f, src->poly_of_raw(row), S);
        if (!tgt.is_boundary(c))
            ++r.relation_failures;
    }
    return r;
}

namespace {

struct SquareBuilder {
    SquareBuilder(std::string nm, int deg, Grade gr) : name(std::move(nm)), n(deg), g(std::move(gr)) {}
    std::string name;
    int n;
    Grade g;
    std::size_t count = 0;
    std::size_t diff = 0;
    std::string offender;

    void compare(const BitVec& a, const BitVec& b, const std::string& what)
    {
        ++count;
        BitVec x = a;
        x ^= b;
        std::size_t c = x.count();
        if (c && offender.empty())
            offender = what;
        diff += c;
    }
    SquareResidual done() const { return {name, n, g, count, diff, offender}; }
};

}  // namespace

std::vector<SquareResidual> Approx::squares(Theory t, int n, const Grade& g, int S) const
{
    Homology hom(H_);
    const DeRham& R = L_.derham();
    std::vector<SquareResidual> out;
    auto eps = [&](const Form& w) { return uchain(Theory::hh, 0, R.antisymmetrize(H_, w)); };
    auto retag = [](UChain x, Theory th) {
        x.theory = th;
        return x;
    };

    if (t == Theory::minus) {
        auto l = L_.space(Flavor::ell, n, g);
        auto hh = hom.homology(Theory::hh, n, g, 0);
        auto minus_n = hom.homology(Theory::minus, n, g, S);
        SquareBuilder s1{"h psi = eps r", n, g};
        for (std::size_t i = 0; i < l->dim(); ++i) {
            EllPoly x = l->basis_element(i);
            s1.compare(hh.coordinates(project_h(psi(Flavor::ell, x, S))), hh.coordinates(eps(L_.map_r(x))),
                       L_.format(x));
        }
        out.push_back(s1.done());

        SquareBuilder s2{"psi tau = d eps", n, g};
        if (n >= 1) {
            auto om = R.space(n - 1, g);
            for (std::size_t i = 0; i < om->dim(); ++i) {
                Form w = om->basis_form(i);
                s2.compare(minus_n.coordinates(psi(Flavor::ell, L_.map_tau(w), S)),
                           minus_n.coordinates(connecting_minus(H_, eps(w).at[0])), R.format(w));
            }
        }
        out.push_back(s2.done());

        SquareBuilder s3{"psi u = u psi", n, g};
        auto up = L_.space(Flavor::ell, n + 2, g);
        for (std::size_t i = 0; i < up->dim(); ++i) {
            EllPoly x = up->basis_element(i);
            s3.compare(minus_n.coordinates(psi(Flavor::ell, L_.times_u(Flavor::ell, x), S)),
                       minus_n.coordinates(psi(Flavor::ell, x, S).shifted(1)), L_.format(x));
        }
        out.push_back(s3.done());
    }
    else if (t == Theory::plus) {
        auto plus_n = hom.homology(Theory::plus, n, g, S);
        SquareBuilder s1{"psi I = I eps", n, g};
        if (n >= 0) {
            auto om = R.space(n, g);
            for (std::size_t i = 0; i < om->dim(); ++i) {
                Form w = om->basis_form(i);
                s1.compare(plus_n.coordinates(psi(Flavor::ell_plus, L_.map_I(w), S)),
                           plus_n.coordinates(retag(eps(w), Theory::plus)), R.format(w));
            }
        }
        out.push_back(s1.done());

        SquareBuilder s2{"psi u = u psi", n, g};
        auto lp = L_.space(Flavor::ell_plus, n + 2, g);
        for (std::size_t i = 0; i < lp->dim(); ++i) {
            EllPoly x = lp->basis_element(i);
            s2.compare(plus_n.coordinates(psi(Flavor::ell_plus, L_.times_u(Flavor::ell_plus, x), S)),
                       plus_n.coordinates(psi(Flavor::ell_plus, x, S).shifted(1)), L_.format(x));
        }
        out.push_back(s2.done());

        SquareBuilder s3{"eps D = d psi", n, g};
        auto hh = hom.homology(Theory::hh, n + 1, g, 0);
        auto here = L_.space(Flavor::ell_plus, n, g);
        for (std::size_t i = 0; i < here->dim(); ++i) {
            EllPoly x = here->basis_element(i);
            s3.compare(hh.coordinates(eps(L_.map_D(x))),
                       hh.coordinates(connecting_connes(H_, psi(Flavor::ell_plus, x, S))), L_.format(x));
        }
        out.push_back(s3.done());
    }
    else if (t == Theory::per) {
        auto per_n = hom.homology(Theory::per, n, g, S);
        SquareBuilder s1{"psi iota = i psi", n, g};
        auto l = L_.space(Flavor::ell, n, g);
        for (std::size_t i = 0; i < l->dim(); ++i) {
            EllPoly x = l->basis_element(i);
            s1.compare(per_n.coordinates(psi(Flavor::ell_per, L_.map_iota(x), S)),
                       per_n.coordinates(retag(psi(Flavor::ell, x, S), Theory::per)), L_.format(x));
        }
        out.push_back(s1.done());

        SquareBuilder s2{"psi S = S psi", n, g};
        auto plus_n2 = hom.homology(Theory::plus, n - 2, g, S);
        auto lp = L_.space(Flavor::ell_per, n, g);
        for (std::size_t i = 0; i < lp->dim(); ++i) {
            EllPoly x = lp->basis_element(i);
            s2.compare(plus_n2.coordinates(psi(Flavor::ell_plus, L_.map_S(x), S)),
                       plus_n2.coordinates(period_S(psi(Flavor::ell_per, x, S))), L_.format(x));
        }
        out.push_back(s2.done());

        SquareBuilder s3{"psi d = d psi", n, g};
        auto minus_n1 = hom.homology(Theory::minus, n + 1, g, S);
        auto lplus = L_.space(Flavor::ell_plus, n, g);
        for (std::size_t i = 0; i < lplus->dim(); ++i) {
            EllPoly x = lplus->basis_element(i);
            s3.compare(minus_n1.coordinates(psi(Flavor::ell, L_.map_boundary(x), S)),
                       minus_n1.coordinates(connecting_per(H_, psi(Flavor::ell_plus, x, S), S)), L_.format(x));
        }
        out.push_back(s3.done());
    }
    return out;
}

std::pair<std::size_t, std::size_t> Approx::products(Theory t, int min_n, int max_n, int max_d, int samples,
                                                     uint64_t seed) const
{
    const Algebra& A = H_.algebra();
    const Flavor f = flavor_for(t);
    const Flavor left = t == Theory::plus ? Flavor::ell : f;
    Homology hom(H_);
    std::mt19937_64 rng(seed);
    std::size_t checked = 0, failed = 0;
    for (int attempt = 0; attempt < 50 * samples && checked < std::size_t(samples); ++attempt) {
        int d1 = int(rng() % std::size_t(max_d + 1));
        int d2 = int(rng() % std::size_t(max_d + 1 - d1));
        int span = max_n - min_n + 1;
        int n1 = min_n + int(rng() % std::size_t(span));
        int n2 = min_n + int(rng() % std::size_t(span));
        int n = n1 + n2;
        if (n < min_n || n > max_n)
            continue;
        auto g1s = A.grades_of_weight(d1), g2s = A.grades_of_weight(d2);
        if (g1s.empty() || g2s.empty())
            continue;
        Grade g1 = g1s[rng() % g1s.size()], g2 = g2s[rng() % g2s.size()];
        auto s1 = L_.space(left, n1, g1);
        auto s2 = L_.space(f, n2, g2);
        if (!s1->dim() || !s2->dim())
            continue;
        EllPoly x = s1->basis_element(rng() % s1->dim());
        EllPoly y = s2->basis_element(rng() % s2->dim());
        Grade g = A.grade_add(g1, g2);
        int S = tower_window(n, A.grade_weight(g));
        auto tgt = hom.homology(t, n, g, S);
        BitVec lhs = psi_class(f, L_.mul(f, x, y), tgt);
        /* with negative u-powers around, factors are not truncated before the product */
        int cap = t == Theory::minus ? S : INT_MAX;
        BitVec rhs = tgt.coordinates(mu_chain(H_, psi(left, x, cap), psi(f, y, cap), S));
        ++checked;
        if (lhs != rhs)
            ++failed;
    }
    return {checked, failed};
}

ApproxReport verify_approximation(const Approx& P, Theory t, const ApproxOptions& opt)
{
    const Algebra& A = P.hochschild().algebra();
    ApproxReport rep;
    rep.theory = t;
    rep.min_n = opt.min_n;
    rep.max_n = opt.max_n;
    rep.max_d = opt.max_d;

    struct Job {
        int n;
        Grade g;
        int S;
    };
    std::vector<Job> jobs;
    for (int d = 0; d <= opt.max_d; ++d)
        for (const auto& g : A.grades_of_weight(d))
            for (int n = opt.min_n; n <= opt.max_n; ++n)
                jobs.push_back({n, g, opt.window >= 0 ? opt.window : tower_window(n, d)});

    std::vector<ApproxRecord> records(jobs.size());
    std::vector<std::vector<SquareResidual>> squares(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job& j = jobs[i];
        records[i] = P.compare(t, j.n, j.g, j.S);
        if (opt.squares)
            squares[i] = P.squares(t, j.n, j.g, j.S);
    });
    rep.records = std::move(records);
    for (auto& s : squares)
        for (auto& r : s)
            rep.squares.push_back(std::move(r));
    if (opt.samples > 0) {
        auto [checked, failed] = P.products(t, opt.min_n, opt.max_n, opt.max_d, opt.samples, opt.seed);
        rep.product_samples = checked;
        rep.product_failures = failed;
    }
    return rep;
}

}  // namespace cyclo2
