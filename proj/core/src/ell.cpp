#include "cyclo2/ell.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo2 {

const char* flavor_name(Flavor f)
{
    switch (f) {
    case Flavor::ell:
        return "ell";
    case Flavor::ell_tilde:
        return "ell_tilde";
    case Flavor::script_L:
        return "script_L";
    case Flavor::ell_plus:
        return "ellplus";
    default:
        return "ellper";
    }
}

EllPoly ell_normalize(std::vector<EllMonomial> terms)
{
    std::sort(terms.begin(), terms.end());
    EllPoly out;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) & 1)
            out.push_back(terms[i]);
        i = j;
    }
    return out;
}

void ell_add(EllPoly& a, const EllPoly& b)
{
    std::vector<EllMonomial> all = a;
    all.insert(all.end(), b.begin(), b.end());
    a = ell_normalize(std::move(all));
}

namespace {

bool has_delta(Flavor f)
{
    return f == Flavor::ell || f == Flavor::script_L || f == Flavor::ell_plus;
}

/* merge two sorted sets; false on a repeated element */
bool merge_set(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out)
{
    out.clear();
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return std::adjacent_find(out.begin(), out.end()) == out.end();
}

bool is_zero_grade(const Grade& g)
{
    return std::all_of(g.begin(), g.end(), [](int x) { return x == 0; });
}

bool halve(const Grade& g, Grade& out)
{
    out = g;
    for (auto& x : out) {
        if (x % 2)
            return false;
        x /= 2;
    }
    return true;
}

}  // namespace

Ell::Ell(const Algebra& A, const DeRham& R) : A_(A), R_(R) {}

EllPoly Ell::reduce(Flavor f, EllMonomial m) const
{
    if (f == Flavor::ell_plus && m.marker == Marker::gamma && m.mark == A_.unit()) {
        m.marker = Marker::v;
        m.mark = 0;
    }
    if (!m.delta.empty() && !has_delta(f))
        return {};
    if (f == Flavor::script_L && m.u > 0)
        return {};
    if (m.u < 0 && f != Flavor::ell_per && !(f == Flavor::ell_plus && m.marker == Marker::v))
        throw std::logic_error("negative u exponent outside ellper");
    if (m.marker == Marker::gamma && m.u > 0)
        return {};
    if (m.marker == Marker::v) {
        if (!m.delta.empty())
            return {};
        if (m.u > 0) {
            if (m.u > m.mark)
                return {};
            m.mark -= m.u;
            m.u = 0;
        }
    }
    if (m.u > 0 && !m.delta.empty())
        return {};
    return {std::move(m)};
}

EllPoly Ell::mul(Flavor f, const EllPoly& a, const EllPoly& b) const
{
    std::vector<EllMonomial> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            EllMonomial m;
            if (x.marker != Marker::none && y.marker != Marker::none)
                throw std::logic_error("product of two module elements");
            m.u = x.u + y.u;
            m.phi.reserve(x.phi.size() + y.phi.size());
            std::merge(x.phi.begin(), x.phi.end(), y.phi.begin(), y.phi.end(), std::back_inserter(m.phi));
            if (!merge_set(x.q, y.q, m.q) || !merge_set(x.delta, y.delta, m.delta))
                continue;
            const EllMonomial& mk = x.marker != Marker::none ? x : y;
            m.marker = mk.marker;
            m.mark = mk.mark;
            for (auto& r : reduce(f, std::move(m)))
                out.push_back(std::move(r));
        }
    return ell_normalize(std::move(out));
}

EllPoly Ell::phi(const Element& a) const
{
    std::vector<EllMonomial> out;
    for (int m : a) {
        EllMonomial t;
        if (m != A_.unit())
            t.phi = {m};
        out.push_back(t);
    }
    return ell_normalize(out);
}

EllPoly Ell::delta(const Element& a) const
{
    std::vector<EllMonomial> out;
    for (int m : a)
        if (m != A_.unit()) {
            EllMonomial t;
            t.delta = {m};
            out.push_back(t);
        }
    return ell_normalize(out);
}

EllPoly Ell::q(const Element& a) const
{
    /* q(a + b) = q(a) + q(b) + delta(ab) */
    std::vector<EllMonomial> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != A_.unit()) {
            EllMonomial t;
            t.q = {a[i]};
            out.push_back(t);
        }
        for (std::size_t j = i + 1; j < a.size(); ++j)
            for (auto& t : delta(A_.mul(a[i], a[j])))
                out.push_back(t);
    }
    return ell_normalize(out);
}

EllPoly Ell::gamma(const Element& a) const
{
    std::vector<EllMonomial> out;
    for (int m : a) {
        EllMonomial t;
        t.marker = m == A_.unit() ? Marker::v : Marker::gamma;
        t.mark = m == A_.unit() ? 0 : m;
        out.push_back(t);
    }
    return ell_normalize(out);
}

EllPoly Ell::u_pow(int j) const
{
    EllMonomial t;
    t.u = j;
    return {t};
}

EllPoly Ell::v(int i) const
{
    EllMonomial t;
    t.marker = Marker::v;
    t.mark = i;
    return {t};
}

int Ell::hom(const EllMonomial& m) const
{
    int h = int(m.q.size() + m.delta.size()) - 2 * m.u;
    if (m.marker == Marker::v)
        h += 2 * m.mark;
    return h;
}

Grade Ell::grade(const EllMonomial& m) const
{
    Grade g = A_.zero_grade();
    for (int a : m.phi)
        g = A_.grade_add(g, A_.grade_scale(A_.grade(a), 2));
    for (int a : m.q)
        g = A_.grade_add(g, A_.grade_scale(A_.grade(a), 2));
    for (int a : m.delta)
        g = A_.grade_add(g, A_.grade(a));
    if (m.marker == Marker::gamma)
        g = A_.grade_add(g, A_.grade(m.mark));
    return g;
}

std::vector<int> Ell::nonunit_ids_below(const Grade& g) const
{
    std::vector<int> out;
    for (std::size_t id = 1; id < A_.num_basis(); ++id)
        if (A_.grade_nonneg(A_.grade_sub(g, A_.grade(int(id)))))
            out.push_back(int(id));
    return out;
}

std::vector<EllMonomial> Ell::monomials(Flavor f, int n, const Grade& g, int cap) const
{
    std::vector<EllMonomial> out;
    if (!A_.grade_nonneg(g))
        return out;
    const std::vector<int> ids = nonunit_ids_below(g);
    const bool trivial = A_.split_mode() == SplitMode::trivial;
    const bool use_delta = has_delta(f);
    EllMonomial cur;

    auto finish = [&](const Grade& rest) {
        const int h0 = int(cur.q.size() + cur.delta.size());
        auto emit = [&](int u, Marker mk, int mark) {
            EllMonomial m = cur;
            m.u = u;
            m.marker = mk;
            m.mark = mark;
            out.push_back(std::move(m));
        };
        if (f == Flavor::ell_plus) {
            if (h0 == n)
                for (int e : ids)
                    if (A_.grade(e) == rest)
                        emit(0, Marker::gamma, e);
            if (is_zero_grade(rest) && cur.delta.empty() && n >= h0 && (n - h0) % 2 == 0)
                emit(0, Marker::v, (n - h0) / 2);
            return;
        }
        if (!is_zero_grade(rest) || (h0 - n) % 2 != 0)
            return;
        int u = (h0 - n) / 2;
        switch (f) {
        case Flavor::ell:
            if (u < 0 || (u > 0 && !cur.delta.empty()))
                return;
            break;
        case Flavor::ell_tilde:
            if (u < 0)
                return;
            break;
        case Flavor::script_L:
            if (u != 0)
                return;
            break;
        default:
            break;
        }
        emit(u, Marker::none, 0);
    };

    auto rec = [&](auto&& self, std::size_t i, const Grade& rest, int phis) -> void {
        if (i == ids.size()) {
            finish(rest);
            return;
        }
        const int id = ids[i];
        const Grade& gi = A_.grade(id);
        Grade r1 = rest;
        for (int e = 0;; ++e) {
            if (e > 0) {
                r1 = A_.grade_sub(r1, A_.grade_scale(gi, 2));
                if (!A_.grade_nonneg(r1) || (trivial && phis + e > cap))
                    break;
                cur.phi.push_back(id);
            }
            for (int qq = 0; qq <= 1; ++qq) {
                Grade r2 = qq ? A_.grade_sub(r1, A_.grade_scale(gi, 2)) : r1;
                if (!A_.grade_nonneg(r2))
                    continue;
                if (qq)
                    cur.q.push_back(id);
                for (int dd = 0; dd <= (use_delta ? 1 : 0); ++dd) {
                    Grade r3 = dd ? A_.grade_sub(r2, gi) : r2;
                    if (!A_.grade_nonneg(r3))
                        continue;
                    if (dd)
                        cur.delta.push_back(id);
                    self(self, i + 1, r3, phis + e);
                    if (dd)
                        cur.delta.pop_back();
                }
                if (qq)
                    cur.q.pop_back();
            }
            if (trivial && cap < 0)
                break;
        }
        cur.phi.resize(cur.phi.size() - std::count(cur.phi.begin(), cur.phi.end(), id));
    };
    rec(rec, 0, g, 0);
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<Ell::Instance>& Ell::instances(Flavor f, const Grade& g) const
{
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = inst_cache_.find({int(f), g});
        if (it != inst_cache_.end())
            return *it->second;
    }
    auto list = std::make_shared<std::vector<Instance>>();
    const Flavor ring = f == Flavor::ell_plus ? Flavor::ell : f;
    std::vector<int> ids;
    for (std::size_t id = 0; id < A_.num_basis(); ++id)
        if (A_.grade_nonneg(A_.grade_sub(g, A_.grade(int(id)))))
            ids.push_back(int(id));
    auto fits = [&](const Grade& h) { return A_.grade_nonneg(A_.grade_sub(g, h)); };
    auto G = [&](int id) { return A_.grade(id); };
    auto add = [&](EllPoly p, int hom, Grade gr, bool module, std::string label) {
        p = mul(f == Flavor::ell_plus && module ? Flavor::ell_plus : ring, p, one());
        if (!p.empty())
            list->push_back({std::move(p), hom, std::move(gr), module, std::move(label)});
    };
    auto M = [&](const EllPoly& a, const EllPoly& b) { return mul(f == Flavor::ell_plus ? Flavor::ell_plus : ring, a, b); };
    auto sum = [](EllPoly a, const EllPoly& b) {
        ell_add(a, b);
        return a;
    };
    auto E = [](int id) { return Element{id}; };
    auto name = [&](const char* r, std::initializer_list<int> args) {
        std::string s = std::string(r) + "(";
        bool first = true;
        for (int a : args) {
            s += (first ? "" : ",") + A_.format_id(a);
            first = false;
        }
        return s + ")";
    };
    const bool delta_ok = has_delta(f);

    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i; j < ids.size(); ++j) {
            int a = ids[i], b = ids[j];
            if (!fits(A_.grade_add(G(a), G(b))))
                continue;
            Element ab = A_.multiply(E(a), E(b));
            Grade g2 = A_.grade_scale(A_.grade_add(G(a), G(b)), 2);
            if (fits(g2)) {
                /* phi(ab) = phi(a)phi(b) + u q(a)q(b) */
                add(sum(sum(phi(ab), M(phi(E(a)), phi(E(b)))), M(u_pow(1), M(q(E(a)), q(E(b))))), 0, g2, false,
                    name("phi_mul", {a, b}));
                /* q(ab) = q(a)phi(b) + phi(a)q(b) */
                add(sum(sum(q(ab), M(q(E(a)), phi(E(b)))), M(phi(E(a)), q(E(b)))), 1, g2, false, name("q_mul", {a, b}));
            }
            if (delta_ok)
                for (std::size_t k = j; k < ids.size(); ++k) {
                    int c = ids[k];
                    Grade g3 = A_.grade_add(A_.grade_add(G(a), G(b)), G(c));
                    if (!fits(g3))
                        continue;
                    Element bc = A_.multiply(E(b), E(c)), ca = A_.multiply(E(c), E(a));
                    add(sum(sum(M(delta(ab), delta(E(c))), M(delta(bc), delta(E(a)))), M(delta(ca), delta(E(b)))), 2,
                        g3, false, name("delta_cocycle", {a, b, c}));
                }
        }
    for (int a : ids)
        for (int b : ids) {
            Grade gab2 = A_.grade_add(G(a), A_.grade_scale(G(b), 2));
            if (delta_ok && fits(gab2)) {
                Element abb = A_.multiply(E(a), A_.multiply(E(b), E(b)));
                Element ab = A_.multiply(E(a), E(b));
                add(sum(M(delta(E(a)), phi(E(b))), delta(abb)), 1, gab2, false, name("delta_phi", {a, b}));
                add(sum(M(delta(E(a)), q(E(b))), M(delta(ab), delta(E(b)))), 2, gab2, false, name("delta_q", {a, b}));
            }
            if (f != Flavor::ell_plus)
                continue;
            Grade ga2b = A_.grade_add(A_.grade_scale(G(a), 2), G(b));
            if (fits(ga2b)) {
                Element aab = A_.multiply(A_.multiply(E(a), E(a)), E(b));
                Element ab = A_.multiply(E(a), E(b));
                add(sum(M(phi(E(a)), gamma(E(b))), gamma(aab)), 0, ga2b, true, name("phi_gamma", {a, b}));
                add(sum(M(q(E(a)), gamma(E(b))), M(delta(E(a)), gamma(ab))), 1, ga2b, true, name("q_gamma", {a, b}));
            }
            Grade gab = A_.grade_add(G(a), G(b));
            if (a < b && fits(gab))
                add(sum(M(delta(E(a)), gamma(E(b))), M(gamma(E(a)), delta(E(b)))), 1, gab, true, name("delta_gamma", {a, b}));
            for (int c : ids) {
                if (c < b)
                    continue;
                Grade g3 = A_.grade_add(gab, G(c));
                if (!fits(g3))
                    continue;
                Element bc = A_.multiply(E(b), E(c)), ab = A_.multiply(E(a), E(b)), ac = A_.multiply(E(a), E(c));
                add(sum(sum(M(gamma(E(a)), delta(bc)), M(gamma(ab), delta(E(c)))), M(gamma(ac), delta(E(b)))), 1, g3,
                    true, name("gamma_cocycle", {a, b, c}));
            }
        }
    std::lock_guard<std::mutex> lock(mu_);
    return *inst_cache_.emplace(std::make_pair(int(f), g), list).first->second;
}

std::shared_ptr<const EllSpace> Ell::space_capped(Flavor f, int n, const Grade& g, int cap) const
{
    auto key = std::make_tuple(int(f), n, g, cap);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
    }
    auto sp = std::make_shared<const EllSpace>(*this, f, n, g, cap);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, sp).first->second;
}

std::shared_ptr<const EllSpace> Ell::space(Flavor f, int n, const Grade& g) const
{
    if (A_.split_mode() != SplitMode::trivial)
        return space_capped(f, n, g, -1);
    auto key = std::make_tuple(int(f), n, g, -2);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
    }
    constexpr int first_cap = 2, last_cap = 8;
    std::shared_ptr<EllSpace> result;
    for (int K = first_cap; K <= last_cap; ++K) {
        auto a = space_capped(f, n, g, K);
        auto b = space_capped(f, n, g, K + 1);
        bool same = a->dim() == b->dim();
        if (same) {
            Echelon img(b->dim());
            for (std::size_t i = 0; i < a->dim(); ++i)
                img.insert(b->coordinates(a->basis_element(i)));
            same = img.rank() == a->dim();
        }
        if (same || K == last_cap) {
            result = std::make_shared<EllSpace>(*a);
            result->stable_ = same;
            break;
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, result).first->second;
}

EllSpace::EllSpace(const Ell& L, Flavor f, int n, Grade g, int cap)
    : L_(L), flavor_(f), n_(n), grade_(std::move(g)), cap_(cap)
{
    monos_ = L.monomials(f, n_, grade_, cap_);
    for (std::size_t i = 0; i < monos_.size(); ++i)
        index_.emplace(monos_[i], i);
    rel_ = Echelon(monos_.size());
    if (!monos_.empty()) {
        const Algebra& A = L.algebra();
        std::map<std::tuple<int, int, Grade>, std::vector<EllMonomial>> mult;
        for (const auto& inst : L.instances(f, grade_)) {
            Grade rest = A.grade_sub(grade_, inst.grade);
            Flavor mf = f;
            if (f == Flavor::ell_plus && inst.module)
                mf = Flavor::ell;
            auto key = std::make_tuple(int(mf), n_ - inst.hom, rest);
            auto it = mult.find(key);
            if (it == mult.end())
                it = mult.emplace(key, L.monomials(mf, n_ - inst.hom, rest, cap_)).first;
            for (const auto& m : it->second) {
                EllPoly p = L.mul(f, {m}, inst.poly);
                if (p.empty())
                    continue;
                if (cap_ >= 0 && !covers(p))
                    continue;
                rel_.insert(raw(p));
            }
        }
    }
    free_ = rel_.free_columns();
}

bool EllSpace::covers(const EllPoly& p) const
{
    return std::all_of(p.begin(), p.end(), [&](const EllMonomial& m) { return index_.count(m) > 0; });
}

BitVec EllSpace::raw(const EllPoly& p) const
{
    BitVec v(monos_.size());
    for (const auto& m : p) {
        auto it = index_.find(m);
        if (it == index_.end())
            throw std::logic_error("monomial " + L_.format(m) + " is not in " + flavor_name(flavor_) +
                                   " degree " + std::to_string(n_));
        v.flip(it->second);
    }
    return v;
}

BitVec EllSpace::coordinates(const EllPoly& p) const
{
    BitVec v = raw(p);
    rel_.reduce(v);
    BitVec c(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i)
        if (v.get(free_[i]))
            c.set(i);
    return c;
}

EllPoly EllSpace::element_of(const BitVec& coords) const
{
    std::vector<EllMonomial> out;
    for (std::size_t i : coords.ones())
        out.push_back(monos_[free_[i]]);
    return ell_normalize(out);
}

EllPoly EllSpace::poly_of_raw(const BitVec& v) const
{
    std::vector<EllMonomial> out;
    for (std::size_t i : v.ones())
        out.push_back(monos_[i]);
    return ell_normalize(out);
}

/* ---- maps ---- */

Form Ell::map_r(const EllPoly& x) const
{
    Form out;
    for (const auto& m : x) {
        if (m.marker != Marker::none)
            throw std::invalid_argument("r is defined on ell, not on the module");
        if (m.u > 0)
            continue;
        Form acc{{A_.unit(), 0}};
        for (int a : m.phi)
            acc = R_.multiply(acc, R_.of_element(A_.mul(a, a)));
        for (int a : m.q)
            acc = R_.multiply(acc, R_.multiply(R_.of_element({a}), R_.d_of({a})));
        for (int a : m.delta)
            acc = R_.multiply(acc, R_.d_of({a}));
        form_add(out, acc);
    }
    return out;
}

EllPoly Ell::map_tau(const Form& w) const
{
    EllPoly out;
    for (const auto& t : w) {
        EllPoly acc = delta({t.mono});
        for (std::size_t i = 0; i < A_.num_generators(); ++i)
            if (t.dx >> i & 1u)
                acc = mul(Flavor::ell, acc, delta({A_.generator_id(i)}));
        ell_add(out, acc);
    }
    return out;
}

EllPoly Ell::map_I(const Form& w) const
{
    EllPoly out;
    for (const auto& t : w) {
        EllPoly acc = gamma({t.mono});
        for (std::size_t i = 0; i < A_.num_generators(); ++i)
            if (t.dx >> i & 1u)
                acc = mul(Flavor::ell_plus, acc, delta({A_.generator_id(i)}));
        ell_add(out, acc);
    }
    return out;
}

Form Ell::map_D(const EllPoly& x) const
{
    Form out;
    for (const auto& m : x) {
        if (m.marker != Marker::gamma)
            continue;
        EllMonomial ring = m;
        ring.marker = Marker::none;
        ring.mark = 0;
        form_add(out, R_.multiply(map_r({ring}), R_.d_of({m.mark})));
    }
    return out;
}

EllPoly Ell::map_iota(const EllPoly& x) const
{
    std::vector<EllMonomial> out;
    for (const auto& m : x)
        for (auto& r : reduce(Flavor::ell_per, m))
            out.push_back(r);
    return ell_normalize(out);
}

EllPoly Ell::map_S(const EllPoly& x) const
{
    std::vector<EllMonomial> out;
    for (const auto& m : x) {
        if (m.u > -1)
            continue;
        EllMonomial t = m;
        t.marker = Marker::v;
        t.mark = -m.u - 1;
        t.u = 0;
        for (auto& r : reduce(Flavor::ell_plus, t))
            out.push_back(r);
    }
    return ell_normalize(out);
}

EllPoly Ell::map_boundary(const EllPoly& x) const
{
    EllPoly out;
    for (const auto& m : x) {
        if (m.marker != Marker::gamma)
            continue;
        EllMonomial ring = m;
        ring.marker = Marker::none;
        ring.mark = 0;
        ell_add(out, mul(Flavor::ell, {ring}, delta({m.mark})));
    }
    return out;
}

EllPoly Ell::times_u(Flavor f, const EllPoly& x) const
{
    return mul(f, x, u_pow(1));
}

UForm Ell::star(const UForm& a, const UForm& b) const
{
    UForm out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            form_add(out[i + j], R_.multiply(x, y));
            form_add(out[i + j + 1], R_.multiply(R_.d(x), R_.d(y)));
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
}

UForm Ell::f_bar(const EllPoly& x) const
{
    UForm out;
    for (const auto& m : x) {
        if (m.marker != Marker::none || !m.delta.empty())
            throw std::invalid_argument("f_bar is defined on ell_tilde");
        UForm acc{{m.u, Form{{A_.unit(), 0}}}};
        for (int a : m.phi)
            acc = star(acc, UForm{{0, R_.of_element({a})}});
        for (int a : m.q)
            acc = star(acc, UForm{{0, R_.d_of({a})}});
        for (auto& [j, w] : acc)
            form_add(out[j], w);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
}

EllPoly Ell::s_bar(const UForm& w) const
{
    EllPoly out;
    for (const auto& [j, form] : w)
        for (const auto& t : form) {
            EllPoly acc = mul(Flavor::ell_per, u_pow(j), phi({t.mono}));
            for (std::size_t i = 0; i < A_.num_generators(); ++i)
                if (t.dx >> i & 1u)
                    acc = mul(Flavor::ell_per, acc, q({A_.generator_id(i)}));
            ell_add(out, acc);
        }
    return out;
}

std::string Ell::format(const EllMonomial& m) const
{
    std::string s;
    auto put = [&](const std::string& t) { s += (s.empty() ? "" : " ") + t; };
    if (m.u == 1)
        put("u");
    else if (m.u != 0)
        put("u^" + std::to_string(m.u));
    for (int a : m.phi)
        put("phi(" + A_.format_id(a) + ")");
    for (int a : m.q)
        put("q(" + A_.format_id(a) + ")");
    for (int a : m.delta)
        put("delta(" + A_.format_id(a) + ")");
    if (m.marker == Marker::gamma)
        put("gamma(" + A_.format_id(m.mark) + ")");
    else if (m.marker == Marker::v)
        put("v^" + std::to_string(m.mark));
    return s.empty() ? "1" : s;
}

std::string Ell::format(const EllPoly& p) const
{
    if (p.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? " + " : "") + format(p[i]);
    return s;
}

F2Matrix ell_matrix(const EllSpace& src, const EllSpace& tgt, const std::function<EllPoly(const EllPoly&)>& f)
{
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < src.dim(); ++i)
        cols.push_back(tgt.coordinates(f(src.basis_element(i))));
    return F2Matrix::from_columns(tgt.dim(), cols);
}

OmegaU omega_u(const DeRham& R, int n, const Grade& g)
{
    OmegaU w;
    Grade half;
    if (!halve(g, half))
        return w;
    const int top = int(R.algebra().num_generators());
    for (int j = 0; n + 2 * j <= top; ++j)
        if (n + 2 * j >= 0)
            w.parts.emplace_back(j, R.space(n + 2 * j, half));
    return w;
}

std::size_t OmegaU::dim() const
{
    std::size_t d = 0;
    for (const auto& p : parts)
        d += p.second->dim();
    return d;
}

BitVec OmegaU::coordinates(const UForm& w) const
{
    BitVec out;
    std::size_t used = 0;
    for (const auto& [j, sp] : parts) {
        auto it = w.find(j);
        BitVec c = it == w.end() ? BitVec(sp->dim()) : sp->coordinates(it->second);
        if (it != w.end())
            ++used;
        out = out.concat(c);
    }
    std::size_t nonzero = 0;
    for (const auto& [j, f] : w)
        if (!f.empty())
            ++nonzero;
    if (nonzero > used)
        throw std::logic_error("Omega[u] element outside its bidegree");
    return out;
}

UForm OmegaU::element(std::size_t i) const
{
    for (const auto& [j, sp] : parts) {
        if (i < sp->dim())
            return {{j, sp->basis_form(i)}};
        i -= sp->dim();
    }
    throw std::out_of_range("Omega[u] basis index");
}

std::vector<std::size_t> gr_ell(const Ell& L, int n, const Grade& g, int imax)
{
    auto tgt = L.space(Flavor::ell, n, g);
    std::vector<std::size_t> ranks;
    for (int i = 0; i <= imax + 1; ++i) {
        auto src = L.space(Flavor::ell, n + 2 * i, g);
        ranks.push_back(rank(ell_matrix(*src, *tgt, [&](const EllPoly& x) {
            return L.mul(Flavor::ell, x, L.u_pow(i));
        })));
    }
    std::vector<std::size_t> out;
    for (int i = 0; i <= imax; ++i)
        out.push_back(ranks[std::size_t(i)] - ranks[std::size_t(i) + 1]);
    return out;
}

}  // namespace cyclo2
