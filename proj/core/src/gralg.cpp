#include "cyclo2/gralg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cyclo2 {

unsigned total_degree(const Mono& m)
{
    return std::accumulate(m.begin(), m.end(), 0u);
}

int compare_mono(const Mono& a, const Mono& b)
{
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

namespace {
struct Desc {
    bool operator()(const Mono& a, const Mono& b) const { return compare_mono(a, b) > 0; }
};
}  // namespace

bool mono_divides(const Mono& a, const Mono& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

Mono mono_mul(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = uint16_t(a[i] + b[i]);
    return r;
}

static Mono mono_div(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = uint16_t(a[i] - b[i]);
    return r;
}

static Mono mono_lcm(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

Poly poly_normalize(std::vector<Mono> terms)
{
    std::sort(terms.begin(), terms.end(), Desc{});
    Poly out;
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

void poly_add(Poly& a, const Poly& b)
{
    Poly r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            r.push_back(a[i++]);
        }
        else if (i == a.size()) {
            r.push_back(b[j++]);
        }
        else {
            int c = compare_mono(a[i], b[j]);
            if (c > 0)
                r.push_back(a[i++]);
            else if (c < 0)
                r.push_back(b[j++]);
            else {
                ++i;
                ++j;
            }
        }
    }
    a = std::move(r);
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    std::vector<Mono> t;
    for (const auto& x : a)
        for (const auto& y : b)
            t.push_back(mono_mul(x, y));
    return poly_normalize(std::move(t));
}

static Poly poly_shift(const Poly& p, const Mono& m)
{
    Poly r;
    r.reserve(p.size());
    for (const auto& t : p)
        r.push_back(mono_mul(t, m));
    return r;
}

static Poly reduce_full(const Poly& p, const std::vector<Poly>& basis)
{
    std::set<Mono, Desc> work(p.begin(), p.end());
    Poly out;
    while (!work.empty()) {
        Mono t = *work.begin();
        const Poly* g = nullptr;
        for (const auto& b : basis)
            if (!b.empty() && mono_divides(b[0], t)) {
                g = &b;
                break;
            }
        if (!g) {
            work.erase(work.begin());
            out.push_back(t);
            continue;
        }
        Mono q = mono_div(t, (*g)[0]);
        for (const auto& s : *g) {
            Mono m = mono_mul(s, q);
            auto it = work.find(m);
            if (it != work.end())
                work.erase(it);
            else
                work.insert(m);
        }
    }
    return out;
}

std::vector<Poly> groebner_basis(std::vector<Poly> gens)
{
    std::vector<Poly> g;
    for (auto& p : gens) {
        Poly r = reduce_full(p, g);
        if (!r.empty())
            g.push_back(r);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Mono& a = g[i][0];
        const Mono& b = g[j][0];
        Mono l = mono_lcm(a, b);
        if (l == mono_mul(a, b))
            continue;  // coprime leads
        Poly s = poly_shift(g[i], mono_div(l, a));
        poly_add(s, poly_shift(g[j], mono_div(l, b)));
        Poly r = reduce_full(s, g);
        if (r.empty())
            continue;
        g.push_back(r);
        for (std::size_t k = 0; k + 1 < g.size(); ++k)
            pairs.emplace_back(k, g.size() - 1);
    }
    /* minimize and interreduce */
    std::vector<Poly> mins;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j)
                continue;
            if (mono_divides(g[j][0], g[i][0]) && (g[j][0] != g[i][0] || j < i))
                redundant = true;
        }
        if (!redundant)
            mins.push_back(g[i]);
    }
    std::vector<Poly> red;
    for (std::size_t i = 0; i < mins.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < mins.size(); ++j)
            if (j != i)
                others.push_back(mins[j]);
        Poly tail(mins[i].begin() + 1, mins[i].end());
        Poly r = reduce_full(tail, others);
        r.insert(r.begin(), mins[i][0]);
        red.push_back(r);
    }
    std::sort(red.begin(), red.end(), [](const Poly& a, const Poly& b) { return compare_mono(a[0], b[0]) < 0; });
    return red;
}

Algebra::Algebra(AlgebraPresentation p) : pres_(std::move(p))
{
    validate();
    gb_ = groebner_basis(pres_.relations);
    bool monomial = std::all_of(gb_.begin(), gb_.end(), [](const Poly& q) { return q.size() == 1; });
    if (monomial)
        split_ = SplitMode::multidegree;
    else
        split_ = graded() ? SplitMode::weight : SplitMode::trivial;
    if (!graded()) {
        for (std::size_t i = 0; i < num_generators(); ++i) {
            bool pure = false;
            for (const auto& q : gb_) {
                const Mono& l = q[0];
                if (l[i] > 0 && total_degree(l) == l[i])
                    pure = true;
            }
            if (!pure)
                throw AlgebraError("not finite type: ungraded algebra is infinite-dimensional");
        }
        prepare(0);
    }
}

void Algebra::validate()
{
    const std::size_t n = pres_.generators.size();
    for (const auto& g : pres_.generators) {
        if (graded() && g.degree == 0)
            throw AlgebraError("degree-0 generator unsupported in graded mode: " + g.name);
        if (g.degree < 0)
            throw AlgebraError("negative generator degree: " + g.name);
        if (!graded() && g.degree != 0)
            throw AlgebraError("ungraded mode requires degree 0 for generator " + g.name);
        if (g.augmentation != 0 && g.augmentation != 1)
            throw AlgebraError("augmentation must be 0 or 1 for generator " + g.name);
    }
    const bool declared = std::any_of(pres_.generators.begin(), pres_.generators.end(),
                                      [](const Generator& g) { return g.augmentation_declared; });
    for (std::size_t r = 0; r < pres_.relations.size(); ++r) {
        auto& rel = pres_.relations[r];
        for (auto& m : rel)
            if (m.size() != n)
                throw AlgebraError("relation uses wrong number of variables");
        rel = poly_normalize(rel);
        if (graded() && !rel.empty()) {
            unsigned d0 = internal_degree(rel[0]);
            for (const auto& m : rel)
                if (internal_degree(m) != d0)
                    throw AlgebraError("relation " + std::to_string(r + 1) + " is not homogeneous");
        }
        if (supplemented_ && augment(rel) != 0) {
            if (declared)
                throw AlgebraError("augmentation does not annihilate relation " + std::to_string(r + 1));
            supplemented_ = false;
        }
    }
}

unsigned Algebra::internal_degree(const Mono& m) const
{
    unsigned d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += unsigned(m[i]) * unsigned(pres_.generators[i].degree);
    return d;
}

int Algebra::split_weight(std::size_t g) const
{
    if (graded())
        return pres_.generators[g].degree;
    return split_ == SplitMode::multidegree ? 1 : 0;
}

Poly Algebra::normal_form(const Poly& p) const
{
    for (const auto& m : p)
        if (m.size() != num_generators())
            throw AlgebraError("polynomial over undeclared generators");
    return reduce_full(poly_normalize(p), gb_);
}

bool Algebra::is_standard(const Mono& m) const
{
    for (const auto& g : gb_)
        if (mono_divides(g[0], m))
            return false;
    return true;
}

int Algebra::augment(const Poly& p) const
{
    if (!supplemented_)
        throw AlgebraError("algebra has no augmentation");
    int v = 0;
    for (const auto& m : p) {
        int t = 1;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0 && pres_.generators[i].augmentation == 0)
                t = 0;
        v ^= t;
    }
    return v;
}

void Algebra::enumerate_standard(int max_weight, std::vector<Mono>& out) const
{
    const std::size_t n = num_generators();
    if (!graded()) {
        std::set<Mono> seen;
        std::vector<Mono> stack{Mono(n, 0)};
        seen.insert(stack[0]);
        while (!stack.empty()) {
            Mono m = stack.back();
            stack.pop_back();
            out.push_back(m);
            for (std::size_t i = 0; i < n; ++i) {
                Mono e = m;
                ++e[i];
                if (is_standard(e) && seen.insert(e).second)
                    stack.push_back(e);
            }
        }
        return;
    }
    Mono cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == n) {
            if (is_standard(cur))
                out.push_back(cur);
            return;
        }
        int d = pres_.generators[i].degree;
        for (int e = 0; e * d <= left; ++e) {
            cur[i] = uint16_t(e);
            self(self, i + 1, left - e * d);
        }
        cur[i] = 0;
    };
    rec(rec, 0, max_weight);
}

std::vector<Mono> Algebra::degree_basis(int d) const
{
    std::vector<Mono> all;
    if (!graded()) {
        if (d != 0)
            return {};
        enumerate_standard(0, all);
    }
    else {
        enumerate_standard(d, all);
        std::erase_if(all, [&](const Mono& m) { return int(internal_degree(m)) != d; });
    }
    std::sort(all.begin(), all.end(), [](const Mono& a, const Mono& b) {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return compare_mono(a, b) > 0;
    });
    return all;
}

void Algebra::prepare(int max_weight)
{
    if (!graded() && prepared_ >= 0)
        return;
    if (graded() && max_weight <= prepared_)
        return;
    std::vector<Mono> all;
    enumerate_standard(max_weight, all);
    auto wt = [&](const Mono& m) {
        int w = 0;
        for (std::size_t i = 0; i < m.size(); ++i)
            w += int(m[i]) * split_weight(i);
        return w;
    };
    std::sort(all.begin(), all.end(), [&](const Mono& a, const Mono& b) {
        int wa = wt(a), wb = wt(b);
        if (wa != wb)
            return wa < wb;
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return compare_mono(a, b) > 0;
    });
    monos_ = all;
    index_.clear();
    grades_.clear();
    weights_.clear();
    by_grade_.clear();
    for (std::size_t i = 0; i < monos_.size(); ++i) {
        const Mono& m = monos_[i];
        index_[m] = int(i);
        Grade g;
        if (split_ == SplitMode::multidegree)
            g.assign(m.begin(), m.end());
        else if (split_ == SplitMode::weight)
            g = {wt(m)};
        grades_.push_back(g);
        weights_.push_back(wt(m));
        by_grade_[g].push_back(int(i));
    }
    prepared_ = graded() ? max_weight : 0;
    const std::size_t N = monos_.size();
    table_.assign(N, std::vector<Element>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
            if (graded() && weights_[i] + weights_[j] > max_weight)
                continue;
            Poly nf = reduce_full({mono_mul(monos_[i], monos_[j])}, gb_);
            table_[i][j] = to_element(nf);
            table_[j][i] = table_[i][j];
        }
}

int Algebra::id_of(const Mono& m) const
{
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

int Algebra::generator_id(std::size_t g) const
{
    Mono m(num_generators(), 0);
    m[g] = 1;
    Element e = to_element(normal_form({m}));
    if (e.size() != 1)
        throw AlgebraError("generator is not a basis monomial");
    return e[0];
}

const Element& Algebra::mul(int i, int j) const
{
    if (graded() && weights_[std::size_t(i)] + weights_[std::size_t(j)] > prepared_)
        throw std::out_of_range("product beyond prepared weight");
    return table_[std::size_t(i)][std::size_t(j)];
}

Element Algebra::multiply(const Element& a, const Element& b) const
{
    std::vector<int> acc;
    for (int x : a)
        for (int y : b) {
            const Element& p = mul(x, y);
            acc.insert(acc.end(), p.begin(), p.end());
        }
    std::sort(acc.begin(), acc.end());
    Element out;
    for (std::size_t i = 0; i < acc.size();) {
        std::size_t j = i;
        while (j < acc.size() && acc[j] == acc[i])
            ++j;
        if ((j - i) & 1)
            out.push_back(acc[i]);
        i = j;
    }
    return out;
}

Element Algebra::to_element(const Poly& p) const
{
    Element e;
    for (const auto& m : p) {
        int id = id_of(m);
        if (id < 0)
            throw std::out_of_range("monomial not standard or beyond prepared weight: " + format(m));
        e.push_back(id);
    }
    std::sort(e.begin(), e.end());
    return e;
}

Poly Algebra::to_poly(const Element& e) const
{
    std::vector<Mono> t;
    for (int id : e)
        t.push_back(mono(id));
    return poly_normalize(t);
}

int Algebra::augment(const Element& e) const
{
    return augment(to_poly(e));
}

Element Algebra::derivative(int id, std::size_t g) const
{
    Mono m = mono(id);
    if (!(m[g] & 1))
        return {};
    --m[g];
    return {id_of(m)};
}

Grade Algebra::grade_of(const Mono& m) const
{
    switch (split_) {
    case SplitMode::multidegree:
        return Grade(m.begin(), m.end());
    case SplitMode::weight:
        return {int(internal_degree(m))};
    default:
        return {};
    }
}

Grade Algebra::zero_grade() const
{
    switch (split_) {
    case SplitMode::multidegree:
        return Grade(num_generators(), 0);
    case SplitMode::weight:
        return Grade{0};
    default:
        return Grade{};
    }
}

Grade Algebra::grade_add(const Grade& a, const Grade& b) const
{
    Grade r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

Grade Algebra::grade_sub(const Grade& a, const Grade& b) const
{
    Grade r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= b[i];
    return r;
}

Grade Algebra::grade_scale(const Grade& a, int k) const
{
    Grade r = a;
    for (auto& x : r)
        x *= k;
    return r;
}

bool Algebra::grade_nonneg(const Grade& a) const
{
    return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

int Algebra::grade_weight(const Grade& g) const
{
    switch (split_) {
    case SplitMode::multidegree: {
        int w = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            w += g[i] * split_weight(i);
        return w;
    }
    case SplitMode::weight:
        return g[0];
    default:
        return 0;
    }
}

std::vector<Grade> Algebra::grades_of_weight(int w) const
{
    std::vector<Grade> out;
    if (split_ == SplitMode::trivial) {
        if (w == 0)
            out.push_back({});
        return out;
    }
    if (split_ == SplitMode::weight) {
        out.push_back({w});
        return out;
    }
    const std::size_t n = num_generators();
    Grade cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == n) {
            if (left == 0)
                out.push_back(cur);
            return;
        }
        int d = split_weight(i);
        for (int e = 0; e * d <= left; ++e) {
            cur[i] = e;
            self(self, i + 1, left - e * d);
        }
        cur[i] = 0;
    };
    rec(rec, 0, w);
    return out;
}

int Algebra::max_bars(const Grade& g) const
{
    switch (split_) {
    case SplitMode::multidegree:
        return std::accumulate(g.begin(), g.end(), 0);
    case SplitMode::weight:
        return g[0];
    default:
        return -1;
    }
}

const std::vector<int>& Algebra::ids_of_grade(const Grade& g) const
{
    static const std::vector<int> none;
    auto it = by_grade_.find(g);
    return it == by_grade_.end() ? none : it->second;
}

std::string Algebra::format(const Mono& m) const
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i])
            continue;
        if (!s.empty())
            s += "*";
        s += pres_.generators[i].name;
        if (m[i] > 1)
            s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string Algebra::format(const Element& e) const
{
    if (e.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i)
            s += " + ";
        s += format_id(e[i]);
    }
    return s;
}

}  // namespace cyclo2
