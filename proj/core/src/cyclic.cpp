#include "cyclo2/cyclic.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace cyclo2 {

namespace {

int floordiv(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

int ceildiv(int a, int b) { return -floordiv(-a, b); }

Word key_of(int k, const Word& w)
{
    Word key;
    key.reserve(w.size() + 1);
    key.push_back(k);
    key.insert(key.end(), w.begin(), w.end());
    return key;
}

}  // namespace

std::pair<int, int> exponent_bounds(const Algebra& A, Theory t, int n, const Grade& g, int S)
{
    int lo = ceildiv(-n, 2);
    int hi = INT_MAX;
    int mb = A.max_bars(g);
    if (mb >= 0)
        hi = floordiv(mb - n, 2);
    switch (t) {
    case Theory::hh:
        lo = std::max(lo, 0);
        hi = std::min(hi, 0);
        break;
    case Theory::minus:
        lo = std::max(lo, 0);
        hi = std::min(hi, S);
        break;
    case Theory::plus:
        hi = std::min(hi, 0);
        break;
    case Theory::per:
        hi = std::min(hi, S);
        break;
    }
    return {lo, hi};
}

int exact_window(const Algebra& A, int n, const Grade& g)
{
    int mb = A.max_bars(g);
    if (mb < 0)
        return -1;
    return std::max(0, floordiv(mb - (n - 1), 2));
}

TowerSlice::TowerSlice(const Hochschild& H, Theory t, int n, Grade g, int S)
    : H_(H), theory_(t), n_(n), grade_(std::move(g)), S_(S)
{
    auto [lo, hi] = exponent_bounds(H.algebra(), t, n, grade_, S);
    for (int k = lo; k <= hi; ++k)
        for (auto& w : H.words(n + 2 * k, grade_)) {
            index_.emplace(key_of(k, w), long(basis_.size()));
            basis_.emplace_back(k, std::move(w));
        }
}

bool TowerSlice::in_range(int k) const
{
    switch (theory_) {
    case Theory::hh:
        return k == 0;
    case Theory::minus:
        return k >= 0 && k <= S_;
    case Theory::plus:
        return k <= 0;
    default:
        return k <= S_;
    }
}

long TowerSlice::index_of(int k, const Word& w) const
{
    auto it = index_.find(key_of(k, w));
    return it == index_.end() ? -1 : it->second;
}

BitVec TowerSlice::vector_of(const UChain& x) const
{
    BitVec v(dim());
    for (const auto& [k, c] : x.at) {
        if (!in_range(k))
            continue;
        for (const auto& w : c) {
            long i = index_of(k, w);
            if (i < 0)
                throw std::logic_error("chain term " + H_.format(w) + " at u^" + std::to_string(k) +
                                       " is not in the tower basis of degree " + std::to_string(n_));
            v.flip(std::size_t(i));
        }
    }
    return v;
}

UChain TowerSlice::chain_of(const BitVec& v) const
{
    UChain x;
    x.theory = theory_;
    std::map<int, std::vector<Word>> acc;
    for (std::size_t i : v.ones())
        acc[basis_[i].first].push_back(basis_[i].second);
    for (auto& [k, ws] : acc)
        x.at[k] = chain_normalize(std::move(ws));
    return x;
}

F2Matrix TowerSlice::differential(const TowerSlice& target) const
{
    std::vector<BitVec> cols;
    cols.reserve(dim());
    for (const auto& [k, w] : basis_) {
        BitVec col(target.dim());
        auto put = [&](int kk, const Chain& c) {
            if (!target.in_range(kk))
                return;
            for (const auto& t : c) {
                long i = target.index_of(kk, t);
                if (i < 0)
                    throw std::logic_error("differential leaves the tower basis: " + H_.format(t));
                col.flip(std::size_t(i));
            }
        };
        put(k, H_.boundary_b(w));
        put(k + 1, H_.connes_B(w));
        cols.push_back(std::move(col));
    }
    return F2Matrix::from_columns(target.dim(), cols);
}

/* ---- homology ---- */

bool HomologyPresentation::is_cycle(const UChain& x) const
{
    return cycles.contains(slice->vector_of(x));
}

BitVec HomologyPresentation::coordinates(const UChain& x) const
{
    BitVec v = slice->vector_of(x);
    if (!cycles.contains(v))
        throw std::invalid_argument("not a cycle");
    return quotient.coordinates(v);
}

bool HomologyPresentation::is_boundary(const UChain& x) const
{
    return boundaries.contains(slice->vector_of(x));
}

UChain HomologyPresentation::representative(std::size_t i) const
{
    return slice->chain_of(quotient.representatives()[i]);
}

HomologyPresentation Homology::compute(Theory t, int n, const Grade& g, int S) const
{
    HomologyPresentation hp;
    hp.theory = t;
    hp.n = n;
    hp.grade = g;
    hp.S = S;
    auto up = std::make_shared<TowerSlice>(H, t, n + 1, g, S);
    auto mid = std::make_shared<TowerSlice>(H, t, n, g, S);
    TowerSlice down(H, t, n - 1, g, S);
    hp.cycles = rank_kernel_image(mid->differential(down)).kernel;
    hp.boundaries = Echelon(mid->dim());
    for (const auto& c : up->differential(*mid).columns())
        hp.boundaries.insert(c);
    hp.slice = mid;
    hp.quotient = QuotientCoords(hp.cycles, hp.boundaries);
    return hp;
}

HomologyPresentation Homology::homology(Theory t, int n, const Grade& g, int S) const
{
    HomologyPresentation hp = compute(t, n, g, S);
    if (t == Theory::hh || t == Theory::plus)
        return hp;
    int ew = exact_window(H.algebra(), n, g);
    if (ew >= 0 && S >= ew)
        return hp;
    HomologyPresentation next = compute(t, n, g, S + 1);
    hp.stable = false;
    if (next.dim() == hp.dim()) {
        /* the window projection T_{S+1} -> T_S must be an isomorphism on homology */
        Echelon img(hp.dim());
        for (std::size_t i = 0; i < next.dim(); ++i)
            img.insert(hp.coordinates(next.representative(i)));
        hp.stable = img.rank() == hp.dim();
    }
    return hp;
}

F2Matrix class_map(const HomologyPresentation& src, const HomologyPresentation& tgt,
                   const std::function<UChain(const UChain&)>& f)
{
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < src.dim(); ++i)
        cols.push_back(tgt.coordinates(f(src.representative(i))));
    return F2Matrix::from_columns(tgt.dim(), cols);
}

/* ---- long exact sequences ---- */

UChain connecting_minus(const Hochschild& H, const Chain& hh_cycle)
{
    return uchain(Theory::minus, 0, H.connes_B(hh_cycle));
}

UChain project_h(const UChain& minus_chain)
{
    UChain r;
    r.theory = Theory::hh;
    auto it = minus_chain.at.find(0);
    if (it != minus_chain.at.end())
        r.at[0] = it->second;
    return r;
}

UChain period_S(const UChain& per_chain)
{
    UChain r;
    r.theory = Theory::plus;
    for (const auto& [k, c] : per_chain.at)
        if (k <= -1 && !c.empty())
            r.at[k + 1] = c;
    return r;
}

UChain connecting_connes(const Hochschild& H, const UChain& plus_cycle)
{
    UChain lift = plus_cycle.shifted(-1);
    lift.theory = Theory::plus;
    UChain d = total_boundary(H, lift);
    for (const auto& [k, c] : d.at)
        if (k != 0 && !c.empty())
            throw std::logic_error("connecting map: boundary of the lift leaves column 0");
    UChain r = d;
    r.theory = Theory::hh;
    return r;
}

UChain connecting_per(const Hochschild& H, const UChain& plus_cycle, int S)
{
    UChain lift = plus_cycle.shifted(-1);
    lift.theory = Theory::per;
    UChain d = total_boundary(H, lift, S);
    for (const auto& [k, c] : d.at)
        if (k < 0 && !c.empty())
            throw std::logic_error("connecting map: boundary of the lift has negative exponents");
    d.theory = Theory::minus;
    return d;
}

static UChain retag(UChain x, Theory t)
{
    x.theory = t;
    return x;
}

static UChain times_u(const UChain& x)
{
    return x.shifted(1);
}

LesMaps les_maps(const Hochschild& H, LesKind which, int n, const Grade& g, int S)
{
    Homology hom(H);
    LesMaps m;
    m.kind = which;
    auto hh_chain = [](const UChain& x) {
        auto it = x.at.find(0);
        return it == x.at.end() ? Chain{} : it->second;
    };
    switch (which) {
    case LesKind::minus_les:
        m.spaces = {hom.homology(Theory::minus, n + 2, g, S), hom.homology(Theory::minus, n, g, S),
                    hom.homology(Theory::hh, n, g, S), hom.homology(Theory::minus, n + 1, g, S),
                    hom.homology(Theory::minus, n - 1, g, S)};
        m.names = {"u", "h", "d", "u"};
        m.maps.push_back(class_map(m.spaces[0], m.spaces[1], times_u));
        m.maps.push_back(class_map(m.spaces[1], m.spaces[2], project_h));
        m.maps.push_back(class_map(m.spaces[2], m.spaces[3], [&](const UChain& x) { return connecting_minus(H, hh_chain(x)); }));
        m.maps.push_back(class_map(m.spaces[3], m.spaces[4], times_u));
        break;
    case LesKind::connes:
        m.spaces = {hom.homology(Theory::hh, n, g, S), hom.homology(Theory::plus, n, g, S),
                    hom.homology(Theory::plus, n - 2, g, S), hom.homology(Theory::hh, n - 1, g, S),
                    hom.homology(Theory::plus, n - 1, g, S)};
        m.names = {"I", "u", "d", "I"};
        m.maps.push_back(class_map(m.spaces[0], m.spaces[1], [](const UChain& x) { return retag(x, Theory::plus); }));
        m.maps.push_back(class_map(m.spaces[1], m.spaces[2], times_u));
        m.maps.push_back(class_map(m.spaces[2], m.spaces[3], [&](const UChain& x) { return connecting_connes(H, x); }));
        m.maps.push_back(class_map(m.spaces[3], m.spaces[4], [](const UChain& x) { return retag(x, Theory::plus); }));
        break;
    case LesKind::per_les:
        m.spaces = {hom.homology(Theory::minus, n, g, S), hom.homology(Theory::per, n, g, S),
                    hom.homology(Theory::plus, n - 2, g, S), hom.homology(Theory::minus, n - 1, g, S),
                    hom.homology(Theory::per, n - 1, g, S)};
        m.names = {"i", "S", "d", "i"};
        m.maps.push_back(class_map(m.spaces[0], m.spaces[1], [](const UChain& x) { return retag(x, Theory::per); }));
        m.maps.push_back(class_map(m.spaces[1], m.spaces[2], period_S));
        m.maps.push_back(class_map(m.spaces[2], m.spaces[3], [&](const UChain& x) { return connecting_per(H, x, S); }));
        m.maps.push_back(class_map(m.spaces[3], m.spaces[4], [](const UChain& x) { return retag(x, Theory::per); }));
        break;
    }
    for (const auto& s : m.spaces)
        m.stable = m.stable && s.stable;
    return m;
}

bool les_exact(const LesMaps& m)
{
    for (std::size_t i = 0; i + 1 < m.maps.size(); ++i) {
        if (!(m.maps[i + 1] * m.maps[i]).is_zero())
            return false;
        auto next = rank_kernel_image(m.maps[i + 1]);
        if (next.kernel.dim() != rank(m.maps[i]))
            return false;
    }
    return true;
}

/* ---- spectral sequence of the column filtration ---- */

PageEntry e1_page(const Hochschild& H, int alpha, int beta, int s, int t, const Grade& g)
{
    PageEntry e;
    e.s = s;
    e.t = t;
    if (s < alpha || s > beta)
        return e;
    Homology hom(H);
    auto hh = hom.homology(Theory::hh, t - s, g, 0);
    e.dim = hh.dim();
    for (std::size_t i = 0; i < hh.dim(); ++i)
        e.basis.push_back(hh.representative(i).at[0]);
    return e;
}

PageEntry e2_page(const Hochschild& H, int alpha, int beta, int s, int t, const Grade& g)
{
    PageEntry e;
    e.s = s;
    e.t = t;
    if (s < alpha || s > beta)
        return e;
    Homology hom(H);
    const int m = t - s;
    auto here = hom.homology(Theory::hh, m, g, 0);
    auto Bmap = [&](const UChain& x) {
        auto it = x.at.find(0);
        return uchain(Theory::hh, 0, it == x.at.end() ? Chain{} : H.connes_B(it->second));
    };
    SubspaceBasis ker;
    if (s - 1 >= alpha) {
        auto above = hom.homology(Theory::hh, m + 1, g, 0);
        ker = rank_kernel_image(class_map(here, above, Bmap)).kernel;
    }
    else {
        Echelon all(here.dim());
        for (std::size_t i = 0; i < here.dim(); ++i)
            all.insert(unit_vector(here.dim(), i));
        ker = all.basis();
    }
    Echelon img(here.dim());
    if (s + 1 <= beta && m - 1 >= 0) {
        auto below = hom.homology(Theory::hh, m - 1, g, 0);
        for (const auto& c : class_map(below, here, Bmap).columns())
            img.insert(c);
    }
    QuotientCoords q(ker, img);
    e.dim = q.dim();
    for (const auto& v : q.representatives()) {
        BitVec chain_vec(here.slice->dim());
        const auto& reps = here.quotient.representatives();
        for (std::size_t i : v.ones())
            chain_vec ^= reps[i];
        e.basis.push_back(here.slice->chain_of(chain_vec).at[0]);
    }
    return e;
}

/* ---- workers ---- */

unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CYCLO2_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1)
            return unsigned(v);
    }
    return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn)
{
    unsigned nw = std::min<std::size_t>(worker_count(), count);
    if (nw <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w)
        pool.emplace_back([&]() {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                }
                catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err)
                        err = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

}  // namespace cyclo2
