#include "cyclo2/hochschild.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace cyclo2 {

Chain chain_normalize(std::vector<Word> terms)
{
    std::sort(terms.begin(), terms.end());
    Chain out;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) & 1)
            out.push_back(std::move(terms[i]));
        i = j;
    }
    return out;
}

void chain_add(Chain& a, const Chain& b)
{
    Chain r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size())
            r.push_back(std::move(a[i++]));
        else if (i == a.size())
            r.push_back(b[j++]);
        else if (a[i] < b[j])
            r.push_back(std::move(a[i++]));
        else if (b[j] < a[i])
            r.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    a = std::move(r);
}

/* ---- permutations ---- */

namespace {

std::mutex perm_mutex;
std::map<std::pair<int, int>, std::vector<Perm>> shuffle_cache, cyclic_cache;

std::vector<Perm> make_shuffles(int p, int q)
{
    std::vector<Perm> out;
    const int n = p + q;
    std::vector<int> pick(std::size_t(n), 0);
    std::fill(pick.begin(), pick.begin() + p, 1);
    /* pick marks which positions of the value list go to the first block */
    std::sort(pick.begin(), pick.end());
    do {
        Perm s;
        for (int v = 1; v <= n; ++v)
            if (pick[std::size_t(v - 1)])
                s.push_back(v);
        for (int v = 1; v <= n; ++v)
            if (!pick[std::size_t(v - 1)])
                s.push_back(v);
        out.push_back(s);
    } while (std::next_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

void interleave(const std::vector<int>& a, const std::vector<int>& b, std::size_t i, std::size_t j, std::vector<int>& cur,
                std::vector<Perm>& out)
{
    if (i == a.size() && j == b.size()) {
        out.push_back(cur);
        return;
    }
    if (i < a.size()) {
        cur.push_back(a[i]);
        interleave(a, b, i + 1, j, cur, out);
        cur.pop_back();
    }
    if (j < b.size()) {
        cur.push_back(b[j]);
        interleave(a, b, i, j + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Perm> make_cyclic_shuffles(int p, int q)
{
    std::vector<Perm> all;
    for (int r1 = 0; r1 < p; ++r1)
        for (int r2 = 0; r2 < q; ++r2) {
            std::vector<int> a, b;
            for (int i = 0; i < p; ++i)
                a.push_back(1 + (i + r1) % p);
            for (int i = 0; i < q; ++i)
                b.push_back(p + 1 + (i + r2) % q);
            std::vector<int> cur;
            interleave(a, b, 0, 0, cur, all);
        }
    std::vector<Perm> out;
    for (auto& s : all) {
        auto one = std::find(s.begin(), s.end(), 1);
        auto first_b = std::find(s.begin(), s.end(), p + 1);
        if (one < first_b)
            out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

const std::vector<Perm>& shuffles(int p, int q)
{
    if (p < 0 || q < 0)
        throw std::invalid_argument("shuffles: negative block size");
    std::lock_guard<std::mutex> lock(perm_mutex);
    auto key = std::make_pair(p, q);
    auto it = shuffle_cache.find(key);
    if (it == shuffle_cache.end())
        it = shuffle_cache.emplace(key, make_shuffles(p, q)).first;
    return it->second;
}

const std::vector<Perm>& cyclic_shuffles(int p, int q)
{
    if (p < 1 || q < 1)
        throw std::invalid_argument("cyclic_shuffles: block sizes must be positive");
    std::lock_guard<std::mutex> lock(perm_mutex);
    auto key = std::make_pair(p, q);
    auto it = cyclic_cache.find(key);
    if (it == cyclic_cache.end())
        it = cyclic_cache.emplace(key, make_cyclic_shuffles(p, q)).first;
    return it->second;
}

Perm inverse(const Perm& s)
{
    Perm r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        r[std::size_t(s[i] - 1)] = int(i + 1);
    return r;
}

/* ---- Hochschild ---- */

Grade Hochschild::grade(const Word& w) const
{
    Grade g = A_.zero_grade();
    for (int x : w)
        g = A_.grade_add(g, A_.grade(x));
    return g;
}

int Hochschild::weight(const Word& w) const
{
    int s = 0;
    for (int x : w)
        s += A_.weight(x);
    return s;
}

Chain Hochschild::make(const Element& a0, const std::vector<Element>& bars) const
{
    std::vector<Word> partial;
    for (int h : a0)
        partial.push_back(Word{h});
    for (const auto& e : bars) {
        std::vector<Word> next;
        for (const auto& w : partial)
            for (int x : e) {
                if (x == A_.unit())
                    continue;
                Word v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        partial = std::move(next);
        if (partial.empty())
            break;
    }
    return chain_normalize(std::move(partial));
}

Chain Hochschild::make_ids(int a0, const std::vector<int>& bars) const
{
    for (int x : bars)
        if (x == A_.unit())
            return {};
    Word w{a0};
    w.insert(w.end(), bars.begin(), bars.end());
    return {w};
}

Chain Hochschild::boundary_b(const Word& w) const
{
    const int n = bar_length(w);
    std::vector<Word> out;
    auto emit_head = [&](const Element& head, const Word& rest) {
        for (int h : head) {
            Word v{h};
            v.insert(v.end(), rest.begin(), rest.end());
            out.push_back(std::move(v));
        }
    };
    for (int i = 0; i < n; ++i) {
        const Element& p = A_.mul(w[std::size_t(i)], w[std::size_t(i + 1)]);
        if (i == 0) {
            emit_head(p, Word(w.begin() + 2, w.end()));
        }
        else {
            for (int x : p) {
                if (x == A_.unit())
                    continue;
                Word v(w.begin(), w.begin() + i);
                v.push_back(x);
                v.insert(v.end(), w.begin() + i + 2, w.end());
                out.push_back(std::move(v));
            }
        }
    }
    if (n > 0)
        emit_head(A_.mul(w[std::size_t(n)], w[0]), Word(w.begin() + 1, w.end() - 1));
    return chain_normalize(std::move(out));
}

Chain Hochschild::connes_B(const Word& w) const
{
    if (w[0] == A_.unit())
        return {};
    const int n = bar_length(w);
    std::vector<Word> out;
    for (int i = 0; i <= n; ++i) {
        Word v{A_.unit()};
        for (int j = i; j <= n; ++j)
            v.push_back(w[std::size_t(j)]);
        for (int j = 0; j < i; ++j)
            v.push_back(w[std::size_t(j)]);
        out.push_back(std::move(v));
    }
    return chain_normalize(std::move(out));
}

Chain Hochschild::boundary_b(const Chain& c) const
{
    std::vector<Word> all;
    for (const auto& w : c) {
        Chain t = boundary_b(w);
        all.insert(all.end(), t.begin(), t.end());
    }
    return chain_normalize(std::move(all));
}

Chain Hochschild::connes_B(const Chain& c) const
{
    std::vector<Word> all;
    for (const auto& w : c) {
        Chain t = connes_B(w);
        all.insert(all.end(), t.begin(), t.end());
    }
    return chain_normalize(std::move(all));
}

std::vector<Word> Hochschild::words(int n, const Grade& g) const
{
    std::vector<Word> out;
    if (n < 0)
        return out;
    const auto& table = A_.grade_table();
    const bool split = A_.split_mode() != SplitMode::trivial;
    if (split && !A_.grade_nonneg(g))
        return out;
    if (split) {
        int mb = A_.max_bars(g);
        if (n > mb)
            return out;
    }
    Word cur;
    auto rec = [&](auto&& self, int pos, const Grade& left) -> void {
        if (pos == n + 1) {
            if (!split || left == A_.zero_grade())
                out.push_back(cur);
            return;
        }
        if (pos == n) {
            if (split) {
                for (int id : A_.ids_of_grade(left)) {
                    if (pos > 0 && id == A_.unit())
                        continue;
                    cur.push_back(id);
                    self(self, pos + 1, A_.zero_grade());
                    cur.pop_back();
                }
            }
            else {
                for (int id = (pos > 0 ? 1 : 0); id < int(A_.num_basis()); ++id) {
                    cur.push_back(id);
                    self(self, pos + 1, left);
                    cur.pop_back();
                }
            }
            return;
        }
        if (!split) {
            for (int id = (pos > 0 ? 1 : 0); id < int(A_.num_basis()); ++id) {
                cur.push_back(id);
                self(self, pos + 1, left);
                cur.pop_back();
            }
            return;
        }
        const int bars_after = n - pos;
        for (const auto& [gr, ids] : table) {
            Grade rest = A_.grade_sub(left, gr);
            if (!A_.grade_nonneg(rest) || A_.max_bars(rest) < bars_after)
                continue;
            for (int id : ids) {
                if (pos > 0 && id == A_.unit())
                    continue;
                cur.push_back(id);
                self(self, pos + 1, rest);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, g);
    std::sort(out.begin(), out.end());
    return out;
}

void Hochschild::shuffle_words(const Word& x, const Word& y, std::vector<Word>& out) const
{
    const int p = bar_length(x), q = bar_length(y);
    const Element& head = A_.mul(x[0], y[0]);
    if (head.empty())
        return;
    std::vector<int> seq(x.begin() + 1, x.end());
    seq.insert(seq.end(), y.begin() + 1, y.end());
    for (const auto& t : shuffles(p, q)) {
        /* tau.(a0, x1..xn) puts x_i in slot tau(i) */
        Word body(std::size_t(p + q));
        for (int i = 0; i < p + q; ++i)
            body[std::size_t(t[std::size_t(i)] - 1)] = seq[std::size_t(i)];
        for (int h : head) {
            Word w{h};
            w.insert(w.end(), body.begin(), body.end());
            out.push_back(std::move(w));
        }
    }
}

void Hochschild::cyclic_words(const Word& x, const Word& y, std::vector<Word>& out) const
{
    if (x[0] == A_.unit() || y[0] == A_.unit())
        return;
    const int p = bar_length(x) + 1, q = bar_length(y) + 1;
    std::vector<int> seq(x.begin(), x.end());
    seq.insert(seq.end(), y.begin(), y.end());
    for (const auto& s : cyclic_shuffles(p, q)) {
        /* sigma^{-1}.(x1..xn) = (x_{sigma(1)}, ..., x_{sigma(n)}) */
        Word w{A_.unit()};
        for (int i = 0; i < p + q; ++i)
            w.push_back(seq[std::size_t(s[std::size_t(i)] - 1)]);
        out.push_back(std::move(w));
    }
}

Chain Hochschild::shuffle_product(const Chain& x, const Chain& y) const
{
    std::vector<Word> out;
    for (const auto& a : x)
        for (const auto& b : y)
            shuffle_words(a, b, out);
    return chain_normalize(std::move(out));
}

Chain Hochschild::cyclic_shuffle_product(const Chain& x, const Chain& y) const
{
    std::vector<Word> out;
    for (const auto& a : x)
        for (const auto& b : y)
            cyclic_words(a, b, out);
    return chain_normalize(std::move(out));
}

Chain Hochschild::antisymmetrize(const Element& a0, const std::vector<Element>& a) const
{
    const int n = int(a.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        perm[std::size_t(i)] = i;
    Chain acc;
    do {
        std::vector<Element> bars(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            bars[std::size_t(perm[std::size_t(i)])] = a[std::size_t(i)];
        chain_add(acc, make(a0, bars));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

std::string Hochschild::format(const Word& w) const
{
    std::string s = A_.format_id(w[0]) + "[";
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (i > 1)
            s += "|";
        s += A_.format_id(w[i]);
    }
    return s + "]";
}

std::string Hochschild::format(const Chain& c) const
{
    if (c.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += " + ";
        s += format(c[i]);
    }
    return s;
}

/* ---- u-chains ---- */

const char* theory_name(Theory t)
{
    switch (t) {
    case Theory::hh:
        return "hh";
    case Theory::minus:
        return "hcminus";
    case Theory::plus:
        return "hc";
    case Theory::per:
        return "hcper";
    }
    return "?";
}

bool UChain::is_zero() const
{
    for (const auto& [k, c] : at)
        if (!c.empty())
            return false;
    return true;
}

void UChain::add(int k, const Chain& c)
{
    if (c.empty())
        return;
    auto& slot = at[k];
    chain_add(slot, c);
    if (slot.empty())
        at.erase(k);
}

void UChain::add(const UChain& o)
{
    for (const auto& [k, c] : o.at)
        add(k, c);
    clipped += o.clipped;
}

UChain UChain::shifted(int s) const
{
    UChain r;
    r.theory = theory;
    r.clipped = clipped;
    for (const auto& [k, c] : at)
        r.at[k + s] = c;
    return r;
}

bool UChain::operator==(const UChain& o) const
{
    UChain a = *this, b = o;
    std::erase_if(a.at, [](const auto& kv) { return kv.second.empty(); });
    std::erase_if(b.at, [](const auto& kv) { return kv.second.empty(); });
    return a.at == b.at;
}

UChain uchain(Theory t, int k, Chain c)
{
    UChain r;
    r.theory = t;
    if (!c.empty())
        r.at[k] = std::move(c);
    return r;
}

static bool exponent_allowed(Theory t, int k)
{
    switch (t) {
    case Theory::hh:
        return k == 0;
    case Theory::minus:
        return k >= 0;
    case Theory::plus:
        return k <= 0;
    default:
        return true;
    }
}

UChain total_boundary(const Hochschild& H, const UChain& x, int max_exp)
{
    UChain r;
    r.theory = x.theory;
    for (const auto& [k, c] : x.at) {
        r.add(k, H.boundary_b(c));
        if (exponent_allowed(x.theory, k + 1)) {
            Chain bc = H.connes_B(c);
            if (k + 1 > max_exp) {
                r.clipped += long(bc.size());
                continue;
            }
            r.add(k + 1, bc);
        }
    }
    return r;
}

static Theory product_theory(Theory a, Theory b)
{
    if (a == b && a != Theory::plus)
        return a;
    if ((a == Theory::minus && b == Theory::plus) || (a == Theory::plus && b == Theory::minus))
        return Theory::plus;
    if ((a == Theory::minus && b == Theory::per) || (a == Theory::per && b == Theory::minus))
        return Theory::per;
    throw std::invalid_argument(std::string("mu_chain: incompatible theories ") + theory_name(a) + " x " + theory_name(b));
}

UChain mu_chain(const Hochschild& H, const UChain& x, const UChain& y, int max_exp)
{
    UChain r;
    r.theory = product_theory(x.theory, y.theory);
    std::map<int, std::vector<Word>> acc;
    for (const auto& [i, cx] : x.at)
        for (const auto& [j, cy] : y.at) {
            int k = i + j;
            if (exponent_allowed(r.theory, k)) {
                if (k > max_exp)
                    ++r.clipped;
                else
                    for (const auto& a : cx)
                        for (const auto& b : cy)
                            H.shuffle_words(a, b, acc[k]);
            }
            if (exponent_allowed(r.theory, k + 1)) {
                if (k + 1 > max_exp)
                    ++r.clipped;
                else
                    for (const auto& a : cx)
                        for (const auto& b : cy)
                            H.cyclic_words(a, b, acc[k + 1]);
            }
        }
    for (auto& [k, terms] : acc) {
        Chain c = chain_normalize(std::move(terms));
        if (!c.empty())
            r.at[k] = std::move(c);
    }
    return r;
}

std::string format(const Hochschild& H, const UChain& x)
{
    if (x.is_zero())
        return "0";
    std::string s;
    for (const auto& [k, c] : x.at) {
        for (const auto& w : c) {
            if (!s.empty())
                s += " + ";
            s += k == 0 ? "1" : (k == 1 ? "u" : "u^" + std::to_string(k));
            s += "(x)" + H.format(w);
        }
    }
    return s;
}

}  // namespace cyclo2
