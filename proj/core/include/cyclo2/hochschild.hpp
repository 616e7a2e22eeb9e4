#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "cyclo2/gralg.hpp"

namespace cyclo2 {

/* a0[a1|...|an] as basis ids: w[0] = a0, w[1..n] = bars (never the unit) */
using Word = std::vector<int>;
/* F2 combination of words: sorted, no repeats */
using Chain = std::vector<Word>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept
    {
        std::size_t h = w.size();
        for (int x : w)
            h = h * 1000003u ^ std::size_t(x);
        return h;
    }
};

Chain chain_normalize(std::vector<Word> terms);
void chain_add(Chain& a, const Chain& b);
inline int bar_length(const Word& w) { return int(w.size()) - 1; }

/* one-line notation (s(1),...,s(n)), values 1-based */
using Perm = std::vector<int>;
const std::vector<Perm>& shuffles(int p, int q);
const std::vector<Perm>& cyclic_shuffles(int p, int q);
Perm inverse(const Perm& s);

class Hochschild {
public:
    explicit Hochschild(const Algebra& A) : A_(A) {}
    const Algebra& algebra() const { return A_; }

    Grade grade(const Word& w) const;
    int weight(const Word& w) const;

    /* multilinear expansion of a0[a1|...|an]; scalar parts of bars are dropped */
    Chain make(const Element& a0, const std::vector<Element>& bars) const;
    Chain make_ids(int a0, const std::vector<int>& bars) const;

    Chain boundary_b(const Chain& c) const;
    Chain connes_B(const Chain& c) const;
    Chain boundary_b(const Word& w) const;
    Chain connes_B(const Word& w) const;

    /* all normalized words with n bars in grade g, sorted */
    std::vector<Word> words(int n, const Grade& g) const;

    /* sum over S(p,q) of tau.(a0b0, a1..ap, b1..bq) */
    Chain shuffle_product(const Chain& x, const Chain& y) const;
    /* sum over CS(p+1,q+1) of sigma^{-1}.(1, a0..ap, b0..bq) */
    Chain cyclic_shuffle_product(const Chain& x, const Chain& y) const;
    /* sum over S(n) of sigma.a0[a1|...|an] */
    Chain antisymmetrize(const Element& a0, const std::vector<Element>& a) const;

    /* append the terms of one word pair, unreduced */
    void shuffle_words(const Word& x, const Word& y, std::vector<Word>& out) const;
    void cyclic_words(const Word& x, const Word& y, std::vector<Word>& out) const;

    std::string format(const Word& w) const;
    std::string format(const Chain& c) const;

private:
    const Algebra& A_;
};

enum class Theory { hh, minus, plus, per };
const char* theory_name(Theory t);

/* sum over u-exponents k of u^k (x) c_k; u has homological degree -2 */
struct UChain {
    Theory theory = Theory::minus;
    std::map<int, Chain> at;
    /* number of terms dropped by a window while building this chain */
    long clipped = 0;

    bool is_zero() const;
    void add(int k, const Chain& c);
    void add(const UChain& o);
    UChain shifted(int s) const;
    bool operator==(const UChain& o) const;
};

UChain uchain(Theory t, int k, Chain c);

/* id (x) b + u (id (x) B), honoring the theory's exponent range and an optional upper window */
UChain total_boundary(const Hochschild& H, const UChain& x, int max_exp = INT_MAX);

/*
 * Chain-level product: minus x minus -> minus, per x per -> per, minus x plus -> plus,
 * minus x per -> per, hh x hh -> hh. Exponents above max_exp are dropped and counted.
 */
UChain mu_chain(const Hochschild& H, const UChain& x, const UChain& y, int max_exp = INT_MAX);

std::string format(const Hochschild& H, const UChain& x);

}  // namespace cyclo2
